// SPDX-License-Identifier: MIT
#pragma once

#include <random>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

// so(2, n+1) realised on R^{n+3} with basis (e_-, e_0, ..., e_n, e_+) and scalar
// product <x,y> = x_- y_+ + x_+ y_- + x^T Jm y, Jm = diag(-1, 1, ..., 1).
namespace crt::so {

using Eigen::MatrixXd;
using Eigen::RowVectorXd;
using Eigen::VectorXd;

struct PreconditionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

MatrixXd jmat(int n);  // (n+1)x(n+1)
MatrixXd gram(int n);  // (n+3)x(n+3)
double so_defect(const MatrixXd& M);  // max |M^T G + G M|
int dimension_of(const MatrixXd& M);  // n, from the matrix size

// g_{-1} + g_0 + g_1 parts: m, (A, a), l
struct GradedTriple {
    VectorXd m;
    MatrixXd A;
    double a = 0.0;
    RowVectorXd l;
};

MatrixXd to_matrix(const GradedTriple& t);
GradedTriple from_matrix(const MatrixXd& M);
MatrixXd minus_element(const VectorXd& m);
MatrixXd zero_element(const MatrixXd& A, double a);
MatrixXd plus_element(const RowVectorXd& l);

MatrixXd bracket(const MatrixXd& X, const MatrixXd& Y);
MatrixXd grade_project(const MatrixXd& M, int k);

// xi_i = minus_element(e_i); eta_i the g_1 element paired to xi_i by
// B(X, Y) = tr(XY)/2, which makes eta_i = plus_element(e_i^T).
double killing_pairing(const MatrixXd& X, const MatrixXd& Y);
MatrixXd xi(int n, int i);
MatrixXd eta(int n, int i);

// degree 0: values = {X}; degree 1: values[i] = phi(xi_i);
// degree 2: values[i*(n+1)+j] = phi(xi_i, xi_j), antisymmetric in (i, j)
struct Cochain {
    int n = 0;
    int degree = 0;
    std::vector<MatrixXd> values;
    const MatrixXd& at(int i, int j) const { return values[i * (n + 1) + j]; }
};

Cochain codifferential(const Cochain& phi);
double antisymmetry_defect(const Cochain& phi);

struct ComplexElementReport {
    GradedTriple parts;
    double square_defect = 0.0;       // |beta^2 + id|
    double m_null = 0.0;              // <m, m>
    double l_null = 0.0;              // <Jm l^T, Jm l^T>
    double eigen_m = 0.0;             // |A m - a m|
    double eigen_l = 0.0;             // |l A - a l|
    double w_square = 0.0;            // |(A|_W)^2 + id|
    double w_invariance = 0.0;        // |A W - W (A|_W)|
    double m_norm = 0.0;
    double l_norm = 0.0;
    double worst() const;
};

ComplexElementReport analyze_complex_element(const MatrixXd& beta, double tol = 1e-8);

// n = 2m+1; a fixed element with beta^2 = -id whose g_{-1} part is e_0 + e_1
MatrixXd canonical_complex_element(int n);
MatrixXd random_element(int n, std::mt19937_64& rng);
MatrixXd conjugate_by_exp(const MatrixXd& beta, const MatrixXd& X);

}  // namespace crt::so
