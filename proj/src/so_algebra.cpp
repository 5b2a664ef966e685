// SPDX-License-Identifier: MIT
#include "crt/so_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

namespace crt::so {

MatrixXd jmat(int n) {
    MatrixXd J = MatrixXd::Identity(n + 1, n + 1);
    J(0, 0) = -1.0;
    return J;
}

MatrixXd gram(int n) {
    MatrixXd G = MatrixXd::Zero(n + 3, n + 3);
    G(0, n + 2) = G(n + 2, 0) = 1.0;
    G.block(1, 1, n + 1, n + 1) = jmat(n);
    return G;
}

int dimension_of(const MatrixXd& M) {
    if (M.rows() != M.cols() || M.rows() < 4) throw std::invalid_argument("so: not an (n+3)-square matrix");
    return static_cast<int>(M.rows()) - 3;
}

double so_defect(const MatrixXd& M) {
    MatrixXd G = gram(dimension_of(M));
    return (M.transpose() * G + G * M).cwiseAbs().maxCoeff();
}

MatrixXd minus_element(const VectorXd& m) {
    int n = static_cast<int>(m.size()) - 1;
    MatrixXd M = MatrixXd::Zero(n + 3, n + 3);
    M.block(1, 0, n + 1, 1) = m;
    M.block(n + 2, 1, 1, n + 1) = -m.transpose() * jmat(n);
    return M;
}

MatrixXd zero_element(const MatrixXd& A, double a) {
    int n = static_cast<int>(A.rows()) - 1;
    MatrixXd M = MatrixXd::Zero(n + 3, n + 3);
    M(0, 0) = -a;
    M.block(1, 1, n + 1, n + 1) = A;
    M(n + 2, n + 2) = a;
    return M;
}

MatrixXd plus_element(const RowVectorXd& l) {
    int n = static_cast<int>(l.size()) - 1;
    MatrixXd M = MatrixXd::Zero(n + 3, n + 3);
    M.block(0, 1, 1, n + 1) = l;
    M.block(1, n + 2, n + 1, 1) = -jmat(n) * l.transpose();
    return M;
}

MatrixXd to_matrix(const GradedTriple& t) { return minus_element(t.m) + zero_element(t.A, t.a) + plus_element(t.l); }

GradedTriple from_matrix(const MatrixXd& M) {
    int n = dimension_of(M);
    GradedTriple t;
    t.m = M.block(1, 0, n + 1, 1);
    t.A = M.block(1, 1, n + 1, n + 1);
    t.a = M(n + 2, n + 2);
    t.l = M.block(0, 1, 1, n + 1);
    return t;
}

MatrixXd bracket(const MatrixXd& X, const MatrixXd& Y) {
    if (X.rows() != Y.rows() || X.cols() != Y.cols()) throw std::invalid_argument("so::bracket: dimension mismatch");
    return X * Y - Y * X;
}

MatrixXd grade_project(const MatrixXd& M, int k) {
    GradedTriple t = from_matrix(M);
    switch (k) {
        case -1: return minus_element(t.m);
        case 0: return zero_element(t.A, t.a);
        case 1: return plus_element(t.l);
        default: throw std::invalid_argument("so::grade_project: grade must be -1, 0 or 1");
    }
}

double killing_pairing(const MatrixXd& X, const MatrixXd& Y) { return 0.5 * (X * Y).trace(); }

MatrixXd xi(int n, int i) { return minus_element(VectorXd::Unit(n + 1, i)); }
MatrixXd eta(int n, int i) { return plus_element(RowVectorXd::Unit(n + 1, i)); }

Cochain codifferential(const Cochain& phi) {
    const int n = phi.n, N = n + 1;
    Cochain r;
    r.n = n;
    if (phi.degree == 1) {
        r.degree = 0;
        MatrixXd s = MatrixXd::Zero(n + 3, n + 3);
        for (int i = 0; i < N; ++i) s += bracket(eta(n, i), phi.values[i]);
        r.values = {s};
    } else if (phi.degree == 2) {
        r.degree = 1;
        for (int j = 0; j < N; ++j) {
            MatrixXd s = MatrixXd::Zero(n + 3, n + 3);
            for (int i = 0; i < N; ++i) s += bracket(eta(n, i), phi.at(i, j));
            r.values.push_back(s);
        }
    } else {
        throw std::invalid_argument("so::codifferential: unsupported degree " + std::to_string(phi.degree));
    }
    return r;
}

double antisymmetry_defect(const Cochain& phi) {
    if (phi.degree != 2) return 0.0;
    double d = 0.0;
    for (int i = 0; i <= phi.n; ++i)
        for (int j = 0; j <= phi.n; ++j) d = std::max(d, (phi.at(i, j) + phi.at(j, i)).cwiseAbs().maxCoeff());
    return d;
}

double ComplexElementReport::worst() const {
    return std::max({m_null, l_null, eigen_m, eigen_l, w_square, w_invariance});
}

ComplexElementReport analyze_complex_element(const MatrixXd& beta, double tol) {
    const int n = dimension_of(beta);
    ComplexElementReport r;
    r.square_defect = (beta * beta + MatrixXd::Identity(n + 3, n + 3)).cwiseAbs().maxCoeff();
    if (r.square_defect > tol)
        throw PreconditionError("analyze_complex_element: |beta^2 + id| = " + std::to_string(r.square_defect));
    const MatrixXd Jm = jmat(n);
    GradedTriple t = from_matrix(beta);
    r.parts = t;
    VectorXd ldual = Jm * t.l.transpose();
    r.m_null = std::abs(t.m.dot(Jm * t.m));
    r.l_null = std::abs(ldual.dot(Jm * ldual));
    r.eigen_m = (t.A * t.m - t.a * t.m).cwiseAbs().maxCoeff();
    r.eigen_l = (t.l * t.A - t.a * t.l).cwiseAbs().maxCoeff();
    r.m_norm = t.m.norm();
    r.l_norm = t.l.norm();

    // W: Jm-orthocomplement of span{m, Jm l^T}
    MatrixXd C(2, n + 1);
    C.row(0) = t.m.transpose() * Jm;
    C.row(1) = t.l;
    Eigen::FullPivLU<MatrixXd> lu(C);
    MatrixXd W = lu.kernel();
    Eigen::HouseholderQR<MatrixXd> qr(W);
    W = qr.householderQ() * MatrixXd::Identity(n + 1, W.cols());
    MatrixXd AW = W.transpose() * t.A * W;  // W has orthonormal columns
    r.w_invariance = (t.A * W - W * AW).cwiseAbs().maxCoeff();
    r.w_square = (AW * AW + MatrixXd::Identity(W.cols(), W.cols())).cwiseAbs().maxCoeff();
    return r;
}

MatrixXd canonical_complex_element(int n) {
    if (n < 3 || n % 2 == 0) throw std::invalid_argument("canonical_complex_element: n must be odd and >= 3");
    GradedTriple t;
    t.m = VectorXd::Zero(n + 1);
    t.m(0) = t.m(1) = 1.0;
    t.A = MatrixXd::Zero(n + 1, n + 1);
    for (int k = 2; k + 1 <= n; k += 2) {
        t.A(k + 1, k) = 1.0;
        t.A(k, k + 1) = -1.0;
    }
    t.a = 0.0;
    t.l = RowVectorXd::Zero(n + 1);
    t.l(0) = t.l(1) = -0.5;
    return to_matrix(t);
}

MatrixXd random_element(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    MatrixXd M(n + 3, n + 3);
    for (int i = 0; i < n + 3; ++i)
        for (int j = 0; j < n + 3; ++j) M(i, j) = g(rng);
    MatrixXd G = gram(n);
    return 0.5 * (M - G.inverse() * M.transpose() * G);
}

MatrixXd conjugate_by_exp(const MatrixXd& beta, const MatrixXd& X) {
    MatrixXd g = X.exp();
    return g * beta * g.inverse();
}

}  // namespace crt::so
