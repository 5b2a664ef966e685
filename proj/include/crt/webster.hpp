// SPDX-License-Identifier: MIT
#pragma once

#include <complex>
#include <string>
#include <vector>

#include "crt/cr.hpp"

namespace crt {

using cplx = std::complex<double>;

// Tanaka-Webster data at one point, in the adapted frame (index 2m is T).
struct WebsterPoint {
    CRPoint cr;
    JetTensor Gamma;  // (n,h,h): L(nabla_{E_a} e_b, e_c), order K-2
    JetTensor R;      // (n,n,h,h): L(R(E_a,E_b) e_c, e_d), order K-3
    JetTensor ric;    // (n,n): sum_alpha R(a,b,2alpha,2alpha+1); Ric^W = i ric
    Jet scal;         // scal^W, order K-3
    JetVec alphaW;    // a^W = i alphaW, frame components (n), order K-2
    JetTensor torT;   // script T(b,c) on H, order K-2
    JetTensor B;      // B_theta(a,b,c) on H, order K-2

    int m() const { return cr.m; }
    int n() const { return cr.n; }
    int h() const { return 2 * cr.m; }
    // omega_alpha^beta(E_a)
    cplx omega(int alpha, int beta, int a) const;
    // script-B(X,Y) = sum_i B(X,Y,e_i) e_i as frame components, for frame indices
    double Bvec(int a, int b, int c) const { return B(a, b, c).value(); }
};

WebsterPoint build_webster_point(const PseudoHermitianStructure& s, const ChartPoint& p, int K);
WebsterPoint build_webster_point(CRPoint cr);

// Refuses structures that are not strictly pseudoconvex and partially integrable at p.
void require_partially_integrable(const PseudoHermitianStructure& s, const ChartPoint& p);

// Field-level views (each evaluation rebuilds the point data).
ScalarField webster_scalar(const PseudoHermitianStructure& s);

// ---- derivatives of a function in the complex frame

struct FunctionDerivatives {
    std::vector<cplx> f_alpha;                 // Z_alpha f
    std::vector<std::vector<cplx>> f_ab;       // f_{alpha betabar}
    std::vector<std::vector<cplx>> f_ba;       // f_{betabar alpha}
    double sublaplacian = 0.0;                 // Delta_b f
    double delta_f_f = 0.0;                    // (delta f)(f)
    Eigen::VectorXcd delta_f;                  // coordinates of delta f
    double f_o = 0.0;                          // T f
};

// rotation: orthogonal (2m x 2m) matrix commuting with J; e'_i = sum_j rot(i,j) e_j
FunctionDerivatives function_derivatives(const WebsterPoint& w, const ScalarField& f,
                                         const Eigen::MatrixXd& rotation = Eigen::MatrixXd());
ScalarField sublaplacian(const PseudoHermitianStructure& s, const ScalarField& f);
// delta f as a pair (real part, imaginary part) of real vector fields
std::pair<VectorField, VectorField> delta_op(const PseudoHermitianStructure& s, const ScalarField& f);

// ---- reports

struct Residual {
    std::string name;
    double residual = 0.0;  // max |lhs - rhs|
    double scale = 0.0;     // max |lhs|, |rhs|
};

// defining properties: metricity, torsion normalisation, nabla T = 0, nabla J = 0
std::vector<Residual> connection_properties(const WebsterPoint& w);
std::vector<Residual> curvature_properties(const WebsterPoint& w);
std::vector<Residual> torsion_identity_suite(const WebsterPoint& w);

struct RescalingReport {
    double omega_residual = 0.0;  // max over alpha,beta,components, relative to 1 + |value|
    double omega_scale = 0.0;
    double scal_residual = 0.0;   // relative, with +1
    double scal_from_scratch = 0.0;
    double scal_closed_form = 0.0;
};

RescalingReport rescaling_check(const PseudoHermitianStructure& s, const ScalarField& f, const ChartPoint& p);

}  // namespace crt
