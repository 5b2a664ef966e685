// SPDX-License-Identifier: MIT
#pragma once

#include <string>
#include <vector>

#include "crt/metric.hpp"
#include "crt/webster.hpp"

namespace crt {

// l = i*lambda is stored through its real 1-form lambda on the base.
// Total chart: base coordinates followed by the fibre coordinate s (index n).
struct FeffermanSpace {
    PseudoHermitianStructure base;
    OneForm lambda;
    int m() const { return base.m; }
    int n() const { return base.n(); }
    int dim() const { return base.n() + 1; }
    // f = L + 2 theta.ds + (4/(m+2)) theta.alpha, alpha = alphaW - scal theta/(2(m+1)) + lambda
    CoordinateMetric metric() const;
};

// Throws ContractViolation unless the base is strictly pseudoconvex and partially integrable
// at the sample points (default: a few points of the unit box around 0).
FeffermanSpace build_fefferman(const PseudoHermitianStructure& base, const OneForm& lambda,
                               const std::vector<ChartPoint>& probe = {});

// Everything at one base point. Base jets of order K (>= 5 for the curvature checks).
struct FeffermanPoint {
    int m = 0, n = 0, D = 0, K = 0;
    WebsterPoint w;
    JetVec alpha_frame;        // alpha(E_a), order K-3
    JetVec alpha_coord;        // alpha_j, order K-3
    Eigen::MatrixXd dalpha;    // d alpha(E_a,E_b); Omega_{theta,l} = i d alpha (empty when K < 4)
    Eigen::MatrixXd dlambda;   // d lambda(E_a,E_b)
    JetTensor g;               // Fefferman metric (D,D) in D variables, order K-3
    std::vector<JetVec> lift;  // lifted frame e_i*, T*, S as coordinate jets in D variables
    JetVec theta_total;        // pull-back of theta to the total chart, D variables

    Eigen::VectorXd lift_value(int a) const;
    double f(const Eigen::VectorXd& u, const Eigen::VectorXd& v) const;
    int S() const { return n; }
    int Tstar() const { return n - 1; }
};

FeffermanPoint fefferman_point(const FeffermanSpace& fs, const ChartPoint& p, int K = 5);

// tr_theta L_{dl} = -sum_i dlambda(e_i, J e_i)
double ell_trace(const FeffermanPoint& fp);
bool ell_admissible(const PseudoHermitianStructure& base, const OneForm& lambda, const std::vector<ChartPoint>& pts,
                    double tol = 1e-9);

// d alpha two ways on the adapted frame; the closed form is
// -ric - scal dtheta/(2(m+1)) - d scal ^ theta/(2(m+1)) + dlambda
struct CurvatureFormReport {
    Eigen::MatrixXd direct, closed_form;
    double residual = 0.0;
};
CurvatureFormReport curvature_form(const FeffermanPoint& fp);

// One component of the Levi-Civita connection: f(nabla_A B, C) for lifted frame vectors.
struct LCComponent {
    std::string row;  // which displayed formula
    int a = 0, b = 0, c = 0;
    double structural = 0.0;
};
// All structural components on the lifted frame (frame indices; n-1 is T*, n is S).
std::vector<LCComponent> structural_lc_components(const FeffermanPoint& fp);
// Oracle value of f(nabla_A B, C) from the coordinate Christoffel symbols
double oracle_lc_component(const FeffermanPoint& fp, const MetricGeometry& mg, int a, int b, int c);

// sum_{i,j} L(N(e_i,e_j), N(e_i,e_j))
double nijenhuis_norm2(const FeffermanPoint& fp);

struct RicciStructural {
    double ric_ST = 0.0;
    Eigen::MatrixXd ric_HH;            // Ric(e_x*, e_v*), seven-term formula as displayed
    // the N(N(X,.),.) trace enters with 1/8 instead of 1/4; this is what the metric actually has
    Eigen::MatrixXd ric_HH_corrected;
    // individual terms of Ric(X*,V*), summed over the frame, largest absolute entry
    double max_nabla_B_term = 0.0, max_NN_term = 0.0, max_NNN_term = 0.0, max_scriptT_term = 0.0;
};
RicciStructural ricci_structural(const FeffermanPoint& fp);
// Ric(A,B) in the lifted frame from the oracle
Eigen::MatrixXd oracle_ricci_frame(const FeffermanPoint& fp, const MetricGeometry& mg);

// ((2m+1)/(m+1)) scal^W + tr L_{dl}/(m+2)
double scalar_structural(const FeffermanPoint& fp);
// the same minus |N|^2/16; equal to the above iff N = 0 at the point
double scalar_structural_corrected(const FeffermanPoint& fp);

// Closed forms use the scalar curvature of the metric itself (oracle). The corrected variants
// add the -|N|^2/16 defect of the scalar formula to the theta-coefficients.
struct KillingFormReport {
    double killing_residual = 0.0;    // |nabla theta - dtheta/2|
    double laplace_residual = 0.0;    // Delta theta vs closed form, relative with +1
    double p_residual = 0.0;          // P theta vs closed form
    double laplace_residual_corrected = 0.0;
    double p_residual_corrected = 0.0;
    double p_minus_a_norm = 0.0;      // |P theta + A_r/(n+3)|: the theta-term of P theta
    double killing_lie_defect = 0.0;  // L_S f
    double trace = 0.0;               // tr L_{dl}
};
KillingFormReport laplacian_of_killing_form(const FeffermanPoint& fp);

}  // namespace crt
