// SPDX-License-Identifier: MIT
#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "crt/fefferman.hpp"
#include "crt/metric.hpp"
#include "crt/so_algebra.hpp"

// Tractors relative to one metric g of signature (1,n) on a chart of dimension n+1,
// everything in coordinate components at a single point.
namespace crt {

struct SignatureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Schouten tensor with P(X) = (scal/(2n) g(X,.) - Ric(X,.))/(n-1).
struct ConformalPoint {
    int D = 0;
    MetricGeometry mg;      // metric jets of order q
    JetTensor P;            // order q-2
    Eigen::MatrixXd frame;  // columns e_0..e_n with frame^T g frame = diag(-1,1,..,1)

    int n() const { return D - 1; }
    int order() const { return mg.g.min_order(); }
    Eigen::MatrixXd g() const { return mg.metric(); }
    Eigen::MatrixXd ginv() const { return mg.inverse_metric(); }
    Eigen::MatrixXd schouten() const { return P.matrix_values(); }
    double scal() const { return mg.scal.value(); }
};

// Needs q >= 2; the Cotton tensor and the normal derivative of a splitting need q >= 3.
ConformalPoint conformal_point(const JetTensor& gjet);
ConformalPoint conformal_point(const CoordinateMetric& g, const ChartPoint& p, int order = 3);

// timelike vector first; throws SignatureError unless the signature is (1,n)
Eigen::MatrixXd pseudo_orthonormal_frame(const Eigen::MatrixXd& g);

// (xi, phi, omega) in TF + co(TF) + T*F; phi(i,j) is component i of phi(d_j)
struct AdjointTractor {
    Eigen::VectorXd xi;
    Eigen::MatrixXd phi;
    Eigen::VectorXd omega;

    static AdjointTractor zero(int D);
    int dim() const { return static_cast<int>(xi.size()); }
    double max_abs() const;
    AdjointTractor& operator+=(const AdjointTractor& o);
    AdjointTractor& operator-=(const AdjointTractor& o);
    AdjointTractor& operator*=(double s);
};
inline AdjointTractor operator+(AdjointTractor a, const AdjointTractor& b) { return a += b; }
inline AdjointTractor operator-(AdjointTractor a, const AdjointTractor& b) { return a -= b; }
inline AdjointTractor operator*(double s, AdjointTractor a) { return a *= s; }

struct StandardTractor {
    double a = 0.0;
    Eigen::VectorXd xi;
    double b = 0.0;
    double max_abs() const;
};

// Same triple with jet components, for covariant derivatives.
struct AdjointTractorField {
    JetVec xi;
    JetTensor phi;
    JetVec omega;
    AdjointTractor value() const;
    int order() const;
};

// |phi - (tr phi/(n+1)) id| g-skew defect
double co_defect(const Eigen::MatrixXd& g, const Eigen::MatrixXd& phi);

// graded bracket from the primitive brackets, see src for the table
AdjointTractor adjoint_bracket(const Eigen::MatrixXd& g, const AdjointTractor& A, const AdjointTractor& B);
// (a, xi, b) -> (-c a + omega(xi_t), a xi + phi_0(xi_t) - b omega^#, -g(xi, xi_t) + c b),
// phi = phi_0 + c id with phi_0 skew
StandardTractor tractor_action(const Eigen::MatrixXd& g, const AdjointTractor& A, const StandardTractor& t);

// identification with so(2,n+1) through a pseudo-orthonormal frame
Eigen::MatrixXd to_algebra(const Eigen::MatrixXd& frame, const AdjointTractor& A);
AdjointTractor from_algebra(const Eigen::MatrixXd& frame, const Eigen::MatrixXd& M);
Eigen::VectorXd to_algebra(const Eigen::MatrixXd& frame, const StandardTractor& t);
StandardTractor standard_from_algebra(const Eigen::MatrixXd& frame, const Eigen::VectorXd& v);

// Weyl W = Riem + (P wedge g) in the form W(X,Y)Z = R(X,Y)Z + P(Y,Z)X - P(X,Z)Y - g(X,Z)P(Y)^# + g(Y,Z)P(X)^#,
// W(i,j,k,l) = g(W(d_i,d_j)d_k, d_l) like Rm.
struct Tensor4 {
    int D = 0;
    std::vector<double> v;
    double operator()(int i, int j, int k, int l) const { return v[((i * D + j) * D + k) * D + l]; }
    double& operator()(int i, int j, int k, int l) { return v[((i * D + j) * D + k) * D + l]; }
};
Tensor4 weyl_tensor(const ConformalPoint& cp);
// largest contraction of W over any index pair
double weyl_trace_defect(const ConformalPoint& cp, const Tensor4& W);
// W(X,Y) as endomorphism
Eigen::MatrixXd weyl_endomorphism(const ConformalPoint& cp, const Tensor4& W, const Eigen::VectorXd& X,
                                  const Eigen::VectorXd& Y);
// C(i,j,k) = (nabla_i P)(d_j, d_k) - (nabla_j P)(d_i, d_k); needs q >= 3
struct Tensor3 {
    int D = 0;
    std::vector<double> v;
    double operator()(int i, int j, int k) const { return v[(i * D + j) * D + k]; }
    double& operator()(int i, int j, int k) { return v[(i * D + j) * D + k]; }
};
Tensor3 cotton_york(const ConformalPoint& cp);

// trace-free part of L_tau g, largest entry
double conformal_killing_defect(const ConformalPoint& cp, const JetVec& tau);

// first-order covariant derivatives as jets (order drops by one)
JetTensor nabla_vector(const ConformalPoint& cp, const JetVec& V);  // (k,i) = (nabla_k V)^i
JetTensor nabla_form(const ConformalPoint& cp, const JetVec& w);    // (k,j) = (nabla_k w)_j
// g(tr nabla^2 tau, .) as jets, order two below
JetVec bochner_trace_vector(const ConformalPoint& cp, const JetVec& tau);
// operator P(w) = (tr nabla^2 w + scal w/(2n))/(n-1) applied to w = g(tau,.)
JetVec killing_p_operator(const ConformalPoint& cp, const JetVec& tau);

// General: phi = co(TF) part of nabla tau and eta from the kernel condition of the codifferential,
// valid for every tau.
// Killing: eta = P(g(tau,.)), valid for conformal Killing tau only.
enum class SplittingBranch { general, conformal_killing, automatic };
AdjointTractorField splitting_operator(const ConformalPoint& cp, const JetVec& tau,
                                       SplittingBranch branch = SplittingBranch::automatic);

// d^nor A in direction d_k, k = 0..n
std::vector<AdjointTractor> normal_derivative(const ConformalPoint& cp, const AdjointTractorField& A);
AdjointTractor along(const std::vector<AdjointTractor>& per_direction, const Eigen::VectorXd& X);

// (0, W(X,Y), c C(X,Y)); c = 1 is the value forced by the curvature of d^nor
AdjointTractor normal_curvature(const ConformalPoint& cp, const Tensor4& W, const Tensor3& C,
                                const Eigen::VectorXd& X, const Eigen::VectorXd& Y, double cotton_factor = 1.0);
// the same directly as the curvature of d^nor, from second jets of the tractor connection
// (independent of the Weyl/Cotton formulas); needs q >= 3
AdjointTractor normal_curvature_direct(const ConformalPoint& cp, const Eigen::VectorXd& X, const Eigen::VectorXd& Y);

// codifferential of a tractor valued 1-form (per coordinate direction) or 2-form, as so(2,n+1) matrices
Eigen::MatrixXd codifferential_1form(const ConformalPoint& cp, const std::vector<AdjointTractor>& per_direction);
std::vector<Eigen::MatrixXd> codifferential_2form(const ConformalPoint& cp, const Tensor4& W, const Tensor3& C,
                                                  double cotton_factor = 1.0);

// pointwise complex structure test: A.(A.t) + t over a basis of standard tractors
struct ComplexStructureReport {
    double residual = 0.0;
    bool algebra_checked = false;  // analyze_complex_element ran (needs the square defect below 1e-8)
    so::ComplexElementReport algebra;
    bool passes(double tol = 1e-9) const { return residual <= tol && algebra_checked && algebra.worst() <= 1e-8; }
};
ComplexStructureReport check_complex_structure(const ConformalPoint& cp, const AdjointTractor& A);

// Fefferman objects. The chart metric is the Fefferman metric of fp; fp.K >= 6 gives q = 3.
ConformalPoint conformal_point(const FeffermanPoint& fp);
JetVec fundamental_field(const FeffermanPoint& fp);       // R = 2S
Eigen::MatrixXd horizontal_J(const FeffermanPoint& fp);   // lift of J, zero on T*, S
AdjointTractor build_jcr(const FeffermanPoint& fp);       // (R, J, -(2/(n+3)) A_r), A = i A_r
AdjointTractor u_term(const FeffermanPoint& fp);          // (n+1)/(n(n-1)(n+3)) (0, 0, tr L_{dl} theta)

// Reconstruction with the fibre coordinate (last) projected out.
struct Reconstruction {
    Eigen::VectorXd R;          // total chart
    Eigen::VectorXd theta;      // g(R,.) restricted to the base chart
    Eigen::MatrixXd J;          // base chart, J v = pr(skew(phi)(v, 0)); meaningful on H
    Eigen::MatrixXd levi;       // base chart, f((v,0),(w,0)); meaningful on H
    so::ComplexElementReport flags;
};
// throws ContractViolation when R vanishes, R is not null or A is not a complex structure
Reconstruction reconstruct_cr(const ConformalPoint& cp, const AdjointTractor& A);

// max |J_a v - J_b v| over an orthonormal basis of ker theta_a (chart inner product)
double j_difference_on_H(const Reconstruction& a, const Reconstruction& b);

struct ReconstructionComparison {
    double H = 0.0;      // |theta_rec/|theta_rec| -+ theta/|theta||
    double J = 0.0;      // max over the adapted H frame
    double levi = 0.0;   // against dtheta(X, JY)
    double worst() const { return std::max({H, J, levi}); }
};
ReconstructionComparison compare_with_base(const Reconstruction& rec, const FeffermanPoint& fp);

}  // namespace crt
