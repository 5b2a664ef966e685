// SPDX-License-Identifier: MIT
#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "crt/fields.hpp"
#include "crt/linalg.hpp"

namespace crt {

struct ContractViolation : std::logic_error {
    using std::logic_error::logic_error;
};

// Chart of dimension n = 2m+1 with contact form theta and J on H = ker theta.
// H is presented by a designated frame F_1..F_2m; J acts on it by
// J F_b = sum_a J[a][b] F_a.
struct PseudoHermitianStructure {
    int m = 1;
    OneForm theta;
    std::vector<VectorField> hframe;
    std::vector<std::vector<ScalarField>> J;
    int n() const { return 2 * m + 1; }
};

// Pointwise data at p. Frame index a = 0..2m-1 for e_1..e_2m, a = 2m for T.
struct CRPoint {
    int m = 0, n = 0, K = 0;
    ChartPoint p;
    JetVec theta;           // order K
    JetTensor dtheta;       // (n,n), K-1
    JetTensor F;            // designated frame (2m,n), K
    JetTensor Jd;           // J in the designated frame (2m,2m), K
    JetTensor Ld;           // dtheta(F_a, J F_b), K-1
    JetTensor C;            // e_k = sum_a C(k,a) F_a, K-1
    JetTensor E;            // E(a,j): coordinate j of frame vector a, K-1
    JetTensor coframe;      // coframe(a,j), K-1
    Eigen::MatrixXd Jm;     // J in the adapted frame (J T = 0)
    bool has_brackets = false;
    JetTensor c;            // c(a,b,d) = coframe^d([E_a,E_b]), K-2
    JetTensor N;            // N(a,b,d) for a,b < 2m, K-2

    int reeb() const { return 2 * m; }
    Jet frame_derivative(int a, const Jet& f) const;  // E_a(f), order drops by one
    // components of a coordinate vector in the adapted frame
    JetVec to_frame(const JetVec& v) const;
    JetVec from_frame(const JetVec& w) const;
    // J extended by J T = 0, on coordinate vectors
    JetVec apply_J(const JetVec& v) const;
};

CRPoint build_frame(const PseudoHermitianStructure& s, const ChartPoint& p, int K);
void add_brackets(CRPoint& cr);
inline CRPoint build_cr_point(const PseudoHermitianStructure& s, const ChartPoint& p, int K) {
    CRPoint cr = build_frame(s, p, K);
    add_brackets(cr);
    return cr;
}

// field-level operations
VectorField reeb_field(const PseudoHermitianStructure& s);
std::vector<VectorField> adapted_frame(const PseudoHermitianStructure& s);
VectorField apply_J(const PseudoHermitianStructure& s, const VectorField& X);
ScalarField levi_form(const PseudoHermitianStructure& s, const VectorField& X, const VectorField& Y);
// -i dtheta(U, conj V) for complex coordinate vectors at p
std::complex<double> levi_form_complex(const PseudoHermitianStructure& s, const ChartPoint& p,
                                       const Eigen::VectorXcd& U, const Eigen::VectorXcd& V);
// Z_alpha = (e_{2a-1} - i J e_{2a-1}) / sqrt 2 in coordinates, alpha = 0..m-1
Eigen::VectorXcd complex_frame_vector(const CRPoint& cr, int alpha);
VectorField nijenhuis(const PseudoHermitianStructure& s, const VectorField& X, const VectorField& Y);

enum class Integrability { degenerate, nondegenerate, partially_integrable, integrable };
std::string to_string(Integrability c);

struct IntegrabilityReport {
    Integrability kind = Integrability::degenerate;
    double min_contact = 0.0;        // min |det dtheta|_H| over points
    double min_levi_eigen = 0.0;     // min eigenvalue of the (symmetrised) Levi matrix
    double j_square_defect = 0.0;    // max |J^2 + id|
    double totally_real_defect = 0.0;  // max |dtheta(JX,JY) - dtheta(X,Y)|
    double max_nijenhuis = 0.0;
    std::string detail;
};

IntegrabilityReport classify_integrability(const PseudoHermitianStructure& s, const std::vector<ChartPoint>& pts);

PseudoHermitianStructure rescale_structure(const PseudoHermitianStructure& s, const ScalarField& f);

}  // namespace crt
