// SPDX-License-Identifier: MIT
#include "crt/suite.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "crt/fefferman.hpp"
#include "crt/so_algebra.hpp"
#include "crt/tractor.hpp"
#include "crt/webster.hpp"

namespace crt::suite {

using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

struct Tally {
    int points = 0;
    double max_abs = 0.0, max_rel = 0.0;
    std::string note;
    void add(double residual, double reference = 0.0) {
        residual = std::abs(residual);
        if (std::isnan(residual)) residual = INFINITY;
        max_abs = std::max(max_abs, residual);
        max_rel = std::max(max_rel, residual / (1.0 + std::abs(reference)));
    }
    // at_least checks
    void magnitude(double v) {
        max_abs = v;
        max_rel = v;
    }
};

double max_abs(const MatrixXd& M) { return M.size() ? M.cwiseAbs().maxCoeff() : 0.0; }

struct FefSample {
    std::string ell;
    FeffermanPoint fp;
    ConformalPoint cp;
};

// Lazily built data shared by the checks of one run.
class Context {
public:
    Context(const ExampleGeometry& ex, const RunConfig& cfg)
        : ex(ex), cfg(cfg), pts(sample_points(ex, cfg.points, cfg.seed)) {}

    const ExampleGeometry& ex;
    const RunConfig& cfg;
    std::vector<ChartPoint> pts;

    // every l-variant at every point, base jets of order 6 (Fefferman metric jets of order 3)
    const std::vector<FefSample>& fefferman() {
        if (!fef_) {
            fef_.emplace();
            for (const auto& e : ex.ells) {
                FeffermanSpace fs = build_fefferman(ex.structure, e.lambda);
                for (const auto& p : pts) {
                    FeffermanPoint fp = fefferman_point(fs, p, 6);
                    ConformalPoint cp = conformal_point(fp);
                    fef_->push_back({e.name, std::move(fp), std::move(cp)});
                }
            }
        }
        return *fef_;
    }

    // tr L_{dl} = 0 at every sample point
    bool admissible(const std::string& ell) {
        auto it = adm_.find(ell);
        if (it != adm_.end()) return it->second;
        bool ok = true;
        for (const auto& s : fefferman())
            if (s.ell == ell && std::abs(ell_trace(s.fp)) > 1e-9) ok = false;
        return adm_[ell] = ok;
    }

    bool flat() const { return ex.deformation == 0.0 && !ex.rescaling; }
    bool integrable() const { return ex.deformation == 0.0; }

    struct RicciPair {
        RicciStructural structural;
        MatrixXd oracle;  // lifted frame
    };
    const RicciPair& ricci(std::size_t i) {
        return memo(ricci_, i, [&](const FefSample& s) {
            return RicciPair{ricci_structural(s.fp), oracle_ricci_frame(s.fp, s.cp.mg)};
        });
    }
    const KillingFormReport& killing(std::size_t i) {
        return memo(killing_, i, [](const FefSample& s) { return laplacian_of_killing_form(s.fp); });
    }

    struct TractorData {
        AdjointTractor J, U, SR;
        std::vector<AdjointTractor> dn;  // d^nor S(R) per coordinate direction
        double equation = 0.0;           // max_k |d^nor_k S(R) + Omega(R, d_k)|
        double omega_R = 0.0;            // max_k |Omega(R, d_k)|
        double codifferential = 0.0;     // codifferential of d^nor S(R)
        double nijenhuis_defect = 0.0;   // -|N|^2/(16 n(n-1)), coefficient of theta in S(R) - J - 2U
    };
    const TractorData& tractor(std::size_t i) {
        return memo(tractor_, i, [](const FefSample& s) {
            TractorData d;
            const int D = s.cp.D, n = s.fp.n;
            d.J = build_jcr(s.fp);
            d.U = u_term(s.fp);
            AdjointTractorField S = splitting_operator(s.cp, fundamental_field(s.fp));
            d.SR = S.value();
            d.dn = normal_derivative(s.cp, S);
            Tensor4 W = weyl_tensor(s.cp);
            Tensor3 C = cotton_york(s.cp);
            for (int k = 0; k < D; ++k) {
                VectorXd e = VectorXd::Zero(D);
                e(k) = 1.0;
                AdjointTractor Om = normal_curvature(s.cp, W, C, d.SR.xi, e);
                d.equation = std::max(d.equation, (d.dn[k] + Om).max_abs());
                d.omega_R = std::max(d.omega_R, Om.max_abs());
            }
            d.codifferential = max_abs(codifferential_1form(s.cp, d.dn));
            d.nijenhuis_defect = -nijenhuis_norm2(s.fp) / 16.0 / (n * (n - 1.0));
            return d;
        });
    }

private:
    template <class T, class F>
    const T& memo(std::vector<std::optional<T>>& cache, std::size_t i, F make) {
        const auto& f = fefferman();
        if (cache.size() != f.size()) cache.resize(f.size());
        if (!cache[i]) cache[i] = make(f[i]);
        return *cache[i];
    }

    std::optional<std::vector<FefSample>> fef_;
    std::map<std::string, bool> adm_;
    std::vector<std::optional<RicciPair>> ricci_;
    std::vector<std::optional<KillingFormReport>> killing_;
    std::vector<std::optional<TractorData>> tractor_;
};

using Body = std::function<void(Context&, Tally&)>;
using Applies = std::function<std::string(const Context&)>;  // empty when the check applies

struct Entry {
    CheckInfo info;
    Body body;
    Applies applies;
};

std::string always(const Context&) { return {}; }
std::string needs_deformation(const Context& c) {
    return c.integrable() ? "needs a non-integrable example" : std::string();
}
std::string needs_integrable(const Context& c) {
    return c.integrable() ? std::string() : "needs an integrable example";
}
std::string needs_flat(const Context& c) { return c.flat() ? std::string() : "needs flat Heisenberg"; }

std::vector<Entry> build_entries();

const std::vector<Entry>& entries() {
    static const std::vector<Entry> e = [] {
        auto v = build_entries();
        std::sort(v.begin(), v.end(), [](const Entry& a, const Entry& b) { return a.info.id < b.info.id; });
        return v;
    }();
    return e;
}

}  // namespace

namespace {

// ---- Fefferman metric curvature

void scalar_curvature(Context& c, Tally& t, bool corrected) {
    for (const auto& s : c.fefferman()) {
        const double st = corrected ? scalar_structural_corrected(s.fp) : scalar_structural(s.fp);
        t.add(s.cp.scal() - st, st);
        ++t.points;
    }
}

void levi_civita(Context& c, Tally& t) {
    std::map<std::string, double> worst;
    for (const auto& s : c.fefferman()) {
        for (const auto& lc : structural_lc_components(s.fp)) {
            const double o = oracle_lc_component(s.fp, s.cp.mg, lc.a, lc.b, lc.c);
            t.add(o - lc.structural, lc.structural);
            worst[lc.row] = std::max(worst[lc.row], std::abs(o - lc.structural) / (1.0 + std::abs(lc.structural)));
        }
        ++t.points;
    }
    auto it = std::max_element(worst.begin(), worst.end(),
                               [](const auto& a, const auto& b) { return a.second < b.second; });
    if (it != worst.end()) t.note = std::to_string(worst.size()) + " rows, worst " + it->first;
}

void ricci_mixed(Context& c, Tally& t) {
    const auto& f = c.fefferman();
    for (std::size_t i = 0; i < f.size(); ++i) {
        const auto& r = c.ricci(i);
        t.add(r.oracle(f[i].fp.S(), f[i].fp.Tstar()) - r.structural.ric_ST, r.structural.ric_ST);
        ++t.points;
    }
}

void ricci_horizontal(Context& c, Tally& t, bool corrected) {
    const auto& f = c.fefferman();
    for (std::size_t i = 0; i < f.size(); ++i) {
        const auto& r = c.ricci(i);
        const int h = 2 * f[i].fp.m;
        const MatrixXd& st = corrected ? r.structural.ric_HH_corrected : r.structural.ric_HH;
        for (int a = 0; a < h; ++a)
            for (int b = 0; b < h; ++b) t.add(r.oracle(a, b) - st(a, b), st(a, b));
        ++t.points;
    }
}

// the B and N terms of the horizontal Ricci formula must be active
void ricci_nonvacuity(Context& c, Tally& t) {
    const auto& f = c.fefferman();
    double v = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const auto& st = c.ricci(i).structural;
        v = std::max({v, st.max_nabla_B_term, st.max_NN_term, st.max_NNN_term});
        ++t.points;
    }
    t.magnitude(v);
}

void killing_parallel(Context& c, Tally& t) {
    for (std::size_t i = 0; i < c.fefferman().size(); ++i) {
        const auto& r = c.killing(i);
        t.add(r.killing_residual);
        t.add(r.killing_lie_defect);
        ++t.points;
    }
}

// residuals below are already relative with +1
void killing_laplacian(Context& c, Tally& t, bool corrected) {
    for (std::size_t i = 0; i < c.fefferman().size(); ++i) {
        const auto& r = c.killing(i);
        t.add(corrected ? r.laplace_residual_corrected : r.laplace_residual);
        ++t.points;
    }
}

void killing_p(Context& c, Tally& t, bool corrected) {
    for (std::size_t i = 0; i < c.fefferman().size(); ++i) {
        const auto& r = c.killing(i);
        t.add(corrected ? r.p_residual_corrected : r.p_residual);
        ++t.points;
    }
}

// admissible l: P theta has no theta-term
void p_theta_admissible(Context& c, Tally& t) {
    const auto& f = c.fefferman();
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (!c.admissible(f[i].ell)) continue;
        t.add(c.killing(i).p_minus_a_norm);
        ++t.points;
    }
    if (!t.points) t.note = "no admissible l-variant";
}

// non-admissible l: the theta-term of P theta is present, smallest value over the points
void p_theta_non_admissible(Context& c, Tally& t) {
    const auto& f = c.fefferman();
    double v = INFINITY;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (c.admissible(f[i].ell)) continue;
        v = std::min(v, c.killing(i).p_minus_a_norm);
        ++t.points;
    }
    if (t.points)
        t.magnitude(v);
    else
        t.note = "no non-admissible l-variant";
}

}  // namespace

namespace {

// ---- contact-form rescaling and the conformal class

std::vector<std::pair<std::string, ScalarField>> rescalings(const ExampleGeometry& ex) {
    const int n = ex.structure.n();
    return {{"zero", ScalarField::constant(n, 0.0)},
            {"constant", ScalarField::constant(n, 0.4)},
            {"polynomial", default_rescaling(ex.m)}};
}

// residuals are relative with +1
void rescaling_law(Context& c, Tally& t, bool scalar) {
    for (const auto& [name, f] : rescalings(c.ex))
        for (const auto& p : c.pts) {
            auto r = rescaling_check(c.ex.structure, f, p);
            t.add(scalar ? r.scal_residual : r.omega_residual);
            ++t.points;
        }
}

void rescaled_metric(Context& c, Tally& t) {
    ScalarField f = default_rescaling(c.ex.m);
    PseudoHermitianStructure rs = rescale_structure(c.ex.structure, f);
    for (const auto& e : c.ex.ells) {
        FeffermanSpace a{c.ex.structure, e.lambda}, b{rs, e.lambda};
        for (const auto& p : c.pts) {
            MatrixXd ga = std::exp(2.0 * f(p)) * fefferman_point(a, p, 3).g.matrix_values();
            MatrixXd gb = fefferman_point(b, p, 3).g.matrix_values();
            for (int i = 0; i < ga.rows(); ++i)
                for (int j = 0; j < ga.cols(); ++j) t.add(gb(i, j) - ga(i, j), ga(i, j));
            ++t.points;
        }
    }
}

// l -> l + i dg equals the pull-back by s -> s + 2g/(m+2)
void gauge_change(Context& c, Tally& t, bool scalar) {
    const int n = c.ex.structure.n(), D = n + 1, m = c.ex.m;
    ScalarField g = ScalarField::from_coords(n, [n](const std::vector<Jet>& x) {
        return 0.3 * x[0] * x[1] + 0.2 * x[n - 1] * x[0] + 0.1 * x[n - 1] * x[n - 1];
    });
    const OneForm& gen = c.ex.ell("generic").lambda;
    OneForm shifted = gen, dg = differential(g);
    for (int j = 0; j < n; ++j) shifted.comp[j] = gen.comp[j] + dg.comp[j];
    FeffermanSpace a{c.ex.structure, gen}, b{c.ex.structure, shifted};
    const int K = scalar ? 5 : 3;
    for (const auto& p : c.pts) {
        auto fa = fefferman_point(a, p, K), fb = fefferman_point(b, p, K);
        if (scalar) {
            const double sb = metric_geometry(fb.g).scal.value();
            t.add(metric_geometry(fa.g).scal.value() - sb, sb);
        } else {
            MatrixXd Phi = MatrixXd::Identity(D, D);
            Jet gj = g.jet(p, 1);
            for (int j = 0; j < n; ++j) Phi(n, j) = 2.0 / (m + 2.0) * gj.partial(j);
            MatrixXd pulled = Phi.transpose() * fa.g.matrix_values() * Phi;
            MatrixXd gb = fb.g.matrix_values();
            for (int i = 0; i < D; ++i)
                for (int j = 0; j < D; ++j) t.add(pulled(i, j) - gb(i, j), gb(i, j));
        }
        ++t.points;
    }
}

// ---- tractors on the Fefferman space

void jcr_square(Context& c, Tally& t) {
    const auto& f = c.fefferman();
    int bad = 0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        ComplexStructureReport cs = check_complex_structure(f[i].cp, c.tractor(i).J);
        t.add(cs.residual);
        if (!cs.algebra_checked || cs.algebra.worst() > 1e-8) ++bad;
        ++t.points;
    }
    if (bad) {
        t.add(INFINITY);
        t.note = std::to_string(bad) + " points fail the so(2,n+1) analysis";
    }
}

// S(R) - J_CR - k U - (N-defect) theta, componentwise
void splitting_vs_jcr(Context& c, Tally& t, double k, bool with_defect) {
    const auto& f = c.fefferman();
    for (std::size_t i = 0; i < f.size(); ++i) {
        const auto& d = c.tractor(i);
        AdjointTractor rest = d.SR - d.J - k * d.U;
        if (with_defect)
            for (int j = 0; j < rest.dim(); ++j) rest.omega(j) -= d.nijenhuis_defect * f[i].fp.theta_total[j].value();
        const double before = t.max_abs;
        t.add(rest.max_abs(), d.SR.max_abs());
        if (t.max_abs > before && t.max_abs > 1e-12) t.note = "worst at l = " + f[i].ell;
        ++t.points;
    }
}

void tractor_equation(Context& c, Tally& t) {
    const auto& f = c.fefferman();
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (!c.admissible(f[i].ell)) continue;
        t.add(c.tractor(i).equation);
        ++t.points;
    }
}

// integrable case, l = 0
void curvature_along_R(Context& c, Tally& t) {
    const auto& f = c.fefferman();
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (f[i].ell != "zero") continue;
        t.add(c.tractor(i).omega_R);
        ++t.points;
    }
}

}  // namespace

namespace {

// ---- complex elements of so(2,n+1)

constexpr int kConjugates = 50;

void complex_elements(Context& c, Tally& t, bool margins) {
    const int n = c.ex.structure.n();
    std::mt19937_64 rng(c.cfg.seed);
    const MatrixXd b0 = so::canonical_complex_element(n);
    double smallest = INFINITY;
    for (int k = 0; k < kConjugates; ++k) {
        auto r = so::analyze_complex_element(so::conjugate_by_exp(b0, 0.3 * so::random_element(n, rng)));
        t.add(r.worst());
        smallest = std::min({smallest, r.m_norm, r.l_norm});
        ++t.points;
    }
    if (margins) t.magnitude(smallest);
}

// ---- reconstruction of the CR structure from J_CR

void reconstruction(Context& c, Tally& t, int what) {
    const auto& f = c.fefferman();
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (!c.admissible(f[i].ell)) continue;
        const FeffermanPoint& fp = f[i].fp;
        const ConformalPoint& cp = f[i].cp;
        const auto& d = c.tractor(i);
        Reconstruction rec = reconstruct_cr(cp, d.J);
        if (what == 0) {
            t.add(compare_with_base(rec, fp).worst());
        } else if (what == 1) {
            const auto& fl = rec.flags;
            for (double v : {fl.m_null, fl.l_null, fl.eigen_m, fl.eigen_l, fl.w_square}) t.add(v);
        } else {
            // chart metric e^{2 phi} f; the g_1 slot difference S(R) - J_CR is invariant and removed
            const int D = cp.D, q = fp.g.min_order();
            std::vector<double> pt = fp.w.cr.p.coords;
            pt.push_back(0.2);
            auto x = coordinate_jets(ChartPoint{pt}, q);
            Jet phi = 0.3 * sin(x[0]) + 0.2 * x[1] * x[D - 2] + 0.1 * x[D - 1] * x[D - 1] + 0.05 * x[2];
            Jet e2 = exp(2.0 * phi);
            JetTensor gt = fp.g;
            for (auto& j : gt.data()) j = e2 * j;
            ConformalPoint cpt = conformal_point(gt);
            AdjointTractor At = splitting_operator(cpt, fundamental_field(fp)).value() - (d.SR - d.J);
            t.add(j_difference_on_H(rec, reconstruct_cr(cpt, At)));
        }
        ++t.points;
    }
}

// ---- pseudohermitian torsion identities

const std::vector<std::string> kNijenhuisSides = {"trace_B_N_equals_quarter_NxNy", "double_trace_NN_equals_half_norm",
                                                  "scriptT_symmetric", "B_antisymmetric_23"};

void torsion_identities(Context& c, Tally& t, bool nonvacuity) {
    double size = 0.0;
    int rows = 0;
    for (const auto& p : c.pts) {
        auto rs = torsion_identity_suite(build_webster_point(c.ex.structure, p, 3));
        rows = static_cast<int>(rs.size());
        for (const auto& r : rs) {
            t.add(r.residual, r.scale);
            if (std::find(kNijenhuisSides.begin(), kNijenhuisSides.end(), r.name) != kNijenhuisSides.end())
                size = std::max(size, r.scale);
        }
        ++t.points;
    }
    if (nonvacuity) t.magnitude(size);
    t.note = std::to_string(rows) + " identities";
}

// ---- so(2,n+1) and the tractor algebra

void jacobi(Context& c, Tally& t) {
    const int n = c.ex.structure.n();
    std::mt19937_64 rng(c.cfg.seed + 1);
    for (int k = 0; k < kConjugates; ++k) {
        MatrixXd X = so::random_element(n, rng), Y = so::random_element(n, rng), Z = so::random_element(n, rng);
        t.add(max_abs(so::bracket(X, so::bracket(Y, Z)) + so::bracket(Y, so::bracket(Z, X)) +
                      so::bracket(Z, so::bracket(X, Y))));
        ++t.points;
    }
}

void codifferential_square(Context& c, Tally& t) {
    const int n = c.ex.structure.n(), N = n + 1;
    std::mt19937_64 rng(c.cfg.seed + 2);
    for (int k = 0; k < 20; ++k) {
        so::Cochain psi{n, 2, std::vector<MatrixXd>(N * N, MatrixXd::Zero(n + 3, n + 3))};
        for (int i = 0; i < N; ++i)
            for (int j = i + 1; j < N; ++j) {
                MatrixXd X = so::random_element(n, rng);
                psi.values[i * N + j] = X;
                psi.values[j * N + i] = -X;
            }
        so::Cochain d1 = so::codifferential(psi);
        t.add(max_abs(so::codifferential(d1).values[0]));
        ++t.points;
    }
}

// coordinate bracket against the commutator after identification, at the Fefferman metric of each point
void bracket_vs_commutator(Context& c, Tally& t) {
    std::mt19937_64 rng(c.cfg.seed + 3);
    std::normal_distribution<double> nd;
    for (const auto& s : c.fefferman()) {
        const MatrixXd g = s.cp.g(), E = s.cp.frame;
        const int D = s.cp.D;
        auto random = [&] {
            MatrixXd S = MatrixXd::NullaryExpr(D, D, [&] { return nd(rng); });
            AdjointTractor A;
            A.xi = VectorXd::NullaryExpr(D, [&] { return nd(rng); });
            A.phi = g.partialPivLu().solve(S - S.transpose()) + nd(rng) * MatrixXd::Identity(D, D);
            A.omega = VectorXd::NullaryExpr(D, [&] { return nd(rng); });
            return A;
        };
        AdjointTractor A = random(), B = random();
        MatrixXd oracle = so::bracket(to_algebra(E, A), to_algebra(E, B));
        t.add(max_abs(to_algebra(E, adjoint_bracket(g, A, B)) - oracle), max_abs(oracle));
        ++t.points;
    }
}

// S(R): projection to TF is R, phi in co(TF), d^nor S(R) in the kernel of the codifferential
void splitting_of_R(Context& c, Tally& t) {
    const auto& f = c.fefferman();
    for (std::size_t i = 0; i < f.size(); ++i) {
        const auto& d = c.tractor(i);
        JetVec R = fundamental_field(f[i].fp);
        for (int j = 0; j < f[i].cp.D; ++j) t.add(d.SR.xi(j) - R[j].value(), R[j].value());
        t.add(co_defect(f[i].cp.g(), d.SR.phi));
        t.add(d.codifferential);
        ++t.points;
    }
    t.note = "codifferential of the 0-chain S(R) vanishes identically";
}

// ---- flat Heisenberg, l = 0

template <class F>
void flat_samples(Context& c, Tally& t, F each) {
    const auto& f = c.fefferman();
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (f[i].ell != "zero") continue;
        each(i, f[i]);
        ++t.points;
    }
}

void flat_webster(Context& c, Tally& t) {
    flat_samples(c, t, [&](std::size_t, const FefSample& s) {
        t.add(s.fp.w.scal.value());
        t.add(std::sqrt(nijenhuis_norm2(s.fp)));
        for (const auto& j : s.fp.w.torT.data()) t.add(j.value());
        t.add(max_abs(curvature_form(s.fp).direct));
    });
}

void flat_scalar(Context& c, Tally& t) {
    flat_samples(c, t, [&](std::size_t, const FefSample& s) { t.add(s.cp.scal()); });
}

// except_SS: Ric(S,S) is compared with m/2 instead of 0
void flat_ricci(Context& c, Tally& t, bool except_SS) {
    flat_samples(c, t, [&](std::size_t i, const FefSample& s) {
        MatrixXd R = c.ricci(i).oracle;
        if (except_SS) R(s.fp.S(), s.fp.S()) -= 0.5 * s.fp.m;
        t.add(max_abs(R));
    });
    if (!except_SS) t.note = "Ric(S,S) = m/2 for every Fefferman metric";
}

}  // namespace

namespace {

std::vector<Entry> build_entries() {
    using M = Measure;
    constexpr bool info = true;
    auto mk = [](std::string id, std::string anchor, std::vector<int> crit, M m, double tol, Body b,
                 Applies a = always, bool informational = false) {
        return Entry{{std::move(id), std::move(anchor), std::move(crit), m, tol, informational}, std::move(b),
                     std::move(a)};
    };
    using C = Context;
    using T = Tally;
    return {
        mk("scalar.structural", "Fefferman scalar curvature from Webster data and tr L_dl", {1}, M::relative, 1e-8,
           [](C& c, T& t) { scalar_curvature(c, t, false); }),
        mk("scalar.structural_corrected", "Fefferman scalar curvature with the -|N|^2/16 term", {1}, M::relative,
           1e-8, [](C& c, T& t) { scalar_curvature(c, t, true); }, always, info),
        mk("levi_civita.components", "structural Levi-Civita components on the lifted frame", {2}, M::relative, 1e-8,
           levi_civita),
        mk("ricci.mixed", "Ric(S,T*) structural formula", {3}, M::relative, 1e-7, ricci_mixed),
        mk("ricci.horizontal", "Ric(X*,V*) structural formula", {3}, M::relative, 1e-7,
           [](C& c, T& t) { ricci_horizontal(c, t, false); }),
        mk("ricci.horizontal_corrected", "Ric(X*,V*) with the N(N(X,.),.) trace weighted 1/8", {3}, M::relative,
           1e-7, [](C& c, T& t) { ricci_horizontal(c, t, true); }, always, info),
        mk("ricci.nonvacuity", "B and N terms of Ric(X*,V*) are active", {3}, M::at_least, 1e-3, ricci_nonvacuity,
           needs_deformation),
        mk("killing.parallel", "Killing form: nabla theta = dtheta/2 and L_S f = 0", {4}, M::absolute, 1e-10,
           killing_parallel),
        mk("killing.laplacian", "Laplace-Beltrami of the Killing form", {4}, M::relative, 1e-8,
           [](C& c, T& t) { killing_laplacian(c, t, false); }),
        mk("killing.laplacian_corrected", "Laplace-Beltrami of the Killing form with the |N|^2 term", {4},
           M::relative, 1e-8, [](C& c, T& t) { killing_laplacian(c, t, true); }, always, info),
        mk("killing.p_operator", "operator P on the Killing form", {4}, M::relative, 1e-8,
           [](C& c, T& t) { killing_p(c, t, false); }),
        mk("killing.p_operator_corrected", "operator P on the Killing form with the |N|^2 term", {4}, M::relative,
           1e-8, [](C& c, T& t) { killing_p(c, t, true); }, always, info),
        mk("killing.p_theta_admissible", "tr L_dl = 0 implies P theta = iA/(n+3)", {4}, M::absolute, 1e-8,
           p_theta_admissible),
        mk("killing.p_theta_non_admissible", "tr L_dl != 0 implies P theta != iA/(n+3)", {4}, M::at_least, 1e-4,
           p_theta_non_admissible),
        mk("rescaling.connection_form", "Webster connection form under theta -> e^{2f} theta", {5}, M::relative,
           1e-8, [](C& c, T& t) { rescaling_law(c, t, false); }),
        mk("rescaling.scalar", "Webster scalar curvature under theta -> e^{2f} theta", {5}, M::relative, 1e-8,
           [](C& c, T& t) { rescaling_law(c, t, true); }),
        mk("conformal.rescaled_metric", "Fefferman metric of e^{2f} theta is e^{2f} times the metric", {6},
           M::absolute, 1e-8, rescaled_metric),
        mk("conformal.gauge_pullback", "l -> l + i dg is a fibre-coordinate change", {6}, M::absolute, 1e-8,
           [](C& c, T& t) { gauge_change(c, t, false); }),
        mk("conformal.gauge_scalar", "scalar curvature invariant under l -> l + i dg", {6}, M::relative, 1e-8,
           [](C& c, T& t) { gauge_change(c, t, true); }),
        mk("tractor.jcr_square", "J_CR is a complex structure on standard tractors", {7}, M::absolute, 1e-9,
           jcr_square),
        mk("tractor.splitting_minus_jcr_u", "S(R) - J_CR - U", {7}, M::absolute, 1e-8,
           [](C& c, T& t) { splitting_vs_jcr(c, t, 1.0, false); }),
        mk("tractor.splitting_minus_jcr_2u", "S(R) - J_CR - 2U", {7}, M::absolute, 1e-8,
           [](C& c, T& t) { splitting_vs_jcr(c, t, 2.0, false); }, needs_integrable, info),
        mk("tractor.splitting_minus_jcr_corrected", "S(R) - J_CR - 2U with the |N|^2 theta term", {7}, M::absolute,
           1e-8, [](C& c, T& t) { splitting_vs_jcr(c, t, 2.0, true); }, always, info),
        mk("tractor.equation", "normal tractor equation for S(R), admissible l", {7}, M::absolute, 1e-7,
           tractor_equation),
        mk("tractor.curvature_along_R", "normal curvature along R vanishes, integrable case with l = 0", {7},
           M::absolute, 1e-8, curvature_along_R, needs_integrable),
        mk("complex_element.conclusions", "complex elements of so(2,n+1): null, eigen and W-structure conclusions",
           {8}, M::absolute, 1e-9, [](C& c, T& t) { complex_elements(c, t, false); }),
        mk("complex_element.margins", "complex elements: the g_-1 and g_1 parts are nonzero", {8}, M::at_least, 1e-3,
           [](C& c, T& t) { complex_elements(c, t, true); }),
        mk("reconstruction.round_trip", "H, J and Levi form recovered from J_CR", {9}, M::absolute, 1e-8,
           [](C& c, T& t) { reconstruction(c, t, 0); }),
        mk("reconstruction.flags", "null and eigen conclusions for J_CR", {9}, M::absolute, 1e-9,
           [](C& c, T& t) { reconstruction(c, t, 1); }),
        mk("reconstruction.rescaling_invariance", "reconstructed J under a conformal change of the chart metric",
           {9}, M::absolute, 1e-8, [](C& c, T& t) { reconstruction(c, t, 2); }),
        mk("torsion.identities", "trace identities and symmetries of B and script-T", {10}, M::relative, 1e-8,
           [](C& c, T& t) { torsion_identities(c, t, false); }),
        mk("torsion.nonvacuity", "N-dependent sides of the torsion identities are nonzero", {10}, M::at_least, 1e-3,
           [](C& c, T& t) { torsion_identities(c, t, true); }, needs_deformation),
        mk("algebra.jacobi", "Jacobi identity in so(2,n+1)", {11}, M::absolute, 1e-10, jacobi),
        mk("algebra.codifferential_square", "codifferential squares to zero", {11}, M::absolute, 1e-12,
           codifferential_square),
        mk("algebra.bracket_vs_commutator", "adjoint tractor bracket against the matrix commutator", {11},
           M::absolute, 1e-10, bracket_vs_commutator),
        mk("splitting.fundamental_field", "splitting operator on R: projection, co(TF) part, codifferential", {11},
           M::absolute, 1e-8, splitting_of_R),
        mk("flat.webster", "flat Heisenberg: scal, N, script-T and Omega vanish", {12}, M::absolute, 1e-9,
           flat_webster, needs_flat),
        mk("flat.fefferman_scalar", "flat Heisenberg: Fefferman scalar curvature vanishes", {12}, M::absolute, 1e-9,
           flat_scalar, needs_flat),
        mk("flat.fefferman_ricci", "flat Heisenberg: Fefferman Ricci tensor vanishes", {12}, M::absolute, 1e-9,
           [](C& c, T& t) { flat_ricci(c, t, false); }, needs_flat),
        mk("flat.fefferman_ricci_except_SS", "flat Heisenberg: Ricci vanishes except Ric(S,S) = m/2", {12},
           M::absolute, 1e-9, [](C& c, T& t) { flat_ricci(c, t, true); }, needs_flat, info),
    };
}

}  // namespace

std::string to_string(Measure m) {
    switch (m) {
        case Measure::absolute: return "absolute";
        case Measure::relative: return "relative";
        case Measure::at_least: return "at_least";
    }
    return "?";
}

std::string to_string(Status s) {
    switch (s) {
        case Status::pass: return "pass";
        case Status::fail: return "fail";
        case Status::skip: return "skip";
    }
    return "?";
}

const std::vector<CheckInfo>& registry() {
    static const std::vector<CheckInfo> r = [] {
        std::vector<CheckInfo> v;
        for (const auto& e : entries()) v.push_back(e.info);
        return v;
    }();
    return r;
}

const CheckInfo* find_check(const std::string& id) {
    for (const auto& c : registry())
        if (c.id == id) return &c;
    return nullptr;
}

bool Report::passed() const { return count(Status::fail) == 0; }

int Report::count(Status s) const {
    return static_cast<int>(std::count_if(checks.begin(), checks.end(), [s](const auto& c) { return c.status == s; }));
}

bool selected(const CheckInfo& c, const std::string& filter) {
    std::stringstream ss(filter);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok == "all" || tok == c.id || tok == c.group()) return true;
        if (tok.rfind("criterion:", 0) == 0) {
            const int k = std::atoi(tok.c_str() + 10);
            if (std::find(c.criteria.begin(), c.criteria.end(), k) != c.criteria.end()) return true;
        }
    }
    return false;
}

Report run_suite(const ExampleGeometry& ex, const RunConfig& cfg) {
    if (cfg.points < 1) throw std::invalid_argument("points must be positive");
    Report rep{ex.name, cfg, {}};
    Context ctx(ex, cfg);
    for (const auto& e : entries()) {
        if (!selected(e.info, cfg.filter)) continue;
        CheckResult r;
        r.info = e.info;
        r.tol = e.info.tol;
        if (auto it = cfg.tol_override.find("*"); it != cfg.tol_override.end()) r.tol = it->second;
        if (auto it = cfg.tol_override.find(e.info.id); it != cfg.tol_override.end()) r.tol = it->second;
        const auto t0 = std::chrono::steady_clock::now();
        Tally t;
        try {
            r.note = e.applies(ctx);
            if (r.note.empty()) {
                e.body(ctx, t);
                r.points = t.points;
                r.max_abs = t.max_abs;
                r.max_rel = t.max_rel;
                r.note = t.note;
                if (t.points == 0) {
                    r.status = Status::skip;
                } else {
                    const double v = e.info.measure == Measure::relative ? t.max_rel : t.max_abs;
                    const bool ok = e.info.measure == Measure::at_least ? v >= r.tol : v <= r.tol;
                    r.status = ok ? Status::pass : Status::fail;
                }
            }
        } catch (const std::exception& ex) {
            r.status = Status::fail;
            r.points = t.points;
            r.note = std::string("exception: ") + ex.what();
        } catch (...) {
            r.status = Status::fail;
            r.note = "exception";
        }
        if (cfg.timing)
            r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        rep.checks.push_back(std::move(r));
    }
    return rep;
}

namespace {

// inf and nan are not JSON numbers
nlohmann::json number(double v) {
    if (std::isfinite(v)) return v;
    return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
}

}  // namespace

std::string emit_report(const Report& r, const std::string& format) {
    if (format == "json") {
        nlohmann::ordered_json j;
        j["schema_version"] = schema_version;
        j["meta"] = {{"example", r.example},
                     {"suite", r.config.filter},
                     {"points", r.config.points},
                     {"seed", r.config.seed},
                     {"passed", r.passed()},
                     {"counts",
                      {{"pass", r.count(Status::pass)}, {"fail", r.count(Status::fail)}, {"skip", r.count(Status::skip)}}}};
        j["checks"] = nlohmann::ordered_json::array();
        for (const auto& c : r.checks)
            j["checks"].push_back({{"id", c.info.id},
                                   {"anchor", c.info.anchor},
                                   {"criteria", c.info.criteria},
                                   {"measure", to_string(c.info.measure)},
                                   {"informational", c.info.informational},
                                   {"points", c.points},
                                   {"max_abs", number(c.max_abs)},
                                   {"max_rel", number(c.max_rel)},
                                   {"tol", c.tol},
                                   {"status", to_string(c.status)},
                                   {"wall_ms", c.wall_ms},
                                   {"note", c.note}});
        return j.dump(2) + "\n";
    }
    if (format == "text") {
        std::ostringstream os;
        os << "example " << r.example << "  suite " << r.config.filter << "  points " << r.config.points << "  seed "
           << r.config.seed << "\n";
        os << std::left << std::setw(40) << "check" << std::setw(7) << "status" << std::setw(6) << "pts"
           << std::setw(12) << "max_abs" << std::setw(12) << "max_rel" << std::setw(12) << "tol" << std::setw(10)
           << "ms" << "note\n";
        for (const auto& c : r.checks) {
            os << std::left << std::setw(40) << c.info.id << std::setw(7) << to_string(c.status) << std::setw(6)
               << c.points << std::scientific << std::setprecision(3) << std::setw(12) << c.max_abs << std::setw(12)
               << c.max_rel << std::setw(12) << c.tol << std::fixed << std::setprecision(1) << std::setw(10)
               << c.wall_ms << (c.info.informational ? "[info] " : "") << c.note << "\n";
        }
        os << r.count(Status::pass) << " pass, " << r.count(Status::fail) << " fail, " << r.count(Status::skip)
           << " skip\n";
        return os.str();
    }
    throw std::invalid_argument("unknown report format: " + format);
}

std::string validate_report_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        return std::string("not JSON: ") + e.what();
    }
    if (!j.is_object()) return "top level is not an object";
    if (!j.contains("schema_version") || j["schema_version"] != schema_version) return "bad schema_version";
    if (!j.contains("meta") || !j["meta"].is_object()) return "missing meta";
    for (const char* k : {"example", "suite", "points", "seed", "passed", "counts"})
        if (!j["meta"].contains(k)) return std::string("meta lacks ") + k;
    if (!j.contains("checks") || !j["checks"].is_array()) return "missing checks";
    std::string prev;
    for (const auto& c : j["checks"]) {
        for (const char* k : {"id", "anchor", "criteria", "measure", "informational", "points", "max_abs", "max_rel",
                              "tol", "status", "wall_ms", "note"})
            if (!c.contains(k)) return std::string("check lacks ") + k;
        const std::string id = c["id"].get<std::string>();
        if (!prev.empty() && id <= prev) return "checks not sorted by id or repeated: " + id;
        prev = id;
        const std::string st = c["status"].get<std::string>();
        if (st != "pass" && st != "fail" && st != "skip") return "bad status " + st;
        if (!find_check(id)) return "unknown check " + id;
    }
    return {};
}

}  // namespace crt::suite
