// SPDX-License-Identifier: MIT
#include "crt/fefferman.hpp"

#include <algorithm>
#include <cmath>

#include "crt/examples.hpp"

namespace crt {

namespace {

int jidx(int a) { return (a % 2 == 0) ? a + 1 : a - 1; }
double jsgn(int a) { return (a % 2 == 0) ? 1.0 : -1.0; }

std::vector<int> identity_map(int n) {
    std::vector<int> v(n);
    for (int i = 0; i < n; ++i) v[i] = i;
    return v;
}

}  // namespace

FeffermanSpace build_fefferman(const PseudoHermitianStructure& base, const OneForm& lambda,
                               const std::vector<ChartPoint>& probe) {
    if (static_cast<int>(lambda.comp.size()) != base.n())
        throw std::invalid_argument("build_fefferman: lambda has the wrong dimension");
    auto pts = probe.empty() ? sample_points(base.n(), 3, 42, -0.5, 0.5) : probe;
    for (const auto& p : pts) require_partially_integrable(base, p);
    return FeffermanSpace{base, lambda};
}

CoordinateMetric FeffermanSpace::metric() const {
    CoordinateMetric g;
    const int D = dim(), nb = n();
    g.dim = D;
    g.g.assign(D, std::vector<ScalarField>(D));
    const FeffermanSpace self = *this;
    for (int i = 0; i < D; ++i)
        for (int j = 0; j < D; ++j)
            g.g[i][j] = ScalarField(D, [self, i, j, nb](const ChartPoint& p, int k) {
                ChartPoint bp{std::vector<double>(p.coords.begin(), p.coords.begin() + nb)};
                FeffermanPoint fp = fefferman_point(self, bp, k + 3);
                // metric does not depend on s; re-centre is a no-op
                return fp.g(i, j);
            });
    return g;
}

FeffermanPoint fefferman_point(const FeffermanSpace& fs, const ChartPoint& p, int K) {
    if (K < 3) throw std::invalid_argument("fefferman_point: base order must be >= 3");
    FeffermanPoint fp;
    fp.w = build_webster_point(fs.base, p, K);
    const CRPoint& cr = fp.w.cr;
    const int m = cr.m, n = cr.n, h = 2 * m, T = cr.reeb(), D = n + 1;
    fp.m = m;
    fp.n = n;
    fp.D = D;
    fp.K = K;
    const double mp2 = m + 2.0;

    JetVec lam;
    for (int j = 0; j < n; ++j) lam.push_back(fs.lambda.comp[j].jet(p, K));
    for (int a = 0; a < n; ++a) {
        Jet v = fp.w.alphaW[a];
        for (int j = 0; j < n; ++j) v += cr.E(a, j) * lam[j];
        if (a == T) v -= fp.w.scal / (2.0 * (m + 1));
        fp.alpha_frame.push_back(v);
    }
    for (int j = 0; j < n; ++j) {
        Jet v(n, K - 3);
        for (int a = 0; a < n; ++a) v += cr.coframe(a, j) * fp.alpha_frame[a];
        fp.alpha_coord.push_back(v);
    }
    fp.dalpha.resize(n, n);
    fp.dlambda.resize(n, n);
    Eigen::MatrixXd E = cr.E.matrix_values();
    Eigen::MatrixXd dl(n, n);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) dl(j, k) = lam[k].partial(j) - lam[j].partial(k);
    fp.dlambda = E * dl * E.transpose();
    if (K < 4) fp.dalpha.resize(0, 0);
    for (int a = 0; a < n && K >= 4; ++a)
        for (int b = 0; b < n; ++b) {
            double v = cr.frame_derivative(a, fp.alpha_frame[b]).value() - cr.frame_derivative(b, fp.alpha_frame[a]).value();
            for (int g = 0; g < n; ++g) v -= cr.c(a, b, g).value() * fp.alpha_frame[g].value();
            fp.dalpha(a, b) = v;
        }

    // metric on the base chart, then embedded into the total chart
    const auto vm = identity_map(n);
    const int ord = K - 3;
    fp.g = JetTensor({D, D}, D, ord);
    for (int j = 0; j < n; ++j)
        for (int k = j; k < n; ++k) {
            Jet v(n, ord);
            for (int i = 0; i < h; ++i) v += cr.coframe(i, j) * cr.coframe(i, k);
            v += (2.0 / mp2) * (cr.theta[j] * fp.alpha_coord[k] + cr.theta[k] * fp.alpha_coord[j]);
            fp.g(j, k) = v.truncate(ord).embed(D, vm);
            fp.g(k, j) = fp.g(j, k);
        }
    for (int j = 0; j < n; ++j) {
        fp.g(j, n) = cr.theta[j].truncate(ord).embed(D, vm);
        fp.g(n, j) = fp.g(j, n);
    }
    fp.g(n, n) = Jet(D, ord);

    for (int a = 0; a < n; ++a) {
        JetVec v;
        for (int j = 0; j < n; ++j) v.push_back(cr.E(a, j).truncate(ord).embed(D, vm));
        v.push_back((-2.0 / mp2 * fp.alpha_frame[a]).truncate(ord).embed(D, vm));
        fp.lift.push_back(v);
    }
    JetVec S(D, Jet(D, ord));
    S[n] += 1.0;
    fp.lift.push_back(S);
    for (int j = 0; j < n; ++j) fp.theta_total.push_back(cr.theta[j].truncate(ord).embed(D, vm));
    fp.theta_total.push_back(Jet(D, ord));
    return fp;
}

Eigen::VectorXd FeffermanPoint::lift_value(int a) const {
    Eigen::VectorXd v(D);
    for (int j = 0; j < D; ++j) v(j) = lift[a][j].value();
    return v;
}

double FeffermanPoint::f(const Eigen::VectorXd& u, const Eigen::VectorXd& v) const {
    return u.dot(g.matrix_values() * v);
}

double ell_trace(const FeffermanPoint& fp) {
    double s = 0.0;
    for (int i = 0; i < 2 * fp.m; ++i) s -= jsgn(i) * fp.dlambda(i, jidx(i));
    return s;
}

bool ell_admissible(const PseudoHermitianStructure& base, const OneForm& lambda, const std::vector<ChartPoint>& pts,
                    double tol) {
    FeffermanSpace fs{base, lambda};
    for (const auto& p : pts)
        if (std::abs(ell_trace(fefferman_point(fs, p, 3))) > tol) return false;
    return true;
}

double nijenhuis_norm2(const FeffermanPoint& fp) {
    const int h = 2 * fp.m;
    double s = 0.0;
    for (int a = 0; a < h; ++a)
        for (int b = 0; b < h; ++b)
            for (int c = 0; c < h; ++c) s += std::pow(fp.w.cr.N(a, b, c).value(), 2);
    return s;
}

CurvatureFormReport curvature_form(const FeffermanPoint& fp) {
    if (fp.K < 4) throw std::invalid_argument("curvature_form: base order must be >= 4");
    const CRPoint& cr = fp.w.cr;
    const int n = fp.n, T = cr.reeb();
    const double k = 1.0 / (2.0 * (fp.m + 1));
    CurvatureFormReport r;
    r.direct = fp.dalpha;
    r.closed_form.resize(n, n);
    Eigen::VectorXd ds(n);
    for (int a = 0; a < n; ++a) ds(a) = cr.frame_derivative(a, fp.w.scal).value();
    const double sc = fp.w.scal.value();
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            const double dth = -cr.c(a, b, T).value();
            const double wedge = ds(a) * (b == T ? 1.0 : 0.0) - ds(b) * (a == T ? 1.0 : 0.0);
            r.closed_form(a, b) = -fp.w.ric(a, b).value() - k * sc * dth - k * wedge + fp.dlambda(a, b);
        }
    r.residual = (r.direct - r.closed_form).cwiseAbs().maxCoeff();
    return r;
}

std::vector<LCComponent> structural_lc_components(const FeffermanPoint& fp) {
    if (fp.K < 4) throw std::invalid_argument("structural_lc_components: base order must be >= 4");
    const CRPoint& cr = fp.w.cr;
    const int h = 2 * fp.m, n = fp.n, T = cr.reeb(), S = fp.S();
    const double k = 2.0 / (fp.m + 2.0);
    auto c = [&](int a, int b, int d) { return cr.c(a, b, d).value(); };
    std::vector<LCComponent> r;
    for (int a = 0; a < h; ++a)
        for (int b = 0; b < h; ++b)
            for (int d = 0; d < h; ++d)
                r.push_back({"XY_Z", a, b, d, fp.w.Gamma(a, b, d).value() + fp.w.B(a, b, d).value()});
    for (int b = 0; b < h; ++b)
        for (int d = 0; d < h; ++d) {
            r.push_back({"SY_Z", S, b, d, 0.5 * cr.Jm(d, b)});
            r.push_back({"XY_S", b, d, S, -0.5 * cr.Jm(d, b)});
            r.push_back({"TY_Z", T, b, d, 0.5 * (c(T, b, d) - c(T, d, b) + k * fp.dalpha(b, d))});
            r.push_back({"XY_T", b, d, T, 0.5 * (c(T, b, d) + c(T, d, b) - k * fp.dalpha(b, d))});
        }
    for (int d = 0; d < h; ++d) {
        r.push_back({"TT_Z", T, T, d, k * fp.dalpha(T, d)});
        r.push_back({"SS_Z", S, S, d, 0.0});
        r.push_back({"ST_Z", S, T, d, 0.0});
        r.push_back({"TS_Z", T, S, d, 0.0});
    }
    for (int a = 0; a <= n; ++a) {
        r.push_back({"BS_S", a, S, S, 0.0});
        r.push_back({"BS_T", a, S, T, 0.0});
        r.push_back({"BT_T", a, T, T, 0.0});
    }
    return r;
}

double oracle_lc_component(const FeffermanPoint& fp, const MetricGeometry& mg, int a, int b, int c) {
    return mg.connection_pairing(fp.lift_value(a), fp.lift[b], fp.lift_value(c));
}

RicciStructural ricci_structural(const FeffermanPoint& fp) {
    const WebsterPoint& w = fp.w;
    const CRPoint& cr = w.cr;
    const int m = fp.m, h = 2 * m;
    const double sc = w.scal.value(), mp2 = m + 2.0;
    auto N = [&](int a, int b, int d) { return cr.N(a, b, d).value(); };
    auto G = [&](int a, int b, int d) { return w.Gamma(a, b, d).value(); };

    // (nabla_{e_i} B)(x,v,i) summed over i
    Eigen::MatrixXd nB = Eigen::MatrixXd::Zero(h, h);
    for (int x = 0; x < h; ++x)
        for (int v = 0; v < h; ++v)
            for (int i = 0; i < h; ++i) {
                double t = cr.frame_derivative(i, w.B(x, v, i)).value();
                for (int d = 0; d < h; ++d)
                    t -= G(i, x, d) * w.B(d, v, i).value() + G(i, v, d) * w.B(x, d, i).value() +
                         G(i, i, d) * w.B(x, v, d).value();
                nB(x, v) += t;
            }

    RicciStructural r;
    r.ric_ST = sc / (2.0 * (m + 1)) - ell_trace(fp) / (2.0 * mp2);
    r.ric_HH.resize(h, h);
    r.ric_HH_corrected.resize(h, h);
    for (int x = 0; x < h; ++x)
        for (int v = 0; v < h; ++v) {
            const int jx = jidx(x), jv = jidx(v);
            const double sx = jsgn(x), sv = jsgn(v);
            double NN = 0.0, NNN = 0.0;
            for (int i = 0; i < h; ++i)
                for (int g = 0; g < h; ++g) {
                    NN += N(x, i, g) * N(v, i, g);
                    NNN += N(x, i, g) * N(g, i, v);
                }
            const double tT = sv * w.torT(x, jv).value() + sx * w.torT(v, jx).value();
            double val = (x == v ? sc / ((m + 1) * mp2) : 0.0);
            val -= m / (2.0 * mp2) * (sv * w.ric(x, jv).value() + sx * w.ric(v, jx).value());
            val -= m / 4.0 * tT;
            val += nB(x, v) + nB(v, x);
            val += -0.125 * NN + 0.25 * NNN;
            val -= (sv * fp.dlambda(x, jv) + sx * fp.dlambda(v, jx)) / mp2;
            r.ric_HH(x, v) = val;
            double NNNt = 0.0;
            for (int i = 0; i < h; ++i)
                for (int g = 0; g < h; ++g) NNNt += N(v, i, g) * N(g, i, x);
            r.ric_HH_corrected(x, v) = val - 0.0625 * (NNN + NNNt);
            r.max_nabla_B_term = std::max(r.max_nabla_B_term, std::abs(nB(x, v) + nB(v, x)));
            r.max_NN_term = std::max(r.max_NN_term, std::abs(0.125 * NN));
            r.max_NNN_term = std::max(r.max_NNN_term, std::abs(0.25 * NNN));
            r.max_scriptT_term = std::max(r.max_scriptT_term, std::abs(m / 4.0 * tT));
        }
    return r;
}

Eigen::MatrixXd oracle_ricci_frame(const FeffermanPoint& fp, const MetricGeometry& mg) {
    Eigen::MatrixXd L(fp.D, fp.D);
    for (int a = 0; a < fp.D; ++a) L.col(a) = fp.lift_value(a);
    return L.transpose() * mg.Ric.matrix_values() * L;
}

double scalar_structural(const FeffermanPoint& fp) {
    const int m = fp.m;
    return (2.0 * m + 1.0) / (m + 1.0) * fp.w.scal.value() + ell_trace(fp) / (m + 2.0);
}

double scalar_structural_corrected(const FeffermanPoint& fp) {
    return scalar_structural(fp) - nijenhuis_norm2(fp) / 16.0;
}

KillingFormReport laplacian_of_killing_form(const FeffermanPoint& fp) {
    if (fp.g.min_order() < 2) throw std::invalid_argument("laplacian_of_killing_form: base order must be >= 5");
    const int D = fp.D, n = fp.n, m = fp.m;
    MetricGeometry mg = metric_geometry(fp.g);
    KillingFormReport r;
    r.trace = ell_trace(fp);

    Eigen::MatrixXd nth = covariant_derivative_1form(mg, fp.theta_total);
    for (int i = 0; i < D; ++i)
        for (int j = 0; j < D; ++j) {
            double half_d = 0.5 * (fp.theta_total[j].partial(i) - fp.theta_total[i].partial(j));
            r.killing_residual = std::max(r.killing_residual, std::abs(nth(i, j) - half_d));
        }

    Eigen::VectorXd th(D), Ar(D);
    for (int j = 0; j < D; ++j) th(j) = fp.theta_total[j].value();
    for (int j = 0; j < n; ++j) Ar(j) = fp.alpha_coord[j].value();
    Ar(n) = 0.5 * (m + 2.0);
    const double nn = n, tr = r.trace, scal_f = mg.scal.value();
    const double defect = -nijenhuis_norm2(fp) / 16.0;  // scal_f - displayed scalar formula
    auto relmax = [](const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
        return (a - b).cwiseAbs().maxCoeff() / (1.0 + b.cwiseAbs().maxCoeff());
    };

    Eigen::VectorXd lap = hodge_laplacian_1form(fp.g, fp.theta_total);
    Eigen::VectorXd lap_cf = 2.0 * (nn - 1) / (nn + 3) * Ar + (scal_f / nn - 2.0 * (nn + 1) / (nn * (nn + 3)) * tr) * th;
    r.laplace_residual = relmax(lap, lap_cf);
    r.laplace_residual_corrected = relmax(lap, lap_cf - defect / nn * th);

    Eigen::VectorXd P = (bochner_trace_1form(fp.g, fp.theta_total) + scal_f / (2.0 * nn) * th) / (nn - 1);
    Eigen::VectorXd P_cf = -Ar / (nn + 3) + (nn + 1) * tr / (nn * (nn - 1) * (nn + 3)) * th;
    r.p_residual = relmax(P, P_cf);
    r.p_residual_corrected = relmax(P, P_cf + defect / (2.0 * nn * (nn - 1)) * th);
    r.p_minus_a_norm = (P + Ar / (nn + 3)).cwiseAbs().maxCoeff();

    r.killing_lie_defect = killing_defect(fp.g, fp.lift[fp.S()]);
    return r;
}

}  // namespace crt
