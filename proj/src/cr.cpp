// SPDX-License-Identifier: MIT
#include "crt/cr.hpp"

#include <cmath>
#include <limits>

namespace crt {

Jet CRPoint::frame_derivative(int a, const Jet& f) const {
    Jet r(f.dim(), f.order() - 1);
    for (int j = 0; j < n; ++j) r += E(a, j) * f.derivative(j);
    return r;
}

JetVec CRPoint::to_frame(const JetVec& v) const {
    JetVec w;
    for (int a = 0; a < n; ++a) {
        Jet s = coframe(a, 0) * v[0];
        for (int j = 1; j < n; ++j) s += coframe(a, j) * v[j];
        w.push_back(s);
    }
    return w;
}

JetVec CRPoint::from_frame(const JetVec& w) const {
    JetVec v;
    for (int j = 0; j < n; ++j) {
        Jet s = E(0, j) * w[0];
        for (int a = 1; a < n; ++a) s += E(a, j) * w[a];
        v.push_back(s);
    }
    return v;
}

JetVec CRPoint::apply_J(const JetVec& v) const {
    JetVec w = to_frame(v), Jw;
    for (int a = 0; a < n; ++a) {
        Jet s = 0.0 * w[0];
        for (int b = 0; b < 2 * m; ++b)
            if (Jm(a, b) != 0.0) s += Jm(a, b) * w[b];
        Jw.push_back(s);
    }
    return from_frame(Jw);
}

CRPoint build_frame(const PseudoHermitianStructure& s, const ChartPoint& p, int K) {
    const int m = s.m, n = s.n(), h = 2 * m;
    if (p.dim() != n) throw std::invalid_argument("build_frame: point dimension differs from chart");
    if (K < 1) throw std::invalid_argument("build_frame: order must be >= 1");
    CRPoint cr;
    cr.m = m;
    cr.n = n;
    cr.K = K;
    cr.p = p;
    cr.theta = s.theta.jets(p, K);
    cr.dtheta = JetTensor({n, n}, n, K - 1);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) cr.dtheta(i, j) = cr.theta[j].derivative(i) - cr.theta[i].derivative(j);

    cr.F = JetTensor({h, n}, n, K);
    cr.Jd = JetTensor({h, h}, n, K);
    for (int a = 0; a < h; ++a) {
        for (int j = 0; j < n; ++j) cr.F(a, j) = s.hframe[a].comp[j].jet(p, K);
        for (int b = 0; b < h; ++b) cr.Jd(a, b) = s.J[a][b].jet(p, K);
    }
    // dtheta(F_a, F_b)
    JetTensor D({h, h}, n, K - 1);
    for (int a = 0; a < h; ++a)
        for (int b = 0; b < h; ++b)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    if (i != j) D(a, b) += cr.F(a, i) * cr.F(b, j) * cr.dtheta(i, j);
    cr.Ld = matmul(D, cr.Jd);

    // Gram-Schmidt in designated coefficients with the J-pairing e_{2a} = J e_{2a-1}
    auto inner = [&](const JetVec& u, const JetVec& v) {
        Jet r(n, K - 1);
        for (int a = 0; a < h; ++a)
            for (int b = 0; b < h; ++b) r += u[a] * cr.Ld(a, b) * v[b];
        return r;
    };
    auto applyJd = [&](const JetVec& u) {
        JetVec r(h, Jet(n, K - 1));
        for (int a = 0; a < h; ++a)
            for (int b = 0; b < h; ++b) r[a] += cr.Jd(a, b) * u[b];
        return r;
    };
    std::vector<JetVec> basis;
    for (int cand = 0; cand < h && static_cast<int>(basis.size()) < h; ++cand) {
        JetVec w(h, Jet(n, K - 1));
        w[cand] += 1.0;
        for (const auto& u : basis) {
            Jet proj = inner(w, u);
            for (int a = 0; a < h; ++a) w[a] -= proj * u[a];
        }
        Jet nn = inner(w, w);
        if (nn.value() < -1e-12) throw DegenerateError("build_frame: Levi form is not positive definite");
        if (nn.value() < 1e-10) continue;
        Jet inv_norm = pow(nn, -0.5);
        for (auto& x : w) x *= inv_norm;
        basis.push_back(w);
        basis.push_back(applyJd(w));
    }
    if (static_cast<int>(basis.size()) != h) throw DegenerateError("build_frame: designated frame does not span H");

    cr.C = JetTensor({h, h}, n, K - 1);
    for (int k = 0; k < h; ++k)
        for (int a = 0; a < h; ++a) cr.C(k, a) = basis[k][a];

    cr.E = JetTensor({n, n}, n, K - 1);
    for (int k = 0; k < h; ++k)
        for (int j = 0; j < n; ++j)
            for (int a = 0; a < h; ++a) cr.E(k, j) += cr.C(k, a) * cr.F(a, j);

    // Reeb field: theta(T) = 1, dtheta(T, e_k) = 0
    JetTensor A({n, n}, n, K - 1);
    JetVec rhs(n, Jet(n, K - 1));
    rhs[0] += 1.0;
    for (int j = 0; j < n; ++j) A(0, j) = cr.theta[j].truncate(K - 1);
    for (int k = 0; k < h; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (i != j) A(k + 1, i) += cr.dtheta(i, j) * cr.E(k, j);
    JetVec T;
    try {
        T = solve(A, rhs);
    } catch (const DegenerateError&) {
        throw DegenerateError("build_frame: degenerate contact form (Reeb system singular)");
    }
    for (int j = 0; j < n; ++j) cr.E(h, j) = T[j];

    JetTensor M({n, n}, n, K - 1);
    for (int j = 0; j < n; ++j)
        for (int a = 0; a < n; ++a) M(j, a) = cr.E(a, j);
    cr.coframe = inverse(M);

    cr.Jm = Eigen::MatrixXd::Zero(n, n);
    for (int al = 0; al < m; ++al) {
        cr.Jm(2 * al + 1, 2 * al) = 1.0;
        cr.Jm(2 * al, 2 * al + 1) = -1.0;
    }
    return cr;
}

void add_brackets(CRPoint& cr) {
    if (cr.has_brackets) return;
    const int n = cr.n, h = 2 * cr.m, K = cr.K;
    if (K < 2) throw std::invalid_argument("add_brackets: order must be >= 2");
    JetTensor br({n, n, n}, n, K - 2);
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            for (int k = 0; k < n; ++k) {
                Jet v = cr.frame_derivative(a, cr.E(b, k)) - cr.frame_derivative(b, cr.E(a, k));
                br(a, b, k) = v;
                br(b, a, k) = -v;
            }
    cr.c = JetTensor({n, n, n}, n, K - 2);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int d = 0; d < n; ++d)
                for (int k = 0; k < n; ++k) cr.c(a, b, d) += cr.coframe(d, k) * br(a, b, k);

    // N(e_a,e_b) = [e_a,e_b] - [Je_a,Je_b] + J[Je_a,e_b] + J[e_a,Je_b]; J e_a = sgn * e_{ja}
    auto jidx = [&](int a) { return (a % 2 == 0) ? a + 1 : a - 1; };
    auto jsgn = [&](int a) { return (a % 2 == 0) ? 1.0 : -1.0; };
    // (J v)^d = Jm(d, g) v^g
    cr.N = JetTensor({n, n, n}, n, K - 2);
    for (int a = 0; a < h; ++a)
        for (int b = 0; b < h; ++b) {
            int ja = jidx(a), jb = jidx(b);
            double sa = jsgn(a), sb = jsgn(b);
            for (int d = 0; d < n; ++d) {
                Jet v = cr.c(a, b, d) - (sa * sb) * cr.c(ja, jb, d);
                for (int g = 0; g < h; ++g) {
                    double jdg = cr.Jm(d, g);
                    if (jdg == 0.0) continue;
                    v += jdg * (sa * cr.c(ja, b, g) + sb * cr.c(a, jb, g));
                }
                cr.N(a, b, d) = v;
            }
        }
    cr.has_brackets = true;
}

VectorField reeb_field(const PseudoHermitianStructure& s) {
    const int n = s.n();
    VectorField T;
    for (int c = 0; c < n; ++c)
        T.comp.push_back(ScalarField(n, [s, c](const ChartPoint& p, int k) {
            CRPoint cr = build_frame(s, p, k + 1);
            return cr.E(cr.reeb(), c);
        }));
    return T;
}

std::vector<VectorField> adapted_frame(const PseudoHermitianStructure& s) {
    const int n = s.n();
    std::vector<VectorField> fr;
    for (int a = 0; a < n; ++a) {
        VectorField v;
        for (int c = 0; c < n; ++c)
            v.comp.push_back(ScalarField(n, [s, a, c](const ChartPoint& p, int k) {
                return build_frame(s, p, k + 1).E(a, c);
            }));
        fr.push_back(v);
    }
    return fr;
}

VectorField apply_J(const PseudoHermitianStructure& s, const VectorField& X) {
    const int n = s.n();
    VectorField r;
    for (int c = 0; c < n; ++c)
        r.comp.push_back(ScalarField(n, [s, X, c](const ChartPoint& p, int k) {
            CRPoint cr = build_frame(s, p, k + 1);
            return cr.apply_J(X.jets(p, k))[c];
        }));
    return r;
}

namespace {

void require_horizontal(const CRPoint& cr, const JetVec& X, const char* what) {
    double th = 0.0, nrm = 0.0;
    for (int j = 0; j < cr.n; ++j) {
        th += cr.theta[j].value() * X[j].value();
        nrm += X[j].value() * X[j].value();
    }
    if (std::abs(th) > 1e-9 * (1.0 + std::sqrt(nrm)))
        throw ContractViolation(std::string("levi_form: argument ") + what + " is not in H");
}

}  // namespace

ScalarField levi_form(const PseudoHermitianStructure& s, const VectorField& X, const VectorField& Y) {
    const int n = s.n();
    return ScalarField(n, [s, X, Y, n](const ChartPoint& p, int k) {
        CRPoint cr = build_frame(s, p, k + 1);
        JetVec x = X.jets(p, k), y = Y.jets(p, k);
        require_horizontal(cr, x, "X");
        require_horizontal(cr, y, "Y");
        JetVec jy = cr.apply_J(y);
        Jet r(n, k);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (i != j) r += cr.dtheta(i, j) * x[i] * jy[j];
        return r;
    });
}

std::complex<double> levi_form_complex(const PseudoHermitianStructure& s, const ChartPoint& p,
                                       const Eigen::VectorXcd& U, const Eigen::VectorXcd& V) {
    CRPoint cr = build_frame(s, p, 1);
    Eigen::MatrixXd D = cr.dtheta.matrix_values();
    std::complex<double> d = U.transpose() * D.cast<std::complex<double>>() * V.conjugate();
    return std::complex<double>(0.0, -1.0) * d;
}

Eigen::VectorXcd complex_frame_vector(const CRPoint& cr, int alpha) {
    Eigen::VectorXcd z(cr.n);
    const double r = 1.0 / std::sqrt(2.0);
    for (int j = 0; j < cr.n; ++j)
        z(j) = r * std::complex<double>(cr.E(2 * alpha, j).value(), -cr.E(2 * alpha + 1, j).value());
    return z;
}

VectorField nijenhuis(const PseudoHermitianStructure& s, const VectorField& X, const VectorField& Y) {
    VectorField JX = apply_J(s, X), JY = apply_J(s, Y);
    VectorField a = lie_bracket(X, Y) - lie_bracket(JX, JY);
    VectorField b = lie_bracket(JX, Y) + lie_bracket(X, JY);
    return a + apply_J(s, b);
}

std::string to_string(Integrability c) {
    switch (c) {
        case Integrability::degenerate: return "degenerate";
        case Integrability::nondegenerate: return "nondegenerate";
        case Integrability::partially_integrable: return "partially_integrable";
        case Integrability::integrable: return "integrable";
    }
    return "?";
}

IntegrabilityReport classify_integrability(const PseudoHermitianStructure& s, const std::vector<ChartPoint>& pts) {
    const int n = s.n(), h = 2 * s.m;
    IntegrabilityReport r;
    r.min_contact = std::numeric_limits<double>::infinity();
    r.min_levi_eigen = std::numeric_limits<double>::infinity();
    for (const auto& p : pts) {
        auto th = s.theta.jets(p, 1);
        Eigen::MatrixXd dth = Eigen::MatrixXd::Zero(n, n), F(h, n), Jd(h, h);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) dth(i, j) = th[j].partial(i) - th[i].partial(j);
        for (int a = 0; a < h; ++a) {
            for (int j = 0; j < n; ++j) F(a, j) = s.hframe[a].comp[j](p);
            for (int b = 0; b < h; ++b) Jd(a, b) = s.J[a][b](p);
        }
        Eigen::MatrixXd D = F * dth * F.transpose();
        r.min_contact = std::min(r.min_contact, std::abs(D.determinant()));
        r.j_square_defect = std::max(
            r.j_square_defect, (Jd * Jd + Eigen::MatrixXd::Identity(h, h)).cwiseAbs().maxCoeff());
        r.totally_real_defect =
            std::max(r.totally_real_defect, (Jd.transpose() * D * Jd - D).cwiseAbs().maxCoeff());
        Eigen::MatrixXd L = D * Jd;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (L + L.transpose()));
        r.min_levi_eigen = std::min(r.min_levi_eigen, es.eigenvalues().minCoeff());
    }
    if (r.min_contact < 1e-10) {
        r.kind = Integrability::degenerate;
        r.detail = "contact condition fails";
        return r;
    }
    if (r.j_square_defect > 1e-10) {
        r.kind = Integrability::degenerate;
        r.detail = "J^2 != -id on H";
        return r;
    }
    if (r.totally_real_defect > 1e-9) {
        r.kind = Integrability::nondegenerate;
        r.detail = "Levi bracket not totally real";
        return r;
    }
    if (r.min_levi_eigen <= 1e-10) {
        r.kind = Integrability::degenerate;
        r.detail = "Levi form not positive definite";
        return r;
    }
    for (const auto& p : pts) {
        CRPoint cr = build_cr_point(s, p, 2);
        for (int a = 0; a < h; ++a)
            for (int b = 0; b < h; ++b)
                for (int d = 0; d < n; ++d) r.max_nijenhuis = std::max(r.max_nijenhuis, std::abs(cr.N(a, b, d).value()));
    }
    r.kind = r.max_nijenhuis > 1e-9 ? Integrability::partially_integrable : Integrability::integrable;
    return r;
}

PseudoHermitianStructure rescale_structure(const PseudoHermitianStructure& s, const ScalarField& f) {
    PseudoHermitianStructure r = s;
    ScalarField e2f = exp(2.0 * f);
    for (auto& c : r.theta.comp) c = e2f * c;
    return r;
}

}  // namespace crt
