// SPDX-License-Identifier: MIT
#include "crt/webster.hpp"

#include <algorithm>
#include <cmath>

namespace crt {

namespace {

const cplx I1(0.0, 1.0);
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

int jidx(int a) { return (a % 2 == 0) ? a + 1 : a - 1; }
double jsgn(int a) { return (a % 2 == 0) ? 1.0 : -1.0; }

void fill_connection(WebsterPoint& w) {
    CRPoint& cr = w.cr;
    add_brackets(cr);
    const int n = cr.n, h = 2 * cr.m, K = cr.K, T = cr.reeb();
    w.Gamma = JetTensor({n, h, h}, n, K - 2);
    auto tau = [&](int x, int y, int z) { return -0.25 * cr.N(x, y, z); };
    for (int a = 0; a < h; ++a)
        for (int b = 0; b < h; ++b)
            for (int c = 0; c < h; ++c)
                w.Gamma(a, b, c) = 0.5 * (cr.c(a, b, c) - cr.c(a, c, b) - cr.c(b, c, a) + tau(a, b, c) -
                                          tau(a, c, b) - tau(b, c, a));
    for (int b = 0; b < h; ++b)
        for (int c = 0; c < h; ++c) {
            Jet v = cr.c(T, b, c);
            for (int g = 0; g < h; ++g)
                if (cr.Jm(c, g) != 0.0) v -= (jsgn(b) * cr.Jm(c, g)) * cr.c(T, jidx(b), g);
            w.Gamma(T, b, c) = 0.5 * v;
        }

    w.alphaW.assign(n, Jet(n, K - 2));
    for (int a = 0; a < n; ++a)
        for (int al = 0; al < cr.m; ++al) w.alphaW[a] -= w.Gamma(a, 2 * al, 2 * al + 1);

    w.torT = JetTensor({h, h}, n, K - 2);
    for (int b = 0; b < h; ++b)
        for (int c = 0; c < h; ++c) {
            Jet v = cr.c(T, b, c);
            for (int g = 0; g < h; ++g)
                if (cr.Jm(c, g) != 0.0) v += (jsgn(b) * cr.Jm(c, g)) * cr.c(T, jidx(b), g);
            w.torT(b, c) = v;
        }

    w.B = JetTensor({h, h, h}, n, K - 2);
    for (int a = 0; a < h; ++a)
        for (int b = 0; b < h; ++b)
            for (int c = 0; c < h; ++c) w.B(a, b, c) = 0.125 * (cr.N(a, b, c) + cr.N(c, b, a) + cr.N(c, a, b));
}

void fill_curvature(WebsterPoint& w) {
    const CRPoint& cr = w.cr;
    const int n = cr.n, h = 2 * cr.m, K = cr.K;
    if (K < 3) throw std::invalid_argument("webster: curvature needs base order >= 3");
    w.R = JetTensor({n, n, h, h}, n, K - 3);
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            for (int c = 0; c < h; ++c)
                for (int f = 0; f < h; ++f) {
                    Jet v = cr.frame_derivative(a, w.Gamma(b, c, f)) - cr.frame_derivative(b, w.Gamma(a, c, f));
                    for (int d = 0; d < h; ++d) v += w.Gamma(b, c, d) * w.Gamma(a, d, f) - w.Gamma(a, c, d) * w.Gamma(b, d, f);
                    for (int g = 0; g < n; ++g) v -= cr.c(a, b, g) * w.Gamma(g, c, f);
                    w.R(a, b, c, f) = v;
                    w.R(b, a, c, f) = -v;
                }
    w.ric = JetTensor({n, n}, n, K - 3);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int al = 0; al < cr.m; ++al) w.ric(a, b) += w.R(a, b, 2 * al, 2 * al + 1);
    w.scal = Jet(n, K - 3);
    for (int be = 0; be < cr.m; ++be) w.scal -= w.ric(2 * be, 2 * be + 1);
}

}  // namespace

cplx WebsterPoint::omega(int al, int be, int a) const {
    const double g11 = Gamma(a, 2 * al, 2 * be).value(), g12 = Gamma(a, 2 * al, 2 * be + 1).value(),
                 g21 = Gamma(a, 2 * al + 1, 2 * be).value(), g22 = Gamma(a, 2 * al + 1, 2 * be + 1).value();
    return 0.5 * cplx(g11 + g22, g12 - g21);
}

WebsterPoint build_webster_point(CRPoint cr) {
    WebsterPoint w;
    w.cr = std::move(cr);
    fill_connection(w);
    fill_curvature(w);
    return w;
}

WebsterPoint build_webster_point(const PseudoHermitianStructure& s, const ChartPoint& p, int K) {
    return build_webster_point(build_cr_point(s, p, K));
}

void require_partially_integrable(const PseudoHermitianStructure& s, const ChartPoint& p) {
    auto r = classify_integrability(s, {p});
    if (r.kind != Integrability::partially_integrable && r.kind != Integrability::integrable)
        throw ContractViolation("structure is not strictly pseudoconvex and partially integrable (" + r.detail + ")");
}

ScalarField webster_scalar(const PseudoHermitianStructure& s) {
    return ScalarField(s.n(), [s](const ChartPoint& p, int k) { return build_webster_point(s, p, k + 3).scal; });
}

FunctionDerivatives function_derivatives(const WebsterPoint& w, const ScalarField& f, const Eigen::MatrixXd& rotation) {
    const CRPoint& cr = w.cr;
    const int n = cr.n, h = 2 * cr.m, m = cr.m;
    Eigen::MatrixXd Rot = rotation.size() ? rotation : Eigen::MatrixXd::Identity(h, h);
    Jet fj = f.jet(cr.p, cr.K);
    JetVec Ef;
    for (int a = 0; a < n; ++a) Ef.push_back(cr.frame_derivative(a, fj));
    Eigen::MatrixXd Q(h, h);
    Eigen::VectorXd d1(h);
    for (int b = 0; b < h; ++b) d1(b) = Ef[b].value();
    for (int a = 0; a < h; ++a)
        for (int b = 0; b < h; ++b) {
            double v = cr.frame_derivative(a, Ef[b]).value();
            for (int c = 0; c < h; ++c) v -= w.Gamma(a, b, c).value() * d1(c);
            Q(a, b) = v;
        }
    Eigen::MatrixXd Qr = Rot * Q * Rot.transpose();
    Eigen::VectorXd dr = Rot * d1;
    Eigen::MatrixXd E = cr.E.matrix_values();
    Eigen::MatrixXd Er = Rot * E.topRows(h);

    FunctionDerivatives r;
    r.f_o = Ef[cr.reeb()].value();
    r.f_ab.assign(m, std::vector<cplx>(m));
    r.f_ba.assign(m, std::vector<cplx>(m));
    r.delta_f = Eigen::VectorXcd::Zero(n);
    for (int al = 0; al < m; ++al) r.f_alpha.push_back(kInvSqrt2 * cplx(dr(2 * al), -dr(2 * al + 1)));
    for (int al = 0; al < m; ++al)
        for (int be = 0; be < m; ++be) {
            const int A = 2 * al, Ap = 2 * al + 1, Bq = 2 * be, Bp = 2 * be + 1;
            r.f_ab[al][be] = 0.5 * cplx(Qr(Bq, A) + Qr(Bp, Ap), Qr(Bp, A) - Qr(Bq, Ap));
            r.f_ba[be][al] = 0.5 * cplx(Qr(A, Bq) + Qr(Ap, Bp), Qr(A, Bp) - Qr(Ap, Bq));
        }
    for (int al = 0; al < m; ++al) {
        r.sublaplacian -= (r.f_ab[al][al] + r.f_ba[al][al]).real();
        r.delta_f_f += std::norm(r.f_alpha[al]);
        for (int j = 0; j < n; ++j) {
            cplx Z = kInvSqrt2 * cplx(Er(2 * al, j), -Er(2 * al + 1, j));
            r.delta_f(j) += std::conj(r.f_alpha[al]) * Z;
        }
    }
    return r;
}

ScalarField sublaplacian(const PseudoHermitianStructure& s, const ScalarField& f) {
    return ScalarField(s.n(), [s, f](const ChartPoint& p, int k) {
        CRPoint cr = build_cr_point(s, p, k + 2);
        WebsterPoint w;
        w.cr = cr;
        fill_connection(w);
        const int n = cr.n, h = 2 * cr.m;
        Jet fj = f.jet(p, k + 2);
        JetVec Ef;
        for (int a = 0; a < h; ++a) Ef.push_back(cr.frame_derivative(a, fj));
        Jet r(n, k);
        for (int a = 0; a < h; ++a) {
            r -= cr.frame_derivative(a, Ef[a]);
            for (int c = 0; c < h; ++c) r += w.Gamma(a, a, c) * Ef[c];
        }
        return r;
    });
}

std::pair<VectorField, VectorField> delta_op(const PseudoHermitianStructure& s, const ScalarField& f) {
    VectorField re, im;
    const int n = s.n();
    for (int part = 0; part < 2; ++part)
        for (int j = 0; j < n; ++j) {
            ScalarField c(n, [s, f, part, j](const ChartPoint& p, int k) {
                CRPoint cr = build_frame(s, p, k + 1);
                Jet fj = f.jet(p, k + 1);
                Jet r(cr.n, k);
                for (int al = 0; al < cr.m; ++al) {
                    Jet a = cr.frame_derivative(2 * al, fj), b = cr.frame_derivative(2 * al + 1, fj);
                    if (part == 0)
                        r += 0.5 * (a * cr.E(2 * al, j) + b * cr.E(2 * al + 1, j));
                    else
                        r += 0.5 * (b * cr.E(2 * al, j) - a * cr.E(2 * al + 1, j));
                }
                return r;
            });
            (part == 0 ? re : im).comp.push_back(c);
        }
    return {re, im};
}

namespace {

struct Acc {
    Residual r;
    explicit Acc(std::string nm) { r.name = std::move(nm); }
    void add(double lhs, double rhs) {
        r.residual = std::max(r.residual, std::abs(lhs - rhs));
        r.scale = std::max({r.scale, std::abs(lhs), std::abs(rhs)});
    }
};

}  // namespace

std::vector<Residual> connection_properties(const WebsterPoint& w) {
    const CRPoint& cr = w.cr;
    const int h = w.h(), n = w.n(), T = cr.reeb();
    auto G = [&](int a, int b, int c) { return w.Gamma(a, b, c).value(); };
    auto c = [&](int a, int b, int d) { return cr.c(a, b, d).value(); };
    Acc metric("metricity"), torH("torsion_on_H"), torHT("torsion_on_H_reeb_part"), torT("torsion_reeb"),
        nablaJ("nabla_J"), nablaT("nabla_T");
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < h; ++b)
            for (int d = 0; d < h; ++d) {
                metric.add(G(a, b, d), -G(a, d, b));
                double Jnabla = 0.0;
                for (int g = 0; g < h; ++g) Jnabla += cr.Jm(d, g) * G(a, b, g);
                nablaJ.add(jsgn(b) * G(a, jidx(b), d), Jnabla);
            }
    for (int a = 0; a < h; ++a)
        for (int b = 0; b < h; ++b) {
            for (int d = 0; d < h; ++d) torH.add(G(a, b, d) - G(b, a, d) - c(a, b, d), -0.25 * cr.N(a, b, d).value());
            torHT.add(-c(a, b, T), cr.Jm(b, a));  // L(J e_a, e_b)
        }
    for (int b = 0; b < h; ++b)
        for (int d = 0; d < h; ++d) {
            double JTJ = 0.0;
            for (int g = 0; g < h; ++g) JTJ += cr.Jm(d, g) * jsgn(b) * c(T, jidx(b), g);
            torT.add(G(T, b, d) - c(T, b, d), -0.5 * (c(T, b, d) + JTJ));
        }
    // nabla T = 0 holds by construction: the connection has no T-components on T.
    nablaT.add(0.0, 0.0);
    return {metric.r, torH.r, torHT.r, torT.r, nablaJ.r, nablaT.r};
}

std::vector<Residual> curvature_properties(const WebsterPoint& w) {
    const CRPoint& cr = w.cr;
    const int h = w.h(), n = w.n(), m = w.m();
    auto R = [&](int a, int b, int c, int d) { return w.R(a, b, c, d).value(); };
    Acc anti12("R_antisymmetric_12"), anti34("R_antisymmetric_34"), scal_c("scal_complex_trace"),
        scal_im("scal_imaginary_part"), ricd("ric_equals_trace_domega"), bianchi("complex_R_identity");
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < h; ++c)
                for (int d = 0; d < h; ++d) {
                    anti12.add(R(a, b, c, d), -R(b, a, c, d));
                    anti34.add(R(a, b, c, d), -R(a, b, d, c));
                }
    // scal via sum_alpha Ric^W(Z_a, Z_abar), Ric^W = i ric bilinear
    cplx sc = 0.0;
    for (int al = 0; al < m; ++al) {
        const int A = 2 * al, Ap = A + 1;
        cplx zz = 0.5 * cplx(w.ric(A, A).value() + w.ric(Ap, Ap).value(), w.ric(A, Ap).value() - w.ric(Ap, A).value());
        sc += I1 * zz;
    }
    scal_c.add(sc.real(), w.scal.value());
    scal_im.add(sc.imag(), 0.0);

    // ric(a,b) = sum_alpha d gamma_alpha (a,b), gamma_alpha(E_a) = Gamma(a, 2alpha, 2alpha+1)
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            double v = 0.0;
            for (int al = 0; al < m; ++al) {
                v += cr.frame_derivative(a, w.Gamma(b, 2 * al, 2 * al + 1)).value() -
                     cr.frame_derivative(b, w.Gamma(a, 2 * al, 2 * al + 1)).value();
                for (int g = 0; g < n; ++g) v -= cr.c(a, b, g).value() * w.Gamma(g, 2 * al, 2 * al + 1).value();
            }
            ricd.add(w.ric(a, b).value(), v);
        }

    // R(A,Bbar,C,Dbar) = R(C,Bbar,A,Dbar) - L(Tor(Bbar, Tor(C,A)), D) on the complex frame
    using CV = Eigen::VectorXcd;
    auto Z = [&](int al, bool bar) {
        CV z = CV::Zero(n);
        z(2 * al) = kInvSqrt2;
        z(2 * al + 1) = kInvSqrt2 * (bar ? I1 : -I1);
        return z;
    };
    // torsion in frame components for arbitrary frame vectors
    auto Gfull = [&](int a, int b, int d) -> double {
        if (b >= h || d >= h) return 0.0;
        return w.Gamma(a, b, d).value();
    };
    auto tor = [&](const CV& u, const CV& v) {
        CV r = CV::Zero(n);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                cplx uv = u(a) * v(b);
                if (uv == 0.0) continue;
                for (int d = 0; d < n; ++d) r(d) += uv * (Gfull(a, b, d) - Gfull(b, a, d) - cr.c(a, b, d).value());
            }
        return r;
    };
    auto Rc = [&](const CV& x, const CV& y, const CV& z, const CV& v) {
        cplx s = 0.0;
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                cplx xy = x(a) * y(b);
                if (xy == 0.0) continue;
                for (int c = 0; c < h; ++c)
                    for (int d = 0; d < h; ++d) s += xy * z(c) * v(d) * R(a, b, c, d);
            }
        return s;
    };
    auto Lc = [&](const CV& x, const CV& y) {  // bilinear on H parts
        cplx s = 0.0;
        for (int i = 0; i < h; ++i) s += x(i) * y(i);
        return s;
    };
    for (int al = 0; al < m; ++al)
        for (int be = 0; be < m; ++be)
            for (int ga = 0; ga < m; ++ga)
                for (int de = 0; de < m; ++de) {
                    CV A = Z(al, false), Bb = Z(be, true), C = Z(ga, false), Db = Z(de, true);
                    cplx lhs = Rc(A, Bb, C, Db);
                    cplx rhs = Rc(C, Bb, A, Db) - Lc(tor(Bb, tor(C, A)), Db);
                    bianchi.add(lhs.real(), rhs.real());
                    bianchi.add(lhs.imag(), rhs.imag());
                }
    return {anti12.r, anti34.r, scal_c.r, scal_im.r, ricd.r, bianchi.r};
}

std::vector<Residual> torsion_identity_suite(const WebsterPoint& w) {
    const CRPoint& cr = w.cr;
    const int h = w.h(), T = cr.reeb();
    auto N = [&](int a, int b, int c) { return cr.N(a, b, c).value(); };
    auto B = [&](int a, int b, int c) { return w.B(a, b, c).value(); };
    auto Jm = [&](int a, int b) { return cr.Jm(a, b); };
    auto J = [&](int a) { return jidx(a); };
    auto s = [&](int a) { return jsgn(a); };

    Acc id1("trace_NN_Y_vs_NN_minus_NxNy"), id2("trace_B_N_equals_quarter_NxNy"),
        id3("trace_BxBy_equals_eighth_NN"), id4("trace_Bx_By_swapped_equals_sixteenth_NN"),
        id5("double_trace_NN_equals_half_norm"), b_anti("B_antisymmetric_23"), b_j1("B_equals_plus_B_JX_JZ_Y"),
        b_j2("B_JX_Y_JZ"), b_j3("B_X_JY_JZ"), bv_j1("JB_equals_minus_B_JX"), bv_j2("JB_equals_minus_B_JY"),
        b_tr("trace_scriptB"), b_tr13("trace13_B"), b_tr23("trace23_B"), b_skew("B_skew_part_quarter_N"),
        n_j1("JN_equals_minus_N_JX"), n_j2("JN_equals_minus_N_JY"), n_tr("trace_L_N"),
        t_j("Tor_T_JX_equals_minus_J_Tor_T_X"), t_sym("scriptT_symmetric"), t_br("scriptT_bracket_formula"),
        t_jj("scriptT_X_JY_equals_JX_Y"), t_tr("trace_scriptT"), t_trj("trace_scriptT_J");

    for (int x = 0; x < h; ++x)
        for (int y = 0; y < h; ++y) {
            double l1 = 0, r1a = 0, r1b = 0, l2 = 0, l3 = 0, l4 = 0;
            for (int i = 0; i < h; ++i)
                for (int g = 0; g < h; ++g) {
                    l1 += N(x, i, g) * N(g, y, i);
                    r1a += N(x, i, g) * N(g, i, y);
                    r1b += N(x, i, g) * N(y, i, g);
                    l2 += N(x, i, g) * B(g, i, y);
                    l3 += B(x, i, g) * B(y, i, g);
                    l4 += B(x, i, g) * B(i, y, g);
                }
            id1.add(l1, r1a - r1b);
            id2.add(l2, 0.25 * r1b);
            id3.add(l3, 0.125 * r1a);
            id4.add(l4, r1a / 16.0);
        }
    {
        double l = 0, r = 0;
        for (int i = 0; i < h; ++i)
            for (int j = 0; j < h; ++j)
                for (int g = 0; g < h; ++g) {
                    l += N(i, j, g) * N(g, j, i);
                    r += 0.5 * N(i, j, g) * N(i, j, g);
                }
        id5.add(l, r);
    }
    for (int x = 0; x < h; ++x) {
        double tr13 = 0, tr23 = 0, trN = 0;
        for (int i = 0; i < h; ++i) {
            tr13 += B(i, x, i);
            tr23 += B(x, i, i);
            trN += N(x, i, i);
        }
        b_tr13.add(tr13, 0.0);
        b_tr23.add(tr23, 0.0);
        n_tr.add(trN, 0.0);
        for (int y = 0; y < h; ++y)
            for (int z = 0; z < h; ++z) {
                b_anti.add(B(x, y, z), -B(x, z, y));
                b_j1.add(B(x, y, z), s(x) * s(z) * B(J(x), J(z), y));
                b_j2.add(B(x, y, z), -s(x) * s(z) * B(J(x), y, J(z)));
                b_j3.add(B(x, y, z), -s(y) * s(z) * B(x, J(y), J(z)));
                double JB = 0.0, JN = 0.0;
                for (int g = 0; g < h; ++g) {
                    JB += Jm(z, g) * B(x, y, g);
                    JN += Jm(z, g) * N(x, y, g);
                }
                bv_j1.add(JB, -s(x) * B(J(x), y, z));
                bv_j2.add(JB, -s(y) * B(x, J(y), z));
                n_j1.add(JN, -s(x) * N(J(x), y, z));
                n_j2.add(JN, -s(y) * N(x, J(y), z));
                b_skew.add(B(x, y, z) - B(y, x, z), 0.25 * N(x, y, z));
            }
    }
    for (int z = 0; z < h; ++z) {
        double tr = 0.0;
        for (int i = 0; i < h; ++i) tr += B(i, i, z);
        b_tr.add(tr, 0.0);
    }
    auto tT = [&](int b, int c) { return w.torT(b, c).value(); };
    // Tor(T, e_b) = -(1/2) script T(b, .)^sharp
    for (int x = 0; x < h; ++x)
        for (int d = 0; d < h; ++d) {
            double lhs = -0.5 * s(x) * tT(J(x), d);
            double rhs = 0.0;
            for (int g = 0; g < h; ++g) rhs -= Jm(d, g) * (-0.5 * tT(x, g));
            t_j.add(lhs, rhs);
        }
    double tr = 0.0, trj = 0.0;
    for (int x = 0; x < h; ++x) {
        tr += tT(x, x);
        trj += s(x) * tT(x, J(x));
        for (int y = 0; y < h; ++y) {
            t_sym.add(tT(x, y), tT(y, x));
            t_br.add(tT(x, y), cr.c(T, x, y).value() + cr.c(T, y, x).value());
            t_jj.add(s(y) * tT(x, J(y)), s(x) * tT(J(x), y));
        }
    }
    t_tr.add(tr, 0.0);
    t_trj.add(trj, 0.0);
    return {id1.r, id2.r, id3.r, id4.r, id5.r, b_anti.r, b_j1.r, b_j2.r, b_j3.r, bv_j1.r, bv_j2.r, b_tr.r,
            b_tr13.r, b_tr23.r, b_skew.r, n_j1.r, n_j2.r, n_tr.r, t_j.r, t_sym.r, t_br.r, t_jj.r, t_tr.r, t_trj.r};
}

RescalingReport rescaling_check(const PseudoHermitianStructure& s, const ScalarField& f, const ChartPoint& p) {
    const int K = 3;
    WebsterPoint w = build_webster_point(s, p, K);
    WebsterPoint wt = build_webster_point(rescale_structure(s, f), p, K);
    const int n = w.n(), m = w.m();
    FunctionDerivatives fd = function_derivatives(w, f);
    const double fv = f(p);

    RescalingReport r;
    for (int al = 0; al < m; ++al)
        for (int be = 0; be < m; ++be)
            for (int j = 0; j < n; ++j) {
                cplx lhs = 0.0, om = 0.0;
                for (int a = 0; a < n; ++a) {
                    lhs += wt.cr.coframe(a, j).value() * wt.omega(al, be, a);
                    om += w.cr.coframe(a, j).value() * w.omega(al, be, a);
                }
                auto theta_up = [&](int g) {
                    return kInvSqrt2 * cplx(w.cr.coframe(2 * g, j).value(), w.cr.coframe(2 * g + 1, j).value());
                };
                const double thj = w.cr.theta[j].value();
                cplx rhs = om + 2.0 * (fd.f_alpha[al] * theta_up(be) - std::conj(fd.f_alpha[be]) * std::conj(theta_up(al)));
                if (al == be)
                    for (int g = 0; g < m; ++g)
                        rhs += fd.f_alpha[g] * theta_up(g) - std::conj(fd.f_alpha[g]) * std::conj(theta_up(g));
                cplx bracket = fd.f_ba[be][al] + fd.f_ab[al][be] + 4.0 * fd.f_alpha[al] * std::conj(fd.f_alpha[be]);
                if (al == be) bracket += 4.0 * fd.delta_f_f;
                rhs += I1 * thj * bracket;
                r.omega_residual = std::max(r.omega_residual, std::abs(lhs - rhs) / (1.0 + std::abs(rhs)));
                r.omega_scale = std::max(r.omega_scale, std::abs(rhs));
            }
    r.scal_from_scratch = wt.scal.value();
    r.scal_closed_form = std::exp(-2.0 * fv) *
                         (w.scal.value() + 2.0 * (m + 1) * fd.sublaplacian - 4.0 * m * (m + 1) * fd.delta_f_f);
    r.scal_residual = std::abs(r.scal_from_scratch - r.scal_closed_form) / (1.0 + std::abs(r.scal_closed_form));
    return r;
}

}  // namespace crt
