// SPDX-License-Identifier: MIT
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "crt/cr.hpp"
#include "crt/examples.hpp"

using namespace crt;

namespace {

std::vector<ChartPoint> pts(int n, int count = 20, std::uint64_t seed = 42) {
    return sample_points(n, count, seed, -0.5, 0.5);
}

// L^C(U, conj V) for U = Ur + i Ui, V = Vr + i Vi
std::complex<double> levi_c(const PseudoHermitianStructure& s, const ChartPoint& p, const VectorField& Ur,
                            const VectorField& Ui, const VectorField& Vr, const VectorField& Vi) {
    auto L = [&](const VectorField& a, const VectorField& b) { return levi_form(s, a, b)(p); };
    return {L(Ur, Vr) + L(Ui, Vi), L(Ui, Vr) - L(Ur, Vi)};
}

double max_abs(const std::vector<double>& v) {
    double r = 0.0;
    for (double x : v) r = std::max(r, std::abs(x));
    return r;
}

}  // namespace

TEST_CASE("Reeb field") {
    auto H = heisenberg(2);
    auto T = reeb_field(H);
    for (const auto& p : pts(5, 5)) {
        auto v = T.at(p);
        for (int j = 0; j < 4; ++j) CHECK(std::abs(v[j]) < 1e-14);
        CHECK(v[4] == doctest::Approx(1.0));
    }

    // constant multiple: T / c
    auto Hc = rescale_structure(H, ScalarField::constant(5, 0.5 * std::log(3.0)));
    auto Tc = reeb_field(Hc);
    for (const auto& p : pts(5, 5)) CHECK(Tc.at(p)[4] == doctest::Approx(1.0 / 3.0));

    // rescaled: defining equations, and the closed form e^{-2f}(T + 4 Im(delta f))
    ScalarField f = default_rescaling(2);
    auto Ht = rescale_structure(H, f);
    auto Tt = reeb_field(Ht);
    auto frame = adapted_frame(H);
    auto th = Ht.theta;
    auto dth = exterior_derivative(th);
    for (const auto& p : pts(5, 10)) {
        auto v = Tt.at(p);
        double thT = 0.0;
        for (int j = 0; j < 5; ++j) thT += th.comp[j](p) * v[j];
        CHECK(thT == doctest::Approx(1.0).epsilon(1e-12));
        for (int k = 0; k < 5; ++k) {
            double s = 0.0;
            for (int j = 0; j < 5; ++j) s += dth.at(p, j, k) * v[j];
            CHECK(std::abs(s) < 1e-12);
        }
        // delta f = sum f_abar Z_a; Im(delta f) = 1/2 sum (e_{2a} f e_{2a-1} - e_{2a-1} f e_{2a})
        std::vector<double> expect = frame[4].at(p);
        for (int a = 0; a < 2; ++a) {
            double f1 = directional(frame[2 * a], f)(p), f2 = directional(frame[2 * a + 1], f)(p);
            auto e1 = frame[2 * a].at(p), e2 = frame[2 * a + 1].at(p);
            for (int j = 0; j < 5; ++j) expect[j] += 2.0 * (f2 * e1[j] - f1 * e2[j]);
        }
        double w = std::exp(-2.0 * f(p));
        for (int j = 0; j < 5; ++j) CHECK(std::abs(v[j] - w * expect[j]) < 1e-12);
    }
}

TEST_CASE("Levi form on Heisenberg and J-invariance") {
    auto H = heisenberg(1);
    auto& X1 = H.hframe[0];
    auto& Y1 = H.hframe[1];
    ChartPoint p{{0.2, -0.1, 0.3}};
    CHECK(levi_form(H, X1, X1)(p) == doctest::Approx(1.0));
    CHECK(std::abs(levi_form(H, X1, Y1)(p)) < 1e-15);
    CHECK_THROWS_AS(levi_form(H, VectorField::coordinate(3, 2), X1)(p), ContractViolation);

    auto D = deformed_heisenberg(2, 0.3);
    // constant-coefficient combinations of the designated frame
    auto comb = [&](std::vector<double> w) {
        VectorField r = VectorField::zero(5);
        for (int a = 0; a < 4; ++a) r = r + ScalarField::constant(5, w[a]) * D.hframe[a];
        return r;
    };
    VectorField A = comb({0.7, -0.2, 0.4, 1.1}), B = comb({-0.3, 0.9, 0.5, 0.2});
    VectorField JA = apply_J(D, A), JB = apply_J(D, B);
    for (const auto& q : pts(5)) {
        double lab = levi_form(D, A, B)(q);
        CHECK(levi_form(D, JA, JB)(q) == doctest::Approx(lab).epsilon(1e-12));
        CHECK(std::abs(levi_form(D, JA, B)(q) + levi_form(D, A, JB)(q)) < 1e-12);
        CHECK(levi_form(D, B, A)(q) == doctest::Approx(lab).epsilon(1e-12));
        CHECK(levi_form(D, A, A)(q) > 0.0);
    }
}

TEST_CASE("adapted frame invariants") {
    for (auto s : {heisenberg(1), deformed_heisenberg(2, 0.3), rescale_structure(heisenberg(2), default_rescaling(2))}) {
        const int n = s.n(), h = 2 * s.m;
        for (const auto& p : pts(n)) {
            CRPoint cr = build_frame(s, p, 2);
            Eigen::MatrixXd D = cr.dtheta.matrix_values(), E = cr.E.matrix_values();
            Eigen::VectorXd th(n);
            for (int j = 0; j < n; ++j) th(j) = cr.theta[j].value();
            for (int i = 0; i < h; ++i) {
                CHECK(std::abs(th.dot(E.row(i))) < 1e-12);
                Eigen::VectorXd Jei = E.row(i % 2 == 0 ? i + 1 : i - 1) * (i % 2 == 0 ? 1.0 : -1.0);
                for (int j = 0; j < h; ++j) {
                    Eigen::VectorXd Jej = E.row(j % 2 == 0 ? j + 1 : j - 1) * (j % 2 == 0 ? 1.0 : -1.0);
                    double L = E.row(i) * D * Jej;
                    CHECK(std::abs(L - (i == j ? 1.0 : 0.0)) < 1e-10);
                }
                (void)Jei;
            }
            CHECK(th.dot(E.row(h)) == doctest::Approx(1.0));
            Eigen::VectorXd dT = E.row(h) * D;
            CHECK(dT.cwiseAbs().maxCoeff() < 1e-12);
        }
    }
}

TEST_CASE("Reeb flow preserves H and the complex Levi form") {
    auto D = deformed_heisenberg(2, 0.3);
    auto fr = adapted_frame(D);
    auto T = fr[4];
    for (const auto& p : pts(5, 5)) {
        for (int a = 0; a < 4; ++a) {
            auto br = lie_bracket(T, fr[a]).at(p);
            double th = 0.0;
            for (int j = 0; j < 5; ++j) th += D.theta.comp[j](p) * br[j];
            CHECK(std::abs(th) < 1e-9);
        }
        // U = Z_1, V = Z_2 (unnormalised): U = e1 - i e2, V = e3 - i e4
        const VectorField &e1 = fr[0], &e2 = fr[1], &e3 = fr[2], &e4 = fr[3];
        VectorField m2 = ScalarField::constant(5, -1.0) * e2, m4 = ScalarField::constant(5, -1.0) * e4;
        for (auto [Ur, Ui, Vr, Vi] : {std::tuple{e1, m2, e3, m4}, std::tuple{e1, m2, e1, m2}}) {
            auto lhs_field = directional(T, levi_form(D, Ur, Vr) + levi_form(D, Ui, Vi));
            auto lhs_im = directional(T, levi_form(D, Ui, Vr) - levi_form(D, Ur, Vi));
            std::complex<double> lhs(lhs_field(p), lhs_im(p));
            auto rhs = levi_c(D, p, lie_bracket(T, Ur), lie_bracket(T, Ui), Vr, Vi) +
                       levi_c(D, p, Ur, Ui, lie_bracket(T, Vr), lie_bracket(T, Vi));
            CHECK(std::abs(lhs - rhs) < 1e-9);
        }
    }
}

TEST_CASE("complex Levi form") {
    auto D = deformed_heisenberg(2, 0.3);
    for (const auto& p : pts(5, 5)) {
        CRPoint cr = build_frame(D, p, 1);
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) {
                auto v = levi_form_complex(D, p, complex_frame_vector(cr, a), complex_frame_vector(cr, b));
                CHECK(std::abs(v - std::complex<double>(a == b ? 1.0 : 0.0, 0.0)) < 1e-12);
            }
    }
}

TEST_CASE("Nijenhuis tensor") {
    auto H = heisenberg(2);
    auto D = deformed_heisenberg(2, 0.3);
    for (const auto& p : pts(5, 5)) {
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) CHECK(max_abs(nijenhuis(H, H.hframe[a], H.hframe[b]).at(p)) < 1e-12);
    }
    const auto& F = D.hframe;
    double biggest = 0.0;
    ScalarField g = ScalarField::from_coords(5, [](const std::vector<Jet>& x) { return 1.0 + x[0] * x[4] + sin(x[1]); });
    for (const auto& p : pts(5, 2)) {
        CRPoint cr = build_cr_point(D, p, 2);
        Eigen::MatrixXd Cinv = cr.C.matrix_values().inverse();  // F_a = sum_k Cinv(a,k) e_k
        Eigen::MatrixXd E = cr.E.matrix_values();
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) {
                auto Nf = nijenhuis(D, F[a], F[b]).at(p);
                for (int j = 0; j < 5; ++j) {
                    double v = 0.0;
                    for (int k = 0; k < 4; ++k)
                        for (int l = 0; l < 4; ++l)
                            for (int d = 0; d < 5; ++d) v += Cinv(a, k) * Cinv(b, l) * cr.N(k, l, d).value() * E(d, j);
                    CHECK(std::abs(v - Nf[j]) < 1e-9);
                }
            }
        // N(e_1, e_3) in the adapted frame
        double n13 = 0.0;
        for (int d = 0; d < 5; ++d) n13 = std::max(n13, std::abs(cr.N(0, 2, d).value()));
        biggest = std::max(biggest, n13);
        CHECK(max_abs(nijenhuis(D, F[1], F[1]).at(p)) < 1e-12);
        // J N(X,Y) = -N(JX,Y)
        auto lhs = apply_J(D, nijenhuis(D, F[0], F[2])).at(p);
        auto rhs = nijenhuis(D, apply_J(D, F[0]), F[2]).at(p);
        for (int j = 0; j < 5; ++j) CHECK(std::abs(lhs[j] + rhs[j]) < 1e-9);
        // tensoriality
        auto gN = nijenhuis(D, g * F[0], F[3]).at(p);
        auto N = nijenhuis(D, F[0], F[3]).at(p);
        for (int j = 0; j < 5; ++j) CHECK(std::abs(gN[j] - g(p) * N[j]) < 1e-9);
    }
    CHECK(biggest > 1e-3);
}

TEST_CASE("integrability classification") {
    auto P = pts(5, 20);
    CHECK(classify_integrability(heisenberg(1), pts(3)).kind == Integrability::integrable);
    CHECK(classify_integrability(heisenberg(2), P).kind == Integrability::integrable);
    auto rd = classify_integrability(deformed_heisenberg(2, 0.3), P);
    CHECK(rd.kind == Integrability::partially_integrable);
    CHECK(rd.totally_real_defect < 1e-12);
    CHECK(rd.max_nijenhuis > 1e-3);
    CHECK(classify_integrability(incompatible_heisenberg(2), P).kind == Integrability::nondegenerate);
    CHECK(classify_integrability(deformed_heisenberg(2, 0.0), P).kind == Integrability::integrable);

    // eps = 0 gives exactly the Heisenberg J
    auto D0 = deformed_heisenberg(2, 0.0);
    auto H = heisenberg(2);
    for (const auto& p : P)
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) CHECK(D0.J[a][b](p) == H.J[a][b](p));
}

TEST_CASE("rescaling the contact form") {
    auto H = heisenberg(2);
    auto P = pts(5, 10);
    auto H0 = rescale_structure(H, ScalarField::constant(5, 0.0));
    auto Hc = rescale_structure(H, ScalarField::constant(5, 0.3));
    auto Hf = rescale_structure(H, default_rescaling(2));
    for (const auto& p : P) {
        for (int j = 0; j < 5; ++j) CHECK(H0.theta.comp[j](p) == H.theta.comp[j](p));
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b)
                CHECK(levi_form(Hc, H.hframe[a], H.hframe[b])(p) ==
                      doctest::Approx(std::exp(0.6) * levi_form(H, H.hframe[a], H.hframe[b])(p)).epsilon(1e-13));
    }
    auto r = classify_integrability(Hf, P);
    CHECK(r.kind == Integrability::integrable);
    CHECK(r.min_levi_eigen > 0.0);
    CHECK(r.min_contact > 1e-3);
}
