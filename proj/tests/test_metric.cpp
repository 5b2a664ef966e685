// SPDX-License-Identifier: MIT
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "crt/examples.hpp"
#include "crt/metric.hpp"

using namespace crt;

namespace {

using Formula = std::function<Jet(const std::vector<Jet>&)>;

CoordinateMetric from_formulas(int D, const std::vector<std::vector<Formula>>& f) {
    CoordinateMetric g;
    g.dim = D;
    g.g.assign(D, std::vector<ScalarField>(D));
    for (int i = 0; i < D; ++i)
        for (int j = 0; j < D; ++j) g.g[i][j] = ScalarField::from_coords(D, f[i][j]);
    return g;
}

// e^{2u} eta for eta = diag(sig)
CoordinateMetric conformally_flat(const std::vector<double>& sig, Formula u) {
    const int D = static_cast<int>(sig.size());
    std::vector<std::vector<Formula>> f(D, std::vector<Formula>(D));
    for (int i = 0; i < D; ++i)
        for (int j = 0; j < D; ++j) {
            const double s = (i == j) ? sig[i] : 0.0;
            f[i][j] = [u, s](const std::vector<Jet>& x) { return s * exp(2.0 * u(x)); };
        }
    return from_formulas(D, f);
}

JetVec form_jets(const std::vector<Formula>& w, const ChartPoint& p, int K) {
    const int D = static_cast<int>(w.size());
    JetVec r;
    for (const auto& c : w) r.push_back(ScalarField::from_coords(D, c).jet(p, K));
    return r;
}

}  // namespace

TEST_CASE("flat metrics have no curvature") {
    std::vector<double> sig = {-1, 1, 1, 1};
    auto g = conformally_flat(sig, [](const std::vector<Jet>& x) { return 0.0 * x[0]; });
    auto mg = metric_geometry(g, ChartPoint{{0.1, 0.2, -0.3, 0.4}}, 3);
    for (const auto& j : mg.Rm.data()) CHECK(std::abs(j.value()) < 1e-14);
    CHECK(std::abs(mg.scal.value()) < 1e-14);
}

TEST_CASE("round 2-sphere") {
    auto g = from_formulas(2, {{[](const std::vector<Jet>& x) { return 1.0 + 0.0 * x[0]; },
                                [](const std::vector<Jet>& x) { return 0.0 * x[0]; }},
                               {[](const std::vector<Jet>& x) { return 0.0 * x[0]; },
                                [](const std::vector<Jet>& x) { return sin(x[0]) * sin(x[0]); }}});
    for (double th : {0.4, 1.1, 2.0}) {
        ChartPoint p{{th, 0.3}};
        auto mg = metric_geometry(g, p, 2);
        CHECK(mg.scal.value() == doctest::Approx(2.0));
        CHECK(mg.Ric(1, 1).value() == doctest::Approx(std::sin(th) * std::sin(th)));
        CHECK(mg.Rm(0, 1, 1, 0).value() == doctest::Approx(std::sin(th) * std::sin(th)));
        // d/dphi is Killing, d/dtheta is not
        JetVec phi = {Jet(2, 2, 0.0), Jet(2, 2, 1.0)}, tht = {Jet(2, 2, 1.0), Jet(2, 2, 0.0)};
        CHECK(killing_defect(g.jet(p, 2), phi) < 1e-14);
        CHECK(killing_defect(g.jet(p, 2), tht) > 1e-2);
    }
}

TEST_CASE("conformally flat scalar curvature, Riemannian and Lorentzian") {
    // scal(e^{2u} eta) = e^{-2u}(-2(D-1) box u - (D-2)(D-1) |du|^2), box and |.| taken with eta
    Formula u = [](const std::vector<Jet>& x) { return 0.3 * x[0] * x[1] + 0.2 * sin(x[2]) - 0.1 * x[3] * x[3] + 0.15 * x[0]; };
    for (auto sig : {std::vector<double>{1, 1, 1, 1}, std::vector<double>{-1, 1, 1, 1}, std::vector<double>{1, -1, 1, 1, 1}}) {
        const int D = static_cast<int>(sig.size());
        auto g = conformally_flat(sig, u);
        for (const auto& p : sample_points(D, 4, 7, -0.5, 0.5)) {
            Jet uj = ScalarField::from_coords(D, u).jet(p, 2);
            double box = 0.0, du2 = 0.0;
            for (int i = 0; i < D; ++i) {
                box += uj.partial(i, i) / sig[i];
                du2 += uj.partial(i) * uj.partial(i) / sig[i];
            }
            double expect = std::exp(-2.0 * uj.value()) * (-2.0 * (D - 1) * box - (D - 2.0) * (D - 1) * du2);
            auto mg = metric_geometry(g, p, 2);
            CHECK(mg.scal.value() == doctest::Approx(expect).epsilon(1e-12));
            for (int a = 0; a < D; ++a)
                for (int b = 0; b < D; ++b) CHECK(std::abs(mg.Ric(a, b).value() - mg.Ric(b, a).value()) < 1e-12);
        }
    }
}

TEST_CASE("Hodge Laplacian on 1-forms") {
    // flat Euclidean: Delta w = -sum_i d_i^2 w_j
    auto flat = conformally_flat({1, 1, 1}, [](const std::vector<Jet>& x) { return 0.0 * x[0]; });
    std::vector<Formula> w = {[](const std::vector<Jet>& x) { return x[1] * x[1] * x[2]; },
                              [](const std::vector<Jet>& x) { return sin(x[0]) * x[2]; },
                              [](const std::vector<Jet>& x) { return x[0] * x[0] + x[1] * x[2]; }};
    ChartPoint p{{0.3, -0.2, 0.45}};
    auto lap = hodge_laplacian_1form(flat.jet(p, 2), form_jets(w, p, 2));
    CHECK(lap(0) == doctest::Approx(-2.0 * 0.45));
    CHECK(lap(1) == doctest::Approx(std::sin(0.3) * 0.45));
    CHECK(lap(2) == doctest::Approx(-2.0));

    // Weitzenboeck: Delta w = -tr nabla^2 w + Ric(w^sharp), on curved metrics of both signatures
    Formula u = [](const std::vector<Jet>& x) { return 0.2 * x[0] * x[2] + 0.1 * sin(x[1]) + 0.25 * x[3] * x[0]; };
    std::vector<Formula> w4 = {[](const std::vector<Jet>& x) { return x[1] * x[3]; },
                               [](const std::vector<Jet>& x) { return cos(x[0]) + x[2] * x[2]; },
                               [](const std::vector<Jet>& x) { return x[0] * x[1] * x[3]; },
                               [](const std::vector<Jet>& x) { return 0.5 * x[2] + x[0] * x[0]; }};
    for (auto sig : {std::vector<double>{1, 1, 1, 1}, std::vector<double>{-1, 1, 1, 1}}) {
        auto g = conformally_flat(sig, u);
        for (const auto& q : sample_points(4, 3, 11, -0.5, 0.5)) {
            JetTensor gj = g.jet(q, 2);
            JetVec wj = form_jets(w4, q, 2);
            auto mg = metric_geometry(gj);
            Eigen::VectorXd wv(4);
            for (int i = 0; i < 4; ++i) wv(i) = wj[i].value();
            Eigen::VectorXd ric_w = mg.Ric.matrix_values() * (mg.inverse_metric() * wv);
            Eigen::VectorXd lhs = hodge_laplacian_1form(gj, wj);
            Eigen::VectorXd rhs = -bochner_trace_1form(gj, wj) + ric_w;
            CHECK((lhs - rhs).norm() < 1e-11 * (1.0 + rhs.norm()));
            CHECK(lhs.norm() > 1e-2);
        }
    }
}

TEST_CASE("singular metric is refused") {
    auto g = conformally_flat({1, 0, 1}, [](const std::vector<Jet>& x) { return 0.0 * x[0]; });
    CHECK_THROWS_AS(metric_geometry(g, ChartPoint{{0.0, 0.0, 0.0}}, 2), DegenerateError);
}
