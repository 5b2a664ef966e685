// SPDX-License-Identifier: MIT
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "crt/so_algebra.hpp"

using namespace crt::so;

namespace {

double maxabs(const MatrixXd& M) { return M.cwiseAbs().maxCoeff(); }

VectorXd rvec(int k, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    VectorXd v(k);
    for (int i = 0; i < k; ++i) v(i) = g(rng);
    return v;
}

MatrixXd random_so1n(int n, std::mt19937_64& rng) {
    // A with A^T Jm + Jm A = 0: A = Jm S with S skew
    MatrixXd S(n + 1, n + 1);
    std::normal_distribution<double> g;
    for (int i = 0; i < n + 1; ++i)
        for (int j = 0; j < n + 1; ++j) S(i, j) = g(rng);
    S = S - S.transpose().eval();
    return jmat(n) * S;
}

}  // namespace

TEST_CASE("matrix realisation lies in so(2,n+1) and round-trips") {
    std::mt19937_64 rng(1);
    for (int n : {3, 5}) {
        GradedTriple t{rvec(n + 1, rng), random_so1n(n, rng), 0.7, rvec(n + 1, rng).transpose()};
        MatrixXd M = to_matrix(t);
        CHECK(so_defect(M) < 1e-12);
        GradedTriple u = from_matrix(M);
        CHECK(maxabs(u.m - t.m) == 0.0);
        CHECK(maxabs(u.A - t.A) == 0.0);
        CHECK(u.a == t.a);
        CHECK(maxabs(u.l - t.l) == 0.0);
        CHECK(so_defect(random_element(n, rng)) < 1e-12);
    }
}

TEST_CASE("graded bracket formulas") {
    std::mt19937_64 rng(2);
    const int n = 5;
    MatrixXd Jm = jmat(n);
    VectorXd m = rvec(n + 1, rng);
    RowVectorXd l = rvec(n + 1, rng).transpose();
    MatrixXd A = random_so1n(n, rng);
    double a = -0.4;

    // [m, l] = (ml - Jm (ml)^T Jm, lm)
    MatrixXd ml = m * l;
    MatrixXd expect = zero_element(ml - Jm * ml.transpose() * Jm, (l * m)(0, 0));
    CHECK(maxabs(bracket(minus_element(m), plus_element(l)) - expect) < 1e-12);

    // [(A, a), m] = Am + am
    CHECK(maxabs(bracket(zero_element(A, a), minus_element(m)) - minus_element(A * m + a * m)) < 1e-12);

    MatrixXd X = random_element(n, rng);
    CHECK(maxabs(bracket(X, X)) == 0.0);
}

TEST_CASE("grade projections") {
    std::mt19937_64 rng(3);
    const int n = 3;
    MatrixXd mm = minus_element(rvec(n + 1, rng));
    CHECK(maxabs(grade_project(mm, -1) - mm) == 0.0);
    CHECK(maxabs(grade_project(mm, 0)) == 0.0);
    CHECK(maxabs(grade_project(mm, 1)) == 0.0);
    MatrixXd z = zero_element(random_so1n(n, rng), 0.3), p = plus_element(rvec(n + 1, rng).transpose());
    MatrixXd s = mm + z + p;
    CHECK(maxabs(grade_project(s, -1) - mm) == 0.0);
    CHECK(maxabs(grade_project(s, 0) - z) == 0.0);
    CHECK(maxabs(grade_project(s, 1) - p) == 0.0);
    for (int t = 0; t < 10; ++t) {
        MatrixXd X = random_element(n, rng);
        CHECK(maxabs(grade_project(X, -1) + grade_project(X, 0) + grade_project(X, 1) - X) <= 1e-14);
    }
    CHECK_THROWS_AS(grade_project(s, 2), std::invalid_argument);
}

TEST_CASE("Jacobi identity and grading compatibility") {
    std::mt19937_64 rng(4);
    const int n = 5;
    for (int t = 0; t < 50; ++t) {
        MatrixXd X = random_element(n, rng), Y = random_element(n, rng), Z = random_element(n, rng);
        MatrixXd jac = bracket(X, bracket(Y, Z)) + bracket(Y, bracket(Z, X)) + bracket(Z, bracket(X, Y));
        CHECK(maxabs(jac) <= 1e-10);
        CHECK(so_defect(bracket(X, Y)) < 1e-11);
        for (int j = -1; j <= 1; ++j)
            for (int k = -1; k <= 1; ++k) {
                MatrixXd b = bracket(grade_project(X, j), grade_project(Y, k));
                for (int g = -1; g <= 1; ++g)
                    if (g != j + k) CHECK(maxabs(grade_project(b, g)) <= 1e-12);
            }
    }
}

TEST_CASE("dual bases under the trace pairing") {
    const int n = 3;
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j) CHECK(killing_pairing(xi(n, i), eta(n, j)) == doctest::Approx(i == j ? 1.0 : 0.0));
}

TEST_CASE("codifferential") {
    std::mt19937_64 rng(5);
    const int n = 3, N = n + 1;
    MatrixXd A = random_element(n, rng);
    Cochain single{n, 1, std::vector<MatrixXd>(N, MatrixXd::Zero(n + 3, n + 3))};
    single.values[0] = A;
    CHECK(maxabs(codifferential(single).values[0] - bracket(eta(n, 0), A)) == 0.0);

    Cochain zero{n, 1, std::vector<MatrixXd>(N, MatrixXd::Zero(n + 3, n + 3))};
    CHECK(maxabs(codifferential(zero).values[0]) == 0.0);

    for (int t = 0; t < 10; ++t) {
        Cochain psi{n, 2, std::vector<MatrixXd>(N * N, MatrixXd::Zero(n + 3, n + 3))};
        for (int i = 0; i < N; ++i)
            for (int j = i + 1; j < N; ++j) {
                MatrixXd X = random_element(n, rng);
                psi.values[i * N + j] = X;
                psi.values[j * N + i] = -X;
            }
        CHECK(antisymmetry_defect(psi) == 0.0);
        Cochain d1 = codifferential(psi);
        CHECK(d1.degree == 1);
        CHECK(maxabs(codifferential(d1).values[0]) <= 1e-12);
    }
    Cochain bad{n, 3, {}};
    CHECK_THROWS_AS(codifferential(bad), std::invalid_argument);
}

TEST_CASE("complex elements: canonical seed and conjugates") {
    for (int n : {3, 5}) {
        MatrixXd b0 = canonical_complex_element(n);
        CHECK(so_defect(b0) < 1e-14);
        auto r0 = analyze_complex_element(b0);
        CHECK(r0.square_defect < 1e-14);
        CHECK(r0.worst() < 1e-12);
        std::mt19937_64 rng(6 + n);
        for (int t = 0; t < 50; ++t) {
            MatrixXd b = conjugate_by_exp(b0, 0.3 * random_element(n, rng));
            auto r = analyze_complex_element(b);
            CHECK(r.worst() <= 1e-9);
            CHECK(r.m_norm >= 1e-3);
            CHECK(r.l_norm >= 1e-3);
        }
    }
    MatrixXd bad = canonical_complex_element(3);
    bad(1, 0) += 0.1;
    CHECK_THROWS_AS(analyze_complex_element(bad), PreconditionError);
}
