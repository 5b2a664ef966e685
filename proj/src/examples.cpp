// SPDX-License-Identifier: MIT
#include "crt/examples.hpp"

#include <stdexcept>

namespace crt {

namespace {

ScalarField coord(int n, int i) { return ScalarField::coordinate(n, i); }
ScalarField cst(int n, double c) { return ScalarField::constant(n, c); }

// x^k -> 2k, y^k -> 2k+1 (k from 0), t -> 2m
int xi(int k) { return 2 * k; }
int yi(int k) { return 2 * k + 1; }

Eigen::MatrixXd standard_j(int m) {
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(2 * m, 2 * m);
    for (int k = 0; k < m; ++k) {
        J(2 * k + 1, 2 * k) = 1.0;
        J(2 * k, 2 * k + 1) = -1.0;
    }
    return J;
}

std::vector<std::vector<ScalarField>> constant_matrix(int n, const Eigen::MatrixXd& A) {
    std::vector<std::vector<ScalarField>> r(A.rows());
    for (int a = 0; a < A.rows(); ++a)
        for (int b = 0; b < A.cols(); ++b) r[a].push_back(cst(n, A(a, b)));
    return r;
}

}  // namespace

const EllVariant& ExampleGeometry::ell(const std::string& nm) const {
    for (const auto& e : ells)
        if (e.name == nm) return e;
    throw std::invalid_argument("example " + name + " has no ell variant " + nm);
}

PseudoHermitianStructure heisenberg(int m) {
    if (m < 1) throw std::invalid_argument("heisenberg: m must be >= 1");
    const int n = 2 * m + 1, t = 2 * m;
    PseudoHermitianStructure s;
    s.m = m;
    s.theta = OneForm::zero(n);
    s.theta.comp[t] = cst(n, 1.0);
    for (int k = 0; k < m; ++k) s.theta.comp[xi(k)] = -coord(n, yi(k));
    for (int k = 0; k < m; ++k) {
        VectorField X = VectorField::coordinate(n, xi(k));
        X.comp[t] = coord(n, yi(k));
        s.hframe.push_back(X);
        s.hframe.push_back(VectorField::coordinate(n, yi(k)));
    }
    s.J = constant_matrix(n, standard_j(m));
    return s;
}

PseudoHermitianStructure deformed_heisenberg(int m, double eps) {
    PseudoHermitianStructure s = heisenberg(m);
    const int n = 2 * m + 1, h = 2 * m, t = 2 * m;
    Eigen::MatrixXd J0 = standard_j(m);
    Eigen::MatrixXd Omega = -J0;  // dtheta(F_a, F_b); Omega J0 = id
    Eigen::VectorXd u = Eigen::VectorXd::Zero(h);
    for (int k = 0; k < m; ++k) u(xi(k)) = 1.0;
    Eigen::MatrixXd P = Omega.inverse() * u * u.transpose();  // nilpotent, M symplectic
    Eigen::MatrixXd A1 = P * J0 - J0 * P, A2 = -(P * J0 * P);
    ScalarField sig = sin(coord(n, xi(0)) + 0.5 * coord(n, t));
    ScalarField es = eps * sig, es2 = es * es;
    for (int a = 0; a < h; ++a)
        for (int b = 0; b < h; ++b) s.J[a][b] = cst(n, J0(a, b)) + A1(a, b) * es + A2(a, b) * es2;
    return s;
}

PseudoHermitianStructure incompatible_heisenberg(int m) {
    if (m < 2) throw std::invalid_argument("incompatible_heisenberg: needs m >= 2");
    PseudoHermitianStructure s = heisenberg(m);
    const int n = 2 * m + 1;
    Eigen::MatrixXd M = Eigen::MatrixXd::Identity(2 * m, 2 * m);
    M(0, 2) = 0.5;
    s.J = constant_matrix(n, M * standard_j(m) * M.inverse());
    return s;
}

ScalarField default_rescaling(int m) {
    const int n = 2 * m + 1, t = 2 * m;
    return ScalarField::from_coords(n, [m, t](const std::vector<Jet>& x) {
        const Jet &x1 = x[0], &y1 = x[1], &xm = x[2 * (m - 1)], &ym = x[2 * (m - 1) + 1], &tt = x[t];
        return 0.2 * x1 * ym + 0.1 * y1 * y1 - 0.15 * tt * xm + 0.1 * tt;
    });
}

std::vector<EllVariant> standard_ells(int m) {
    const int n = 2 * m + 1, t = 2 * m;
    std::vector<EllVariant> r;
    r.push_back({"zero", OneForm::zero(n)});

    ScalarField g = ScalarField::from_coords(n, [m, t](const std::vector<Jet>& x) {
        return 0.3 * x[0] * x[1] + 0.2 * x[t] * x[2 * (m - 1)] + 0.1 * x[t] * x[t];
    });
    r.push_back({"closed", differential(g)});

    OneForm gen = OneForm::zero(n);
    gen.comp[yi(0)] = 0.4 * coord(n, xi(0));
    gen.comp[xi(m - 1)] = 0.25 * coord(n, t);
    gen.comp[t] = -0.3 * coord(n, yi(0)) * coord(n, yi(0));
    r.push_back({"generic", gen});

    OneForm tf = OneForm::zero(n);
    if (m >= 2)
        tf.comp[xi(1)] = 0.5 * coord(n, xi(0));
    else
        tf.comp[t] = 0.5 * coord(n, xi(0));
    r.push_back({"tracefree", tf});
    return r;
}

std::vector<ExampleGeometry> builtin_examples() {
    std::vector<ExampleGeometry> ex;
    {
        ExampleGeometry e;
        e.name = "heisenberg_m1";
        e.description = "Heisenberg group R^3, theta = dt - y dx";
        e.m = 1;
        e.structure = heisenberg(1);
        e.ells = standard_ells(1);
        ex.push_back(e);
    }
    {
        ExampleGeometry e;
        e.name = "heisenberg_m2";
        e.description = "Heisenberg group R^5, theta = dt - y1 dx1 - y2 dx2";
        e.m = 2;
        e.structure = heisenberg(2);
        e.ells = standard_ells(2);
        ex.push_back(e);
    }
    {
        ExampleGeometry e;
        e.name = "heisenberg_m2_rescaled";
        e.description = "Heisenberg R^5 with theta = e^{2f}(dt - y.dx), f polynomial";
        e.m = 2;
        e.rescaling = default_rescaling(2);
        e.unrescaled = heisenberg(2);
        e.structure = rescale_structure(heisenberg(2), *e.rescaling);
        e.ells = standard_ells(2);
        ex.push_back(e);
    }
    {
        ExampleGeometry e;
        e.name = "deformed_m2";
        e.description = "Heisenberg R^5 with J conjugated by a point-dependent symplectic shear (eps = 0.3)";
        e.m = 2;
        e.deformation = 0.3;
        e.structure = deformed_heisenberg(2, 0.3);
        auto ells = standard_ells(2);
        ells.pop_back();  // the x1 dx2 form is only trace-free for the flat J
        e.ells = ells;
        ex.push_back(e);
    }
    return ex;
}

const ExampleGeometry& find_example(const std::string& name) {
    static const std::vector<ExampleGeometry> all = builtin_examples();
    for (const auto& e : all)
        if (e.name == name) return e;
    throw std::invalid_argument("unknown example: " + name);
}

std::vector<ChartPoint> sample_points(int dim, int count, std::uint64_t seed, double lo, double hi) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(lo, hi);
    std::vector<ChartPoint> pts(count);
    for (auto& p : pts)
        for (int i = 0; i < dim; ++i) p.coords.push_back(u(rng));
    return pts;
}

std::vector<ChartPoint> sample_points(const ExampleGeometry& ex, int count, std::uint64_t seed) {
    return sample_points(ex.structure.n(), count, seed, ex.box_lo, ex.box_hi);
}

}  // namespace crt
