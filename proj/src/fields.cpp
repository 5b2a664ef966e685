// SPDX-License-Identifier: MIT
#include "crt/fields.hpp"

#include <cmath>
#include <stdexcept>

namespace crt {

namespace {

void same_dim(int a, int b) {
    if (a != b) throw std::invalid_argument("fields: chart dimension mismatch");
}

template <class F>
ScalarField unary(const ScalarField& a, F op) {
    return ScalarField(a.dim(), [a, op](const ChartPoint& p, int k) { return op(a.jet(p, k)); });
}

template <class F>
ScalarField binary(const ScalarField& a, const ScalarField& b, F op) {
    same_dim(a.dim(), b.dim());
    return ScalarField(a.dim(), [a, b, op](const ChartPoint& p, int k) { return op(a.jet(p, k), b.jet(p, k)); });
}

}  // namespace

std::vector<Jet> coordinate_jets(const ChartPoint& p, int order) {
    std::vector<Jet> x;
    x.reserve(p.dim());
    for (int i = 0; i < p.dim(); ++i) {
        if (!std::isfinite(p.coords[i])) throw std::invalid_argument("ChartPoint: non-finite coordinate");
        x.push_back(Jet::variable(p.dim(), order, i, p.coords[i]));
    }
    return x;
}

ScalarField::ScalarField(int dim, Evaluator fn) : dim_(dim), fn_(std::move(fn)) {}

ScalarField ScalarField::from_coords(int dim, std::function<Jet(const std::vector<Jet>&)> formula) {
    return ScalarField(dim, [formula](const ChartPoint& p, int k) { return formula(coordinate_jets(p, k)); });
}

ScalarField ScalarField::constant(int dim, double c) {
    return ScalarField(dim, [dim, c](const ChartPoint&, int k) { return Jet(dim, k, c); });
}

ScalarField ScalarField::coordinate(int dim, int i) {
    return ScalarField(dim, [dim, i](const ChartPoint& p, int k) { return Jet::variable(dim, k, i, p.coords[i]); });
}

Jet ScalarField::jet(const ChartPoint& p, int order) const {
    if (!fn_) throw std::invalid_argument("ScalarField: empty");
    same_dim(dim_, p.dim());
    Jet j = fn_(p, order);
    if (j.order() > order) j = j.truncate(order);
    return j;
}

ScalarField operator+(const ScalarField& a, const ScalarField& b) {
    return binary(a, b, [](const Jet& x, const Jet& y) { return x + y; });
}
ScalarField operator-(const ScalarField& a, const ScalarField& b) {
    return binary(a, b, [](const Jet& x, const Jet& y) { return x - y; });
}
ScalarField operator*(const ScalarField& a, const ScalarField& b) {
    return binary(a, b, [](const Jet& x, const Jet& y) { return x * y; });
}
ScalarField operator/(const ScalarField& a, const ScalarField& b) {
    return binary(a, b, [](const Jet& x, const Jet& y) { return x / y; });
}
ScalarField operator*(double s, const ScalarField& a) {
    return unary(a, [s](const Jet& x) { return s * x; });
}
ScalarField operator-(const ScalarField& a) {
    return unary(a, [](const Jet& x) { return -x; });
}
ScalarField exp(const ScalarField& a) {
    return unary(a, [](const Jet& x) { return exp(x); });
}
ScalarField log(const ScalarField& a) {
    return unary(a, [](const Jet& x) { return log(x); });
}
ScalarField sin(const ScalarField& a) {
    return unary(a, [](const Jet& x) { return sin(x); });
}
ScalarField cos(const ScalarField& a) {
    return unary(a, [](const Jet& x) { return cos(x); });
}
ScalarField sqrt(const ScalarField& a) {
    return unary(a, [](const Jet& x) { return sqrt(x); });
}
ScalarField pow(const ScalarField& a, double e) {
    return unary(a, [e](const Jet& x) { return pow(x, e); });
}

Jet3 evaluate_jet(const ScalarField& f, const ChartPoint& p) { return to_jet3(f.jet(p, 3)); }

ScalarField partial(const ScalarField& f, int i) {
    return ScalarField(f.dim(), [f, i](const ChartPoint& p, int k) { return f.jet(p, k + 1).derivative(i); });
}

VectorField VectorField::zero(int dim) {
    return VectorField{std::vector<ScalarField>(dim, ScalarField::constant(dim, 0.0))};
}

VectorField VectorField::coordinate(int dim, int i) {
    VectorField v = zero(dim);
    v.comp[i] = ScalarField::constant(dim, 1.0);
    return v;
}

std::vector<Jet> VectorField::jets(const ChartPoint& p, int order) const {
    std::vector<Jet> r;
    for (const auto& c : comp) r.push_back(c.jet(p, order));
    return r;
}

std::vector<double> VectorField::at(const ChartPoint& p) const {
    std::vector<double> r;
    for (const auto& c : comp) r.push_back(c(p));
    return r;
}

OneForm OneForm::zero(int dim) { return OneForm{std::vector<ScalarField>(dim, ScalarField::constant(dim, 0.0))}; }

std::vector<Jet> OneForm::jets(const ChartPoint& p, int order) const {
    std::vector<Jet> r;
    for (const auto& c : comp) r.push_back(c.jet(p, order));
    return r;
}

VectorField operator+(const VectorField& a, const VectorField& b) {
    same_dim(a.dim(), b.dim());
    VectorField r;
    for (int i = 0; i < a.dim(); ++i) r.comp.push_back(a.comp[i] + b.comp[i]);
    return r;
}
VectorField operator-(const VectorField& a, const VectorField& b) {
    same_dim(a.dim(), b.dim());
    VectorField r;
    for (int i = 0; i < a.dim(); ++i) r.comp.push_back(a.comp[i] - b.comp[i]);
    return r;
}
VectorField operator*(const ScalarField& f, const VectorField& X) {
    VectorField r;
    for (const auto& c : X.comp) r.comp.push_back(f * c);
    return r;
}
OneForm operator+(const OneForm& a, const OneForm& b) {
    same_dim(a.dim(), b.dim());
    OneForm r;
    for (int i = 0; i < a.dim(); ++i) r.comp.push_back(a.comp[i] + b.comp[i]);
    return r;
}
OneForm operator*(const ScalarField& f, const OneForm& a) {
    OneForm r;
    for (const auto& c : a.comp) r.comp.push_back(f * c);
    return r;
}

ScalarField apply(const OneForm& a, const VectorField& X) {
    same_dim(a.dim(), X.dim());
    ScalarField r = a.comp[0] * X.comp[0];
    for (int i = 1; i < a.dim(); ++i) r = r + a.comp[i] * X.comp[i];
    return r;
}

ScalarField apply(const TwoForm& w, const VectorField& X, const VectorField& Y) {
    same_dim(w.dim(), X.dim());
    same_dim(w.dim(), Y.dim());
    int n = w.dim();
    return ScalarField(n, [w, X, Y, n](const ChartPoint& p, int k) {
        auto x = X.jets(p, k), y = Y.jets(p, k);
        Jet r(n, k);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (i != j) r += w.comp[i][j].jet(p, k) * x[i] * y[j];
        return r;
    });
}

ScalarField directional(const VectorField& X, const ScalarField& f) {
    same_dim(X.dim(), f.dim());
    int n = X.dim();
    return ScalarField(n, [X, f, n](const ChartPoint& p, int k) {
        Jet fj = f.jet(p, k + 1);
        Jet r(n, k);
        for (int j = 0; j < n; ++j) r += X.comp[j].jet(p, k) * fj.derivative(j);
        return r;
    });
}

VectorField lie_bracket(const VectorField& X, const VectorField& Y) {
    same_dim(X.dim(), Y.dim());
    int n = X.dim();
    VectorField r;
    for (int c = 0; c < n; ++c) {
        r.comp.push_back(ScalarField(n, [X, Y, n, c](const ChartPoint& p, int k) {
            auto x = X.jets(p, k), y = Y.jets(p, k);
            Jet xc = X.comp[c].jet(p, k + 1), yc = Y.comp[c].jet(p, k + 1);
            Jet r(n, k);
            for (int j = 0; j < n; ++j) r += x[j] * yc.derivative(j) - y[j] * xc.derivative(j);
            return r;
        }));
    }
    return r;
}

OneForm differential(const ScalarField& f) {
    OneForm r;
    for (int i = 0; i < f.dim(); ++i) r.comp.push_back(partial(f, i));
    return r;
}

TwoForm exterior_derivative(const OneForm& a) {
    int n = a.dim();
    TwoForm w;
    w.comp.assign(n, std::vector<ScalarField>(n, ScalarField::constant(n, 0.0)));
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
            if (j != k) w.comp[j][k] = partial(a.comp[k], j) - partial(a.comp[j], k);
    return w;
}

double exterior_derivative_at(const TwoForm& w, const ChartPoint& p, int i, int j, int k) {
    auto d = [&](int a, int b, int c) { return w.comp[b][c].jet(p, 1).partial(a); };
    return d(i, j, k) + d(j, k, i) + d(k, i, j);
}

}  // namespace crt
