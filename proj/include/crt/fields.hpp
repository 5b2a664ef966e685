// SPDX-License-Identifier: MIT
#pragma once

#include <functional>
#include <vector>

#include "crt/jet.hpp"

namespace crt {

struct ChartPoint {
    std::vector<double> coords;
    int dim() const { return static_cast<int>(coords.size()); }
};

// The coordinate jets x_i at p, all of the given order.
std::vector<Jet> coordinate_jets(const ChartPoint& p, int order);

// A smooth function on a chart, represented by its Taylor evaluator.
class ScalarField {
public:
    using Evaluator = std::function<Jet(const ChartPoint&, int order)>;

    ScalarField() = default;
    ScalarField(int dim, Evaluator fn);
    // convenience: build from a formula in the coordinate jets
    static ScalarField from_coords(int dim, std::function<Jet(const std::vector<Jet>&)> formula);
    static ScalarField constant(int dim, double c);
    static ScalarField coordinate(int dim, int i);

    int dim() const { return dim_; }
    bool valid() const { return static_cast<bool>(fn_); }
    Jet jet(const ChartPoint& p, int order) const;
    double operator()(const ChartPoint& p) const { return jet(p, 0).value(); }

private:
    int dim_ = 0;
    Evaluator fn_;
};

ScalarField operator+(const ScalarField& a, const ScalarField& b);
ScalarField operator-(const ScalarField& a, const ScalarField& b);
ScalarField operator*(const ScalarField& a, const ScalarField& b);
ScalarField operator/(const ScalarField& a, const ScalarField& b);
ScalarField operator*(double s, const ScalarField& a);
ScalarField operator-(const ScalarField& a);
ScalarField exp(const ScalarField& a);
ScalarField log(const ScalarField& a);
ScalarField sin(const ScalarField& a);
ScalarField cos(const ScalarField& a);
ScalarField sqrt(const ScalarField& a);
ScalarField pow(const ScalarField& a, double p);

Jet3 evaluate_jet(const ScalarField& f, const ChartPoint& p);

// d/dx_i as a field (evaluates its argument one order higher)
ScalarField partial(const ScalarField& f, int i);

struct VectorField {
    std::vector<ScalarField> comp;
    int dim() const { return static_cast<int>(comp.size()); }
    static VectorField zero(int dim);
    static VectorField coordinate(int dim, int i);
    std::vector<Jet> jets(const ChartPoint& p, int order) const;
    std::vector<double> at(const ChartPoint& p) const;
};

struct OneForm {
    std::vector<ScalarField> comp;
    int dim() const { return static_cast<int>(comp.size()); }
    static OneForm zero(int dim);
    std::vector<Jet> jets(const ChartPoint& p, int order) const;
};

// antisymmetric components comp[j][k]
struct TwoForm {
    std::vector<std::vector<ScalarField>> comp;
    int dim() const { return static_cast<int>(comp.size()); }
    double at(const ChartPoint& p, int j, int k) const { return comp[j][k](p); }
};

VectorField operator+(const VectorField& a, const VectorField& b);
VectorField operator-(const VectorField& a, const VectorField& b);
VectorField operator*(const ScalarField& f, const VectorField& X);
OneForm operator+(const OneForm& a, const OneForm& b);
OneForm operator*(const ScalarField& f, const OneForm& a);

ScalarField apply(const OneForm& a, const VectorField& X);
ScalarField apply(const TwoForm& w, const VectorField& X, const VectorField& Y);
// X(f)
ScalarField directional(const VectorField& X, const ScalarField& f);

VectorField lie_bracket(const VectorField& X, const VectorField& Y);
OneForm differential(const ScalarField& f);
TwoForm exterior_derivative(const OneForm& a);
// (dw)_{ijk} = d_i w_jk + d_j w_ki + d_k w_ij
double exterior_derivative_at(const TwoForm& w, const ChartPoint& p, int i, int j, int k);

}  // namespace crt
