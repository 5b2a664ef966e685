// SPDX-License-Identifier: MIT
#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "crt/cr.hpp"

namespace crt {

// l = i * lambda; lambda is stored.
struct EllVariant {
    std::string name;  // zero, closed, generic, tracefree
    OneForm lambda;
};

struct ExampleGeometry {
    std::string name;
    std::string description;
    int m = 1;
    PseudoHermitianStructure structure;
    double box_lo = -0.5, box_hi = 0.5;
    std::uint64_t seed = 42;
    std::optional<ScalarField> rescaling;  // theta = e^{2f} theta_0 when set
    std::optional<PseudoHermitianStructure> unrescaled;
    double deformation = 0.0;
    std::vector<EllVariant> ells;
    const EllVariant& ell(const std::string& name) const;
};

// Chart coordinates are (x^1, y^1, ..., x^m, y^m, t).
PseudoHermitianStructure heisenberg(int m);
// J_eps = M J M^{-1} with M = id + eps sin(x^1 + t/2) Omega^{-1} u u^T, u = (1,0,1,0,...)
PseudoHermitianStructure deformed_heisenberg(int m, double eps);
// J replaced by a map that is not compatible with dtheta (for negative tests)
PseudoHermitianStructure incompatible_heisenberg(int m);

ScalarField default_rescaling(int m);
std::vector<EllVariant> standard_ells(int m);

std::vector<ExampleGeometry> builtin_examples();
const ExampleGeometry& find_example(const std::string& name);

std::vector<ChartPoint> sample_points(int dim, int count, std::uint64_t seed, double lo, double hi);
std::vector<ChartPoint> sample_points(const ExampleGeometry& ex, int count, std::uint64_t seed);

}  // namespace crt
