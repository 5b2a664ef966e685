// SPDX-License-Identifier: MIT
#pragma once

#include <functional>
#include <vector>

#include "crt/fields.hpp"
#include "crt/linalg.hpp"

namespace crt {

// Symmetric matrix of component fields g_ij on a chart.
struct CoordinateMetric {
    int dim = 0;
    std::vector<std::vector<ScalarField>> g;
    JetTensor jet(const ChartPoint& p, int order) const;
};

// Levi-Civita geometry of a coordinate metric at a point, from the jets of g_ij.
// Conventions: R(X,Y)Z = [nabla_X, nabla_Y]Z - nabla_[X,Y] Z,
// Rm(i,j,k,l) = g(R(d_i,d_j)d_k, d_l), Ric(j,k) = tr(X -> R(X,d_j)d_k), scal = g^jk Ric(j,k).
struct MetricGeometry {
    int D = 0;
    JetTensor g, ginv;  // order K
    JetTensor Gamma;    // Gamma(k,i,j) = Gamma^k_ij, order K-1
    JetTensor Rm;       // order K-2
    JetTensor Ric;
    Jet scal;

    Eigen::MatrixXd metric() const { return g.matrix_values(); }
    Eigen::MatrixXd inverse_metric() const { return ginv.matrix_values(); }
    // g(nabla_A B, C) for A, C given by values and B by jets (order >= 1)
    double connection_pairing(const Eigen::VectorXd& A, const JetVec& B, const Eigen::VectorXd& C) const;
};

// Throws DegenerateError when g is singular at p.
MetricGeometry metric_geometry(const JetTensor& gjet);
MetricGeometry metric_geometry(const CoordinateMetric& g, const ChartPoint& p, int K = 2);

// Forms given by jets of their components; both need metric jets of order >= 2 and form jets of order >= 2.
// Hodge Laplacian d*d + dd* with d* = -div, returned as covector components at the point.
Eigen::VectorXd hodge_laplacian_1form(const JetTensor& gjet, const JetVec& omega);
// Bochner trace g^ij (nabla^2 omega)_(i,j,.)
Eigen::VectorXd bochner_trace_1form(const JetTensor& gjet, const JetVec& omega);
// (nabla omega)(i,j) = (nabla_i omega)_j, values
Eigen::MatrixXd covariant_derivative_1form(const MetricGeometry& mg, const JetVec& omega);
// maximal |L_X g| componentwise for a vector field given by coordinate jets
double killing_defect(const JetTensor& gjet, const JetVec& X);

}  // namespace crt
