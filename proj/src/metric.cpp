// SPDX-License-Identifier: MIT
#include "crt/metric.hpp"

#include <algorithm>
#include <cmath>

namespace crt {

JetTensor CoordinateMetric::jet(const ChartPoint& p, int order) const {
    JetTensor r({dim, dim}, dim, order);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) r(i, j) = g[i][j].jet(p, order);
    return r;
}

namespace {

// Gamma^k_ij from g and its inverse; result order one below g
JetTensor christoffel(const JetTensor& g, const JetTensor& ginv) {
    const int D = g.extent(0), K = g.min_order();
    JetTensor dg({D, D, D}, D, K - 1);  // dg(l,i,j) = d_l g_ij
    for (int l = 0; l < D; ++l)
        for (int i = 0; i < D; ++i)
            for (int j = 0; j < D; ++j) dg(l, i, j) = g(i, j).derivative(l);
    JetTensor G({D, D, D}, D, K - 1);
    for (int i = 0; i < D; ++i)
        for (int j = i; j < D; ++j)
            for (int k = 0; k < D; ++k) {
                Jet v(D, K - 1);
                for (int l = 0; l < D; ++l) v += ginv(k, l) * (dg(i, j, l) + dg(j, i, l) - dg(l, i, j));
                G(k, i, j) = 0.5 * v;
                G(k, j, i) = G(k, i, j);
            }
    return G;
}

// divergence of a vector field given by jets: d_i V^i + Gamma^k_ki V^i, order one lower
Jet divergence(const JetTensor& G, const JetVec& V) {
    const int D = static_cast<int>(V.size());
    Jet r(D, min_order(V) - 1);
    for (int i = 0; i < D; ++i) {
        r += V[i].derivative(i);
        for (int k = 0; k < D; ++k) r += G(k, k, i) * V[i];
    }
    return r;
}

}  // namespace

MetricGeometry metric_geometry(const JetTensor& gjet) {
    MetricGeometry mg;
    const int D = gjet.extent(0), K = gjet.min_order();
    if (K < 2) throw std::invalid_argument("metric_geometry: needs metric jets of order >= 2");
    mg.D = D;
    mg.g = gjet;
    mg.ginv = inverse(gjet);
    mg.Gamma = christoffel(gjet, mg.ginv);
    const JetTensor& G = mg.Gamma;
    // R^l_kij = d_i G^l_jk - d_j G^l_ik + G^l_ip G^p_jk - G^l_jp G^p_ik
    JetTensor Rup({D, D, D, D}, D, K - 2);  // Rup(i,j,k,l)
    for (int i = 0; i < D; ++i)
        for (int j = i + 1; j < D; ++j)
            for (int k = 0; k < D; ++k)
                for (int l = 0; l < D; ++l) {
                    Jet v = G(l, j, k).derivative(i) - G(l, i, k).derivative(j);
                    for (int p = 0; p < D; ++p) v += G(l, i, p) * G(p, j, k) - G(l, j, p) * G(p, i, k);
                    Rup(i, j, k, l) = v;
                    Rup(j, i, k, l) = -v;
                }
    mg.Rm = JetTensor({D, D, D, D}, D, K - 2);
    for (int i = 0; i < D; ++i)
        for (int j = 0; j < D; ++j)
            for (int k = 0; k < D; ++k)
                for (int l = 0; l < D; ++l) {
                    Jet v(D, K - 2);
                    for (int q = 0; q < D; ++q) v += gjet(q, l) * Rup(i, j, k, q);
                    mg.Rm(i, j, k, l) = v;
                }
    mg.Ric = JetTensor({D, D}, D, K - 2);
    for (int j = 0; j < D; ++j)
        for (int k = 0; k < D; ++k)
            for (int i = 0; i < D; ++i) mg.Ric(j, k) += Rup(i, j, k, i);
    mg.scal = Jet(D, K - 2);
    for (int j = 0; j < D; ++j)
        for (int k = 0; k < D; ++k) mg.scal += mg.ginv(j, k) * mg.Ric(j, k);
    return mg;
}

MetricGeometry metric_geometry(const CoordinateMetric& g, const ChartPoint& p, int K) {
    return metric_geometry(g.jet(p, K));
}

double MetricGeometry::connection_pairing(const Eigen::VectorXd& A, const JetVec& B, const Eigen::VectorXd& C) const {
    Eigen::VectorXd nab = Eigen::VectorXd::Zero(D);
    for (int k = 0; k < D; ++k)
        for (int i = 0; i < D; ++i) {
            if (A(i) == 0.0) continue;
            double v = B[k].partial(i);
            for (int j = 0; j < D; ++j) v += Gamma(k, i, j).value() * B[j].value();
            nab(k) += A(i) * v;
        }
    return nab.dot(metric() * C);
}

Eigen::VectorXd hodge_laplacian_1form(const JetTensor& gjet, const JetVec& omega) {
    const int D = gjet.extent(0);
    const int K = std::min(gjet.min_order(), min_order(omega));
    if (K < 2) throw std::invalid_argument("hodge_laplacian_1form: needs jets of order >= 2");
    JetTensor g = gjet.truncate(2);
    JetVec w = truncate(omega, 2);
    JetTensor ginv = inverse(g);
    JetTensor G = christoffel(g, ginv);  // order 1

    // d d* omega, d* omega = -div(omega^sharp)
    JetVec sharp(D, Jet(D, 2));
    for (int i = 0; i < D; ++i)
        for (int j = 0; j < D; ++j) sharp[i] += ginv(i, j) * w[j];
    Jet codiff = -divergence(G, sharp);
    Eigen::VectorXd r(D);
    for (int j = 0; j < D; ++j) r(j) = codiff.partial(j);

    // d* d omega: beta = d omega, (d* beta)_j = -g_jk (d_i beta^ik + Gamma^i_ip beta^pk)
    JetTensor beta({D, D}, D, 1);
    for (int i = 0; i < D; ++i)
        for (int j = 0; j < D; ++j) beta(i, j) = w[j].derivative(i) - w[i].derivative(j);
    JetTensor bup({D, D}, D, 1);
    for (int i = 0; i < D; ++i)
        for (int k = 0; k < D; ++k)
            for (int a = 0; a < D; ++a)
                for (int b = 0; b < D; ++b) bup(i, k) += ginv(i, a).truncate(1) * ginv(k, b).truncate(1) * beta(a, b);
    Eigen::VectorXd divb = Eigen::VectorXd::Zero(D);
    for (int k = 0; k < D; ++k)
        for (int i = 0; i < D; ++i) {
            divb(k) += bup(i, k).partial(i);
            for (int p = 0; p < D; ++p) divb(k) += G(i, i, p).value() * bup(p, k).value();
        }
    r -= g.matrix_values() * divb;
    return r;
}

Eigen::MatrixXd covariant_derivative_1form(const MetricGeometry& mg, const JetVec& omega) {
    const int D = mg.D;
    Eigen::MatrixXd r(D, D);
    for (int i = 0; i < D; ++i)
        for (int j = 0; j < D; ++j) {
            double v = omega[j].partial(i);
            for (int l = 0; l < D; ++l) v -= mg.Gamma(l, i, j).value() * omega[l].value();
            r(i, j) = v;
        }
    return r;
}

Eigen::VectorXd bochner_trace_1form(const JetTensor& gjet, const JetVec& omega) {
    const int D = gjet.extent(0);
    JetTensor g = gjet.truncate(2);
    JetVec w = truncate(omega, 2);
    JetTensor ginv = inverse(g);
    JetTensor G = christoffel(g, ginv);
    JetTensor nw({D, D}, D, 1);  // (nabla_j w)_k
    for (int j = 0; j < D; ++j)
        for (int k = 0; k < D; ++k) {
            Jet v = w[k].derivative(j);
            for (int l = 0; l < D; ++l) v -= G(l, j, k) * w[l].truncate(1);
            nw(j, k) = v;
        }
    Eigen::VectorXd r = Eigen::VectorXd::Zero(D);
    for (int i = 0; i < D; ++i)
        for (int j = 0; j < D; ++j) {
            const double gij = ginv(i, j).value();
            if (gij == 0.0) continue;
            for (int k = 0; k < D; ++k) {
                double v = nw(j, k).partial(i);
                for (int l = 0; l < D; ++l)
                    v -= G(l, i, j).value() * nw(l, k).value() + G(l, i, k).value() * nw(j, l).value();
                r(k) += gij * v;
            }
        }
    return r;
}

double killing_defect(const JetTensor& gjet, const JetVec& X) {
    const int D = gjet.extent(0);
    double r = 0.0;
    for (int i = 0; i < D; ++i)
        for (int j = 0; j < D; ++j) {
            double v = 0.0;
            for (int k = 0; k < D; ++k)
                v += X[k].value() * gjet(i, j).partial(k) + gjet(k, j).value() * X[k].partial(i) +
                     gjet(i, k).value() * X[k].partial(j);
            r = std::max(r, std::abs(v));
        }
    return r;
}

}  // namespace crt
