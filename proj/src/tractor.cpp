// SPDX-License-Identifier: MIT
#include "crt/tractor.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "crt/cr.hpp"

namespace crt {

using Eigen::MatrixXd;
using Eigen::VectorXd;

MatrixXd pseudo_orthonormal_frame(const MatrixXd& g) {
    const int D = static_cast<int>(g.rows());
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(0.5 * (g + g.transpose()));
    const VectorXd& ev = es.eigenvalues();
    const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
    int neg = 0;
    for (int i = 0; i < D; ++i) {
        if (std::abs(ev(i)) <= 1e-12 * scale) throw DegenerateError("pseudo_orthonormal_frame: singular metric");
        if (ev(i) < 0) ++neg;
    }
    if (neg != 1) throw SignatureError("pseudo_orthonormal_frame: signature is not (1,n)");
    // eigenvalues ascend, so the negative one comes first
    MatrixXd E(D, D);
    for (int i = 0; i < D; ++i) E.col(i) = es.eigenvectors().col(i) / std::sqrt(std::abs(ev(i)));
    return E;
}

ConformalPoint conformal_point(const JetTensor& gjet) {
    ConformalPoint cp;
    cp.D = gjet.extent(0);
    if (cp.D < 3) throw std::invalid_argument("conformal_point: dimension must be >= 3");
    cp.mg = metric_geometry(gjet);
    cp.frame = pseudo_orthonormal_frame(cp.mg.metric());
    const int D = cp.D, n = D - 1, r = cp.mg.Ric.min_order();
    cp.P = JetTensor({D, D}, D, r);
    for (int i = 0; i < D; ++i)
        for (int j = 0; j < D; ++j)
            cp.P(i, j) = (cp.mg.scal / (2.0 * n) * gjet(i, j).truncate(r) - cp.mg.Ric(i, j)) / (n - 1.0);
    return cp;
}

ConformalPoint conformal_point(const CoordinateMetric& g, const ChartPoint& p, int order) {
    return conformal_point(g.jet(p, order));
}

// --- tractors ----------------------------------------------------------------

AdjointTractor AdjointTractor::zero(int D) {
    return {VectorXd::Zero(D), MatrixXd::Zero(D, D), VectorXd::Zero(D)};
}

double AdjointTractor::max_abs() const {
    return std::max({xi.cwiseAbs().maxCoeff(), phi.cwiseAbs().maxCoeff(), omega.cwiseAbs().maxCoeff()});
}

AdjointTractor& AdjointTractor::operator+=(const AdjointTractor& o) {
    xi += o.xi;
    phi += o.phi;
    omega += o.omega;
    return *this;
}

AdjointTractor& AdjointTractor::operator-=(const AdjointTractor& o) {
    xi -= o.xi;
    phi -= o.phi;
    omega -= o.omega;
    return *this;
}

AdjointTractor& AdjointTractor::operator*=(double s) {
    xi *= s;
    phi *= s;
    omega *= s;
    return *this;
}

double StandardTractor::max_abs() const { return std::max({std::abs(a), xi.cwiseAbs().maxCoeff(), std::abs(b)}); }

AdjointTractor AdjointTractorField::value() const {
    const int D = static_cast<int>(xi.size());
    AdjointTractor t = AdjointTractor::zero(D);
    for (int i = 0; i < D; ++i) {
        t.xi(i) = xi[i].value();
        t.omega(i) = omega[i].value();
    }
    t.phi = phi.matrix_values();
    return t;
}

int AdjointTractorField::order() const {
    return std::min({min_order(xi), phi.min_order(), min_order(omega)});
}

double co_defect(const MatrixXd& g, const MatrixXd& phi) {
    const int D = static_cast<int>(g.rows());
    MatrixXd s = phi - phi.trace() / D * MatrixXd::Identity(D, D);
    // skew means g(sX, Y) + g(X, sY) = 0
    return (g * s + s.transpose() * g).cwiseAbs().maxCoeff();
}

namespace {

void check_dims(const MatrixXd& g, const AdjointTractor& A) {
    const int D = static_cast<int>(g.rows());
    if (A.xi.size() != D || A.phi.rows() != D || A.phi.cols() != D || A.omega.size() != D)
        throw std::invalid_argument("tractor: dimension does not match the metric");
}

// {xi, eta} for xi in g_-1, eta in g_1: Z -> eta(Z) xi - g(xi,Z) eta^# + eta(xi) Z
MatrixXd minus_plus(const MatrixXd& g, const VectorXd& xi, const VectorXd& eta) {
    const int D = static_cast<int>(g.rows());
    VectorXd sharp = g.partialPivLu().solve(eta);
    return xi * eta.transpose() - sharp * (g * xi).transpose() + eta.dot(xi) * MatrixXd::Identity(D, D);
}

}  // namespace

// Primitive brackets: {X, psi} = -psi(X), {w, psi} = w o psi, {X, w} as in minus_plus,
// {phi, psi} = commutator; g_-1 and g_1 are abelian.
AdjointTractor adjoint_bracket(const MatrixXd& g, const AdjointTractor& A, const AdjointTractor& B) {
    check_dims(g, A);
    check_dims(g, B);
    AdjointTractor r;
    r.xi = A.phi * B.xi - B.phi * A.xi;
    r.phi = minus_plus(g, A.xi, B.omega) - minus_plus(g, B.xi, A.omega) + A.phi * B.phi - B.phi * A.phi;
    r.omega = B.phi.transpose() * A.omega - A.phi.transpose() * B.omega;
    return r;
}

StandardTractor tractor_action(const MatrixXd& g, const AdjointTractor& A, const StandardTractor& t) {
    check_dims(g, A);
    const int D = static_cast<int>(g.rows());
    if (t.xi.size() != D) throw std::invalid_argument("tractor_action: dimension does not match the metric");
    const double c = A.phi.trace() / D;
    const MatrixXd phi0 = A.phi - c * MatrixXd::Identity(D, D);
    StandardTractor r;
    r.a = -c * t.a + A.omega.dot(t.xi);
    r.xi = t.a * A.xi + phi0 * t.xi - t.b * g.partialPivLu().solve(A.omega);
    r.b = -A.xi.dot(g * t.xi) + c * t.b;
    return r;
}

MatrixXd to_algebra(const MatrixXd& frame, const AdjointTractor& A) {
    const int D = static_cast<int>(frame.rows());
    const MatrixXd Einv = frame.inverse();
    so::GradedTriple t;
    t.m = Einv * A.xi;
    MatrixXd phi = Einv * A.phi * frame;
    t.a = phi.trace() / D;
    t.A = phi - t.a * MatrixXd::Identity(D, D);
    t.l = A.omega.transpose() * frame;
    return so::to_matrix(t);
}

AdjointTractor from_algebra(const MatrixXd& frame, const MatrixXd& M) {
    const int D = static_cast<int>(frame.rows());
    const MatrixXd Einv = frame.inverse();
    so::GradedTriple t = so::from_matrix(M);
    AdjointTractor A;
    A.xi = frame * t.m;
    A.phi = frame * (t.A + t.a * MatrixXd::Identity(D, D)) * Einv;
    A.omega = (t.l * Einv).transpose();
    return A;
}

VectorXd to_algebra(const MatrixXd& frame, const StandardTractor& t) {
    const int D = static_cast<int>(frame.rows());
    VectorXd v(D + 2);
    v(0) = t.a;
    v.segment(1, D) = frame.inverse() * t.xi;
    v(D + 1) = t.b;
    return v;
}

StandardTractor standard_from_algebra(const MatrixXd& frame, const VectorXd& v) {
    const int D = static_cast<int>(frame.rows());
    return {v(0), frame * v.segment(1, D), v(D + 1)};
}

// --- curvature ---------------------------------------------------------------

Tensor4 weyl_tensor(const ConformalPoint& cp) {
    const int D = cp.D;
    const MatrixXd g = cp.g(), P = cp.schouten();
    Tensor4 W{D, std::vector<double>(D * D * D * D)};
    for (int i = 0; i < D; ++i)
        for (int j = 0; j < D; ++j)
            for (int k = 0; k < D; ++k)
                for (int l = 0; l < D; ++l)
                    W(i, j, k, l) = cp.mg.Rm(i, j, k, l).value() + P(j, k) * g(i, l) - P(i, k) * g(j, l) -
                                    g(i, k) * P(j, l) + g(j, k) * P(i, l);
    return W;
}

double weyl_trace_defect(const ConformalPoint& cp, const Tensor4& W) {
    const int D = cp.D;
    const MatrixXd gi = cp.ginv();
    int idx[4];
    double worst = 0.0;
    for (int p = 0; p < 4; ++p)
        for (int q = p + 1; q < 4; ++q) {
            int o[2], c = 0;
            for (int s = 0; s < 4; ++s)
                if (s != p && s != q) o[c++] = s;
            for (int x = 0; x < D; ++x)
                for (int y = 0; y < D; ++y) {
                    double v = 0.0;
                    idx[o[0]] = x;
                    idx[o[1]] = y;
                    for (int a = 0; a < D; ++a)
                        for (int b = 0; b < D; ++b) {
                            idx[p] = a;
                            idx[q] = b;
                            v += gi(a, b) * W(idx[0], idx[1], idx[2], idx[3]);
                        }
                    worst = std::max(worst, std::abs(v));
                }
        }
    return worst;
}

MatrixXd weyl_endomorphism(const ConformalPoint& cp, const Tensor4& W, const VectorXd& X, const VectorXd& Y) {
    const int D = cp.D;
    MatrixXd low = MatrixXd::Zero(D, D);  // low(l, k) = g(W(X,Y) d_k, d_l)
    for (int i = 0; i < D; ++i)
        for (int j = 0; j < D; ++j) {
            const double w = X(i) * Y(j);
            if (w == 0.0) continue;
            for (int k = 0; k < D; ++k)
                for (int l = 0; l < D; ++l) low(l, k) += w * W(i, j, k, l);
        }
    return cp.ginv() * low;
}

Tensor3 cotton_york(const ConformalPoint& cp) {
    const int D = cp.D;
    if (cp.P.min_order() < 1) throw std::invalid_argument("cotton_york: needs metric jets of order >= 3");
    std::vector<double> nP(D * D * D);  // (nabla_i P)(j,k)
    for (int i = 0; i < D; ++i)
        for (int j = 0; j < D; ++j)
            for (int k = 0; k < D; ++k) {
                double v = cp.P(j, k).partial(i);
                for (int l = 0; l < D; ++l)
                    v -= cp.mg.Gamma(l, i, j).value() * cp.P(l, k).value() +
                         cp.mg.Gamma(l, i, k).value() * cp.P(j, l).value();
                nP[(i * D + j) * D + k] = v;
            }
    Tensor3 C{D, std::vector<double>(D * D * D)};
    for (int i = 0; i < D; ++i)
        for (int j = 0; j < D; ++j)
            for (int k = 0; k < D; ++k) C(i, j, k) = nP[(i * D + j) * D + k] - nP[(j * D + i) * D + k];
    return C;
}

double conformal_killing_defect(const ConformalPoint& cp, const JetVec& tau) {
    const int D = cp.D;
    const JetTensor& g = cp.mg.g;
    MatrixXd L(D, D);
    for (int i = 0; i < D; ++i)
        for (int j = 0; j < D; ++j) {
            double v = 0.0;
            for (int k = 0; k < D; ++k)
                v += tau[k].value() * g(i, j).partial(k) + g(k, j).value() * tau[k].partial(i) +
                     g(i, k).value() * tau[k].partial(j);
            L(i, j) = v;
        }
    const MatrixXd gv = cp.g();
    const double tr = (cp.ginv() * L).trace();
    return (L - tr / D * gv).cwiseAbs().maxCoeff();
}

// --- covariant derivatives as jets --------------------------------------------

namespace {

int common_order(const ConformalPoint& cp, int other) { return std::min(cp.mg.Gamma.min_order(), other); }

// (k,i,j) = (nabla_k psi)^i_j
JetTensor nabla_endo(const ConformalPoint& cp, const JetTensor& psi) {
    const int D = cp.D, r = common_order(cp, psi.min_order() - 1);
    const JetTensor& G = cp.mg.Gamma;
    JetTensor out({D, D, D}, D, r);
    for (int k = 0; k < D; ++k)
        for (int i = 0; i < D; ++i)
            for (int j = 0; j < D; ++j) {
                Jet v = psi(i, j).derivative(k).truncate(r);
                for (int l = 0; l < D; ++l)
                    v += G(i, k, l).truncate(r) * psi(l, j).truncate(r) - G(l, k, j).truncate(r) * psi(i, l).truncate(r);
                out(k, i, j) = v;
            }
    return out;
}

// endomorphism psi(i,k) = (nabla_k tau)^i
JetTensor nabla_as_endo(const ConformalPoint& cp, const JetVec& tau) {
    JetTensor nv = nabla_vector(cp, tau);
    const int D = cp.D;
    JetTensor psi({D, D}, D, nv.min_order());
    for (int k = 0; k < D; ++k)
        for (int i = 0; i < D; ++i) psi(i, k) = nv(k, i);
    return psi;
}

// skew part plus trace part, skew with respect to g
JetTensor co_projection(const ConformalPoint& cp, const JetTensor& psi) {
    const int D = cp.D, r = psi.min_order();
    const JetTensor g = cp.mg.g.truncate(r), gi = cp.mg.ginv.truncate(r);
    Jet tr(D, r);
    for (int i = 0; i < D; ++i) tr += psi(i, i);
    JetTensor out({D, D}, D, r);
    for (int i = 0; i < D; ++i)
        for (int j = 0; j < D; ++j) {
            // adjoint: (g^-1 psi^T g)(i,j)
            Jet adj(D, r);
            for (int a = 0; a < D; ++a)
                for (int b = 0; b < D; ++b) adj += gi(i, a) * psi(b, a) * g(b, j);
            out(i, j) = 0.5 * (psi(i, j) - adj);
            if (i == j) out(i, j) += tr / static_cast<double>(D);
        }
    return out;
}

JetVec lower(const ConformalPoint& cp, const JetVec& v) {
    const int D = cp.D, r = min_order(v);
    JetVec out(D, Jet(D, r));
    for (int j = 0; j < D; ++j)
        for (int i = 0; i < D; ++i) out[j] += cp.mg.g(j, i).truncate(r) * v[i];
    return out;
}

}  // namespace

JetTensor nabla_vector(const ConformalPoint& cp, const JetVec& V) {
    const int D = cp.D, r = common_order(cp, min_order(V) - 1);
    const JetTensor& G = cp.mg.Gamma;
    JetTensor out({D, D}, D, r);
    for (int k = 0; k < D; ++k)
        for (int i = 0; i < D; ++i) {
            Jet v = V[i].derivative(k).truncate(r);
            for (int l = 0; l < D; ++l) v += G(i, k, l).truncate(r) * V[l].truncate(r);
            out(k, i) = v;
        }
    return out;
}

JetTensor nabla_form(const ConformalPoint& cp, const JetVec& w) {
    const int D = cp.D, r = common_order(cp, min_order(w) - 1);
    const JetTensor& G = cp.mg.Gamma;
    JetTensor out({D, D}, D, r);
    for (int k = 0; k < D; ++k)
        for (int j = 0; j < D; ++j) {
            Jet v = w[j].derivative(k).truncate(r);
            for (int l = 0; l < D; ++l) v -= G(l, k, j).truncate(r) * w[l].truncate(r);
            out(k, j) = v;
        }
    return out;
}

JetVec bochner_trace_vector(const ConformalPoint& cp, const JetVec& tau) {
    const int D = cp.D;
    JetTensor nn = nabla_endo(cp, nabla_as_endo(cp, tau));
    const int r = nn.min_order();
    JetVec up(D, Jet(D, r));
    for (int i = 0; i < D; ++i)
        for (int k = 0; k < D; ++k)
            for (int j = 0; j < D; ++j) up[i] += cp.mg.ginv(k, j).truncate(r) * nn(k, i, j);
    return lower(cp, up);
}

JetVec killing_p_operator(const ConformalPoint& cp, const JetVec& tau) {
    const int D = cp.D, n = D - 1;
    JetVec bt = bochner_trace_vector(cp, tau);
    const int r = std::min(min_order(bt), cp.mg.scal.order());
    JetVec flat = lower(cp, truncate(tau, r));
    JetVec out(D);
    for (int j = 0; j < D; ++j)
        out[j] = (bt[j].truncate(r) + cp.mg.scal.truncate(r) * flat[j] / (2.0 * n)) / (n - 1.0);
    return out;
}

AdjointTractorField splitting_operator(const ConformalPoint& cp, const JetVec& tau, SplittingBranch branch) {
    const int D = cp.D, n = D - 1;
    if (static_cast<int>(tau.size()) != D) throw std::invalid_argument("splitting_operator: dimension mismatch");
    if (branch == SplittingBranch::automatic)
        branch = conformal_killing_defect(cp, tau) <= 1e-8 ? SplittingBranch::conformal_killing
                                                           : SplittingBranch::general;
    AdjointTractorField S;
    JetTensor psi = nabla_as_endo(cp, tau);
    JetVec eta;
    if (branch == SplittingBranch::conformal_killing) {
        eta = killing_p_operator(cp, tau);
    } else {
        // nabla tau lies in co(TF) only for conformal Killing tau; keep its co(TF) part
        psi = co_projection(cp, psi);
        // eta = -(sum_k (nabla_k psi)(d_k-slot) - 2 P(tau) + tr P g(tau,.))/(n+1)
        JetTensor np = nabla_endo(cp, psi);
        const int r = std::min(np.min_order(), cp.P.min_order());
        Jet trP(D, r);
        for (int a = 0; a < D; ++a)
            for (int b = 0; b < D; ++b) trP += cp.mg.ginv(a, b).truncate(r) * cp.P(a, b).truncate(r);
        JetVec flat = lower(cp, truncate(tau, r));
        eta.assign(D, Jet(D, r));
        for (int j = 0; j < D; ++j) {
            Jet v(D, r);
            for (int k = 0; k < D; ++k) v += np(k, k, j).truncate(r) - 2.0 * cp.P(k, j).truncate(r) * tau[k].truncate(r);
            v += trP * flat[j];
            eta[j] = -v / (n + 1.0);
        }
    }
    const int r = std::min(min_order(eta), psi.min_order());
    S.xi = truncate(tau, r);
    S.phi = psi.truncate(r);
    S.omega = truncate(eta, r);
    return S;
}

// --- normal connection ---------------------------------------------------------

std::vector<AdjointTractor> normal_derivative(const ConformalPoint& cp, const AdjointTractorField& A) {
    const int D = cp.D;
    if (A.order() < 1) throw std::invalid_argument("normal_derivative: tractor jets of order >= 1 needed");
    const JetTensor nx = nabla_vector(cp, A.xi), np = nabla_endo(cp, A.phi), nw = nabla_form(cp, A.omega);
    const AdjointTractor val = A.value();
    const MatrixXd g = cp.g(), P = cp.schouten();
    std::vector<AdjointTractor> out;
    for (int k = 0; k < D; ++k) {
        AdjointTractor d = AdjointTractor::zero(D);
        for (int i = 0; i < D; ++i) {
            d.xi(i) = nx(k, i).value();
            d.omega(i) = nw(k, i).value();
            for (int j = 0; j < D; ++j) d.phi(i, j) = np(k, i, j).value();
        }
        AdjointTractor conn = AdjointTractor::zero(D);
        conn.xi(k) = 1.0;
        conn.omega = P.row(k).transpose();
        out.push_back(d + adjoint_bracket(g, conn, val));
    }
    return out;
}

AdjointTractor along(const std::vector<AdjointTractor>& per_direction, const VectorXd& X) {
    AdjointTractor r = AdjointTractor::zero(per_direction.front().dim());
    for (int k = 0; k < X.size(); ++k) r += X(k) * per_direction[k];
    return r;
}

AdjointTractor normal_curvature(const ConformalPoint& cp, const Tensor4& W, const Tensor3& C, const VectorXd& X,
                                const VectorXd& Y, double cotton_factor) {
    const int D = cp.D;
    AdjointTractor r = AdjointTractor::zero(D);
    r.phi = weyl_endomorphism(cp, W, X, Y);
    for (int i = 0; i < D; ++i)
        for (int j = 0; j < D; ++j) {
            const double w = X(i) * Y(j);
            if (w == 0.0) continue;
            for (int k = 0; k < D; ++k) r.omega(k) += cotton_factor * w * C(i, j, k);
        }
    return r;
}

// Standard tractor connection d + M_k in the coordinate trivialisation R + TF + R,
// M_k = Levi-Civita on the middle block + action of (d_k, 0, P(d_k)).
AdjointTractor normal_curvature_direct(const ConformalPoint& cp, const VectorXd& X, const VectorXd& Y) {
    const int D = cp.D, N = D + 2;
    const int r = std::min(cp.P.min_order(), cp.mg.Gamma.min_order());
    if (r < 1) throw std::invalid_argument("normal_curvature_direct: needs metric jets of order >= 3");
    std::vector<std::vector<Jet>> M(D, std::vector<Jet>(N * N, Jet(D, r)));
    for (int k = 0; k < D; ++k) {
        auto& m = M[k];
        for (int i = 0; i < D; ++i)
            for (int j = 0; j < D; ++j) m[(1 + i) * N + 1 + j] = cp.mg.Gamma(i, k, j).truncate(r);
        for (int j = 0; j < D; ++j) {
            m[0 * N + 1 + j] = cp.P(k, j).truncate(r);
            m[(N - 1) * N + 1 + j] = -cp.mg.g(k, j).truncate(r);
            Jet sharp(D, r);
            for (int l = 0; l < D; ++l) sharp += cp.mg.ginv(j, l).truncate(r) * cp.P(k, l).truncate(r);
            m[(1 + j) * N + N - 1] = -sharp;
        }
        m[(1 + k) * N + 0] += 1.0;
    }
    MatrixXd F = MatrixXd::Zero(N, N);
    for (int i = 0; i < D; ++i)
        for (int j = 0; j < D; ++j) {
            const double w = X(i) * Y(j);
            if (w == 0.0) continue;
            for (int a = 0; a < N; ++a)
                for (int b = 0; b < N; ++b) {
                    double v = M[j][a * N + b].partial(i) - M[i][a * N + b].partial(j);
                    for (int c = 0; c < N; ++c)
                        v += M[i][a * N + c].value() * M[j][c * N + b].value() -
                             M[j][a * N + c].value() * M[i][c * N + b].value();
                    F(a, b) += w * v;
                }
        }
    AdjointTractor out;
    const double c = F(N - 1, N - 1);
    out.xi = F.block(1, 0, D, 1);
    out.omega = F.block(0, 1, 1, D).transpose();
    out.phi = F.block(1, 1, D, D) + c * MatrixXd::Identity(D, D);
    return out;
}

MatrixXd codifferential_1form(const ConformalPoint& cp, const std::vector<AdjointTractor>& per_direction) {
    so::Cochain ch;
    ch.n = cp.n();
    ch.degree = 1;
    for (int i = 0; i < cp.D; ++i) ch.values.push_back(to_algebra(cp.frame, along(per_direction, cp.frame.col(i))));
    return so::codifferential(ch).values.front();
}

std::vector<MatrixXd> codifferential_2form(const ConformalPoint& cp, const Tensor4& W, const Tensor3& C,
                                           double cotton_factor) {
    so::Cochain ch;
    ch.n = cp.n();
    ch.degree = 2;
    for (int i = 0; i < cp.D; ++i)
        for (int j = 0; j < cp.D; ++j)
            ch.values.push_back(
                to_algebra(cp.frame, normal_curvature(cp, W, C, cp.frame.col(i), cp.frame.col(j), cotton_factor)));
    return so::codifferential(ch).values;
}

// --- complex structures -----------------------------------------------------------

ComplexStructureReport check_complex_structure(const ConformalPoint& cp, const AdjointTractor& A) {
    const int D = cp.D;
    const MatrixXd g = cp.g();
    ComplexStructureReport rep;
    for (int k = 0; k < D + 2; ++k) {
        StandardTractor t{0.0, VectorXd::Zero(D), 0.0};
        if (k == 0)
            t.a = 1.0;
        else if (k == D + 1)
            t.b = 1.0;
        else
            t.xi(k - 1) = 1.0;
        StandardTractor s = tractor_action(g, A, tractor_action(g, A, t));
        s.a += t.a;
        s.xi += t.xi;
        s.b += t.b;
        rep.residual = std::max(rep.residual, s.max_abs());
    }
    const MatrixXd beta = to_algebra(cp.frame, A);
    try {
        rep.algebra = so::analyze_complex_element(beta, 1e-8);
        rep.algebra_checked = true;
    } catch (const so::PreconditionError&) {
        rep.algebra.square_defect = (beta * beta + MatrixXd::Identity(D + 2, D + 2)).cwiseAbs().maxCoeff();
    }
    return rep;
}

// --- Fefferman -----------------------------------------------------------------------

ConformalPoint conformal_point(const FeffermanPoint& fp) { return conformal_point(fp.g); }

JetVec fundamental_field(const FeffermanPoint& fp) {
    const int D = fp.D, q = fp.g.min_order();
    JetVec R(D, Jet(D, q));
    R[fp.S()] += 2.0;
    return R;
}

MatrixXd horizontal_J(const FeffermanPoint& fp) {
    const int D = fp.D, h = 2 * fp.m;
    MatrixXd L(D, D), Jb = MatrixXd::Zero(D, D);
    for (int a = 0; a < D; ++a) L.col(a) = fp.lift_value(a);
    Jb.topLeftCorner(h, h) = fp.w.cr.Jm.topLeftCorner(h, h);
    return L * Jb * L.inverse();
}

AdjointTractor build_jcr(const FeffermanPoint& fp) {
    const int D = fp.D, n = fp.n;
    AdjointTractor J = AdjointTractor::zero(D);
    J.xi(fp.S()) = 2.0;
    J.phi = horizontal_J(fp);
    // (2i/(n+3)) A with A = i A_r, A_r = alpha + (m+2)/2 ds
    for (int j = 0; j < n; ++j) J.omega(j) = fp.alpha_coord[j].value();
    J.omega(n) = (fp.m + 2.0) / 2.0;
    J.omega *= -2.0 / (n + 3.0);
    return J;
}

AdjointTractor u_term(const FeffermanPoint& fp) {
    const int D = fp.D;
    const double n = fp.n;
    AdjointTractor U = AdjointTractor::zero(D);
    const double c = (n + 1.0) / (n * (n - 1.0) * (n + 3.0)) * ell_trace(fp);
    for (int j = 0; j < D; ++j) U.omega(j) = c * fp.theta_total[j].value();
    return U;
}

// --- reconstruction -----------------------------------------------------------------

Reconstruction reconstruct_cr(const ConformalPoint& cp, const AdjointTractor& A) {
    const int D = cp.D, nb = D - 1;
    const MatrixXd g = cp.g();
    Reconstruction rec;
    rec.R = A.xi;
    const double Rn = rec.R.norm();
    if (Rn < 1e-10) throw ContractViolation("reconstruct_cr: first slot vanishes");
    if (std::abs(rec.R.dot(g * rec.R)) > 1e-8 * (1.0 + Rn * Rn))
        throw ContractViolation("reconstruct_cr: first slot is not lightlike");
    ComplexStructureReport cs = check_complex_structure(cp, A);
    if (!cs.algebra_checked || cs.residual > 1e-8)
        throw ContractViolation("reconstruct_cr: tractor is not a complex structure");
    rec.flags = cs.algebra;
    const VectorXd thf = g * rec.R;
    if (std::abs(thf(nb)) > 1e-8 * (1.0 + thf.norm()))
        throw ContractViolation("reconstruct_cr: fibre direction not in ker g(R,.)");
    rec.theta = thf.head(nb);
    const MatrixXd skew = 0.5 * (A.phi - g.partialPivLu().solve(A.phi.transpose() * g));
    rec.J = skew.topLeftCorner(nb, nb);
    rec.levi = g.topLeftCorner(nb, nb);
    return rec;
}

double j_difference_on_H(const Reconstruction& a, const Reconstruction& b) {
    Eigen::FullPivLU<MatrixXd> lu(a.theta.transpose());
    MatrixXd K = lu.kernel();
    Eigen::HouseholderQR<MatrixXd> qr(K);
    MatrixXd Q = qr.householderQ() * MatrixXd::Identity(K.rows(), K.cols());
    return ((a.J - b.J) * Q).cwiseAbs().maxCoeff();
}

ReconstructionComparison compare_with_base(const Reconstruction& rec, const FeffermanPoint& fp) {
    const CRPoint& cr = fp.w.cr;
    const int n = cr.n, h = 2 * cr.m;
    ReconstructionComparison c;
    VectorXd th(n);
    for (int j = 0; j < n; ++j) th(j) = cr.theta[j].value();
    const VectorXd a = rec.theta.normalized(), b = th.normalized();
    c.H = std::min((a - b).cwiseAbs().maxCoeff(), (a + b).cwiseAbs().maxCoeff());

    const MatrixXd E = cr.E.matrix_values();  // rows are frame vectors
    const MatrixXd dth = cr.dtheta.matrix_values();
    for (int x = 0; x < h; ++x) {
        const VectorXd ex = E.row(x).transpose();
        VectorXd Jex = VectorXd::Zero(n);
        for (int y = 0; y < h; ++y) Jex += cr.Jm(y, x) * E.row(y).transpose();
        c.J = std::max(c.J, (rec.J * ex - Jex).cwiseAbs().maxCoeff());
        for (int y = 0; y < h; ++y) {
            VectorXd Jey = VectorXd::Zero(n);
            for (int z = 0; z < h; ++z) Jey += cr.Jm(z, y) * E.row(z).transpose();
            const double base = ex.dot(dth * Jey);
            const double recon = ex.dot(rec.levi * E.row(y).transpose());
            c.levi = std::max(c.levi, std::abs(base - recon));
        }
    }
    return c;
}

}  // namespace crt
