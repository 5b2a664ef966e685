// SPDX-License-Identifier: MIT
#include "crt/jet.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace crt {

namespace {

void compositions(int dim, int deg, std::vector<int>& cur, int pos, std::vector<int>& out) {
    if (pos == dim - 1) {
        cur[pos] = deg;
        out.insert(out.end(), cur.begin(), cur.end());
        return;
    }
    for (int a = deg; a >= 0; --a) {
        cur[pos] = a;
        compositions(dim, deg - a, cur, pos + 1, out);
    }
}

long long key_of(const int* a, int dim, int order) {
    long long k = 0;
    for (int v = dim - 1; v >= 0; --v) k = k * (order + 1) + a[v];
    return k;
}

struct LayoutCache {
    std::mutex mu;
    std::map<std::pair<int, int>, std::shared_ptr<const JetLayout>> table;
};

LayoutCache& cache() {
    static LayoutCache c;
    return c;
}

}  // namespace

JetLayout::JetLayout(int d, int k) : dim(d), order(k) {
    if (d < 1 || k < 0) throw std::invalid_argument("JetLayout: bad dim/order");
    std::vector<int> cur(d);
    for (int deg = 0; deg <= k; ++deg) {
        compositions(d, deg, cur, 0, exps);
        degree_end.push_back(static_cast<int>(exps.size()) / d);
    }
    size = degree_end.back();

    for (int i = 0; i < size; ++i) lookup[key_of(exponent(i), d, k)] = i;
    const auto& idx = lookup;

    std::vector<int> tmp(d);
    for (int i = 0; i < size; ++i) {
        int di = degree(i);
        for (int j = 0; j < degree_end[k - di]; ++j) {
            for (int v = 0; v < d; ++v) tmp[v] = exponent(i)[v] + exponent(j)[v];
            mul.push_back({i, j, idx.at(key_of(tmp.data(), d, k))});
        }
    }
    deriv.resize(d);
    for (int v = 0; v < d; ++v) {
        for (int i = 0; i < size; ++i) {
            const int* a = exponent(i);
            if (a[v] == 0) continue;
            for (int w = 0; w < d; ++w) tmp[w] = a[w];
            tmp[v] -= 1;
            deriv[v].push_back({i, idx.at(key_of(tmp.data(), d, k)), a[v]});
        }
    }
}

int JetLayout::degree(int idx) const {
    int s = 0;
    for (int v = 0; v < dim; ++v) s += exponent(idx)[v];
    return s;
}

int JetLayout::index_of(const int* alpha) const {
    int deg = 0;
    for (int v = 0; v < dim; ++v) deg += alpha[v];
    if (deg > order) return -1;
    for (int v = 0; v < dim; ++v)
        if (alpha[v] < 0) return -1;
    return lookup.at(key_of(alpha, dim, order));
}

std::shared_ptr<const JetLayout> JetLayout::get(int dim, int order) {
    constexpr int kFast = 12;
    thread_local std::shared_ptr<const JetLayout> fast[kFast][kFast];
    const bool small = dim < kFast && order < kFast && dim >= 0 && order >= 0;
    if (small && fast[dim][order]) return fast[dim][order];
    auto& c = cache();
    {
        std::lock_guard<std::mutex> lk(c.mu);
        auto it = c.table.find({dim, order});
        if (it != c.table.end()) {
            if (small) fast[dim][order] = it->second;
            return it->second;
        }
    }
    auto lay = std::make_shared<const JetLayout>(dim, order);
    std::lock_guard<std::mutex> lk(c.mu);
    auto [it, inserted] = c.table.emplace(std::make_pair(dim, order), lay);
    if (small) fast[dim][order] = it->second;
    return it->second;
}

Jet::Jet(int dim, int order, double value) : lay_(JetLayout::get(dim, order)) {
    c_.assign(lay_->size, 0.0);
    c_[0] = value;
}

Jet Jet::variable(int dim, int order, int var, double value) {
    Jet j(dim, order, value);
    if (order >= 1) {
        std::vector<int> a(dim, 0);
        a[var] = 1;
        j.c_[j.lay_->index_of(a.data())] = 1.0;
    }
    return j;
}

double Jet::partial(const std::vector<int>& vars) const {
    std::vector<int> a(dim(), 0);
    for (int v : vars) a[v] += 1;
    int idx = lay_->index_of(a.data());
    if (idx < 0) throw EvaluationError("Jet::partial: derivative order exceeds jet order");
    double fact = 1.0;
    for (int v = 0; v < dim(); ++v)
        for (int t = 2; t <= a[v]; ++t) fact *= t;
    return c_[idx] * fact;
}
double Jet::partial(int i) const { return partial(std::vector<int>{i}); }
double Jet::partial(int i, int j) const { return partial(std::vector<int>{i, j}); }
double Jet::partial(int i, int j, int k) const { return partial(std::vector<int>{i, j, k}); }

Jet Jet::derivative(int var) const {
    if (order() == 0) throw EvaluationError("Jet::derivative: order-0 jet has no derivatives");
    Jet r(dim(), order() - 1);
    for (const auto& [src, dst, f] : lay_->deriv[var]) r.c_[dst] += f * c_[src];
    return r;
}

Jet Jet::truncate(int k) const {
    if (k >= order()) return *this;
    Jet r;
    r.lay_ = JetLayout::get(dim(), k);
    r.c_.assign(c_.begin(), c_.begin() + r.lay_->size);
    return r;
}

Jet Jet::embed(int new_dim, const std::vector<int>& var_map) const {
    Jet r(new_dim, order());
    std::vector<int> a(new_dim);
    for (int i = 0; i < size(); ++i) {
        std::fill(a.begin(), a.end(), 0);
        for (int v = 0; v < dim(); ++v) a[var_map[v]] += lay_->exponent(i)[v];
        r.c_[r.lay_->index_of(a.data())] = c_[i];
    }
    return r;
}

Jet Jet::compose(const std::vector<double>& taylor) const {
    int k = order();
    Jet h = *this;
    h.c_[0] = 0.0;
    Jet r(dim(), k, taylor[k]);
    for (int j = k - 1; j >= 0; --j) {
        r = r * h;
        r.c_[0] += taylor[j];
    }
    return r;
}

void Jet::conform(const Jet& o) {
    if (!valid() || !o.valid()) throw std::invalid_argument("Jet: uninitialised operand");
    if (o.dim() != dim()) throw std::invalid_argument("Jet: dimension mismatch");
    if (o.order() < order()) *this = truncate(o.order());
}

Jet& Jet::operator+=(const Jet& o) {
    conform(o);
    for (int i = 0; i < size(); ++i) c_[i] += o.c_[i];
    return *this;
}
Jet& Jet::operator-=(const Jet& o) {
    conform(o);
    for (int i = 0; i < size(); ++i) c_[i] -= o.c_[i];
    return *this;
}
Jet& Jet::operator*=(const Jet& o) { return *this = *this * o; }
Jet& Jet::operator+=(double s) {
    c_[0] += s;
    return *this;
}
Jet& Jet::operator-=(double s) {
    c_[0] -= s;
    return *this;
}
Jet& Jet::operator*=(double s) {
    for (auto& x : c_) x *= s;
    return *this;
}
Jet& Jet::operator/=(double s) {
    for (auto& x : c_) x /= s;
    return *this;
}
Jet Jet::operator-() const {
    Jet r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

Jet operator*(const Jet& a, const Jet& b) {
    if (!a.valid() || !b.valid()) throw std::invalid_argument("Jet: uninitialised operand");
    if (a.dim() != b.dim()) throw std::invalid_argument("Jet: dimension mismatch");
    int k = std::min(a.order(), b.order());
    Jet r(a.dim(), k);
    const double* pa = a.c_.data();
    const double* pb = b.c_.data();
    double* pr = r.c_.data();
    for (const auto& [i, j, l] : r.lay_->mul) pr[l] += pa[i] * pb[j];
    return r;
}

Jet operator/(const Jet& a, const Jet& b) { return a * inv(b); }
Jet operator/(double s, const Jet& b) { return inv(b) * s; }

Jet exp(const Jet& x) {
    int k = x.order();
    std::vector<double> t(k + 1);
    double e = std::exp(x.value()), f = 1.0;
    for (int j = 0; j <= k; ++j) {
        if (j > 0) f *= j;
        t[j] = e / f;
    }
    return x.compose(t);
}

Jet log(const Jet& x) {
    double x0 = x.value();
    if (!(x0 > 0.0)) throw EvaluationError("log of nonpositive value");
    int k = x.order();
    std::vector<double> t(k + 1);
    t[0] = std::log(x0);
    for (int j = 1; j <= k; ++j) t[j] = ((j % 2) ? 1.0 : -1.0) / (j * std::pow(x0, j));
    return x.compose(t);
}

Jet sin(const Jet& x) {
    int k = x.order();
    double s = std::sin(x.value()), c = std::cos(x.value()), f = 1.0;
    const double cyc[4] = {s, c, -s, -c};
    std::vector<double> t(k + 1);
    for (int j = 0; j <= k; ++j) {
        if (j > 0) f *= j;
        t[j] = cyc[j % 4] / f;
    }
    return x.compose(t);
}

Jet cos(const Jet& x) {
    int k = x.order();
    double s = std::sin(x.value()), c = std::cos(x.value()), f = 1.0;
    const double cyc[4] = {c, -s, -c, s};
    std::vector<double> t(k + 1);
    for (int j = 0; j <= k; ++j) {
        if (j > 0) f *= j;
        t[j] = cyc[j % 4] / f;
    }
    return x.compose(t);
}

Jet pow(const Jet& x, double p) {
    double x0 = x.value();
    bool nonneg_int = p >= 0.0 && std::floor(p) == p;
    if (!nonneg_int) {
        if (x0 < 0.0 && std::floor(p) != p) throw EvaluationError("pow: negative base, fractional exponent");
        if (x0 == 0.0) throw EvaluationError("pow: zero base with negative or fractional exponent");
    }
    int k = x.order();
    std::vector<double> t(k + 1, 0.0);
    double binom = 1.0;
    for (int j = 0; j <= k; ++j) {
        if (j > 0) binom *= (p - (j - 1)) / j;
        if (nonneg_int && j > p) break;
        t[j] = binom * std::pow(x0, p - j);
    }
    return x.compose(t);
}

Jet sqrt(const Jet& x) {
    if (x.value() < 0.0) throw EvaluationError("sqrt of negative value");
    return pow(x, 0.5);
}

Jet inv(const Jet& x) {
    double x0 = x.value();
    if (x0 == 0.0) throw EvaluationError("division by zero");
    int k = x.order();
    std::vector<double> t(k + 1);
    double r = 1.0 / x0, q = r;
    for (int j = 0; j <= k; ++j) {
        t[j] = ((j % 2) ? -q : q);
        q *= r;
    }
    return x.compose(t);
}

int min_order(const std::vector<Jet>& js) {
    int k = 1 << 30;
    for (const auto& j : js) k = std::min(k, j.order());
    return k;
}

Jet3 to_jet3(const Jet& j) {
    if (j.order() < 3) throw EvaluationError("to_jet3: jet order below 3");
    int d = j.dim();
    Jet3 r;
    r.dim = d;
    r.value = j.value();
    r.grad.resize(d);
    r.hess.resize(d, d);
    r.third.assign(d * d * d, 0.0);
    for (int a = 0; a < d; ++a) {
        r.grad(a) = j.partial(a);
        for (int b = 0; b < d; ++b) {
            r.hess(a, b) = j.partial(a, b);
            for (int c = 0; c < d; ++c) r.third[(a * d + b) * d + c] = j.partial(a, b, c);
        }
    }
    return r;
}

Jet3 jet3_product(const Jet3& f, const Jet3& g) {
    int d = f.dim;
    Jet3 r;
    r.dim = d;
    r.value = f.value * g.value;
    r.grad = f.grad * g.value + f.value * g.grad;
    r.hess.resize(d, d);
    r.third.assign(d * d * d, 0.0);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            r.hess(i, j) = f.hess(i, j) * g.value + f.grad(i) * g.grad(j) + f.grad(j) * g.grad(i) +
                           f.value * g.hess(i, j);
            for (int k = 0; k < d; ++k) {
                r.third[(i * d + j) * d + k] =
                    f.third_at(i, j, k) * g.value + f.hess(i, j) * g.grad(k) + f.hess(i, k) * g.grad(j) +
                    f.hess(j, k) * g.grad(i) + f.grad(i) * g.hess(j, k) + f.grad(j) * g.hess(i, k) +
                    f.grad(k) * g.hess(i, j) + f.value * g.third_at(i, j, k);
            }
        }
    return r;
}

}  // namespace crt
