// SPDX-License-Identifier: MIT
#include "crt/linalg.hpp"

#include <cmath>
#include <string>

namespace crt {

JetTensor::JetTensor(std::vector<int> shape, int dim, int order) : shape_(std::move(shape)) {
    int total = 1;
    for (int e : shape_) total *= e;
    d_.assign(total, Jet(dim, order));
}

int JetTensor::min_order() const { return crt::min_order(d_); }

JetTensor JetTensor::truncate(int order) const {
    JetTensor r = *this;
    for (auto& j : r.d_) j = j.truncate(order);
    return r;
}

Eigen::MatrixXd JetTensor::matrix_values() const {
    Eigen::MatrixXd M(shape_[0], shape_[1]);
    for (int i = 0; i < shape_[0]; ++i)
        for (int j = 0; j < shape_[1]; ++j) M(i, j) = (*this)(i, j).value();
    return M;
}

JetVec solve(JetTensor A, JetVec b) {
    const int n = A.extent(0);
    if (A.extent(1) != n || static_cast<int>(b.size()) != n) throw std::invalid_argument("solve: shape mismatch");
    double scale = 0.0;
    for (const auto& j : A.data()) scale = std::max(scale, std::abs(j.value()));
    for (int c = 0; c < n; ++c) {
        int piv = c;
        for (int r = c + 1; r < n; ++r)
            if (std::abs(A(r, c).value()) > std::abs(A(piv, c).value())) piv = r;
        if (std::abs(A(piv, c).value()) <= 1e-13 * (scale > 0 ? scale : 1.0))
            throw DegenerateError("solve: singular system (column " + std::to_string(c) + ")");
        if (piv != c) {
            for (int k = 0; k < n; ++k) std::swap(A(c, k), A(piv, k));
            std::swap(b[c], b[piv]);
        }
        Jet ip = inv(A(c, c));
        for (int r = c + 1; r < n; ++r) {
            Jet f = A(r, c) * ip;
            for (int k = c + 1; k < n; ++k) A(r, k) -= f * A(c, k);
            b[r] -= f * b[c];
        }
    }
    JetVec x(n);
    for (int r = n - 1; r >= 0; --r) {
        Jet s = b[r];
        for (int k = r + 1; k < n; ++k) s -= A(r, k) * x[k];
        x[r] = s / A(r, r);
    }
    return x;
}

JetTensor inverse(const JetTensor& A) {
    const int n = A.extent(0);
    const Jet& j0 = A(0, 0);
    JetTensor R({n, n}, j0.dim(), A.min_order());
    for (int c = 0; c < n; ++c) {
        JetVec e(n, Jet(j0.dim(), A.min_order(), 0.0));
        e[c] += 1.0;
        JetVec x = solve(A, e);
        for (int r = 0; r < n; ++r) R(r, c) = x[r];
    }
    return R;
}

JetTensor matmul(const JetTensor& A, const JetTensor& B) {
    const int n = A.extent(0), k = A.extent(1), m = B.extent(1);
    if (B.extent(0) != k) throw std::invalid_argument("matmul: shape mismatch");
    int ord = std::min(A.min_order(), B.min_order());
    JetTensor R({n, m}, A(0, 0).dim(), ord);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j)
            for (int l = 0; l < k; ++l) R(i, j) += A(i, l) * B(l, j);
    return R;
}

Jet dot(const JetVec& a, const JetVec& b) {
    Jet s = a[0] * b[0];
    for (size_t i = 1; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

JetVec truncate(const JetVec& v, int order) {
    JetVec r;
    r.reserve(v.size());
    for (const auto& j : v) r.push_back(j.truncate(order));
    return r;
}

}  // namespace crt
