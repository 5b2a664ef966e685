// SPDX-License-Identifier: MIT
#pragma once

#include <initializer_list>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "crt/jet.hpp"

namespace crt {

struct DegenerateError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Dense array of jets with a fixed shape, row-major.
class JetTensor {
public:
    JetTensor() = default;
    JetTensor(std::vector<int> shape, int dim, int order);

    const std::vector<int>& shape() const { return shape_; }
    int extent(int k) const { return shape_[k]; }
    int size() const { return static_cast<int>(d_.size()); }

    Jet& operator()(int i) { return d_[i]; }
    const Jet& operator()(int i) const { return d_[i]; }
    Jet& operator()(int i, int j) { return d_[i * shape_[1] + j]; }
    const Jet& operator()(int i, int j) const { return d_[i * shape_[1] + j]; }
    Jet& operator()(int i, int j, int k) { return d_[(i * shape_[1] + j) * shape_[2] + k]; }
    const Jet& operator()(int i, int j, int k) const { return d_[(i * shape_[1] + j) * shape_[2] + k]; }
    Jet& operator()(int i, int j, int k, int l) { return d_[((i * shape_[1] + j) * shape_[2] + k) * shape_[3] + l]; }
    const Jet& operator()(int i, int j, int k, int l) const {
        return d_[((i * shape_[1] + j) * shape_[2] + k) * shape_[3] + l];
    }

    std::vector<Jet>& data() { return d_; }
    const std::vector<Jet>& data() const { return d_; }
    int min_order() const;
    JetTensor truncate(int order) const;
    Eigen::MatrixXd matrix_values() const;  // rank 2 only

private:
    std::vector<int> shape_;
    std::vector<Jet> d_;
};

using JetVec = std::vector<Jet>;

// Gaussian elimination with partial pivoting on the point values.
JetVec solve(JetTensor A, JetVec b);
JetTensor inverse(const JetTensor& A);
JetTensor matmul(const JetTensor& A, const JetTensor& B);

Jet dot(const JetVec& a, const JetVec& b);
JetVec truncate(const JetVec& v, int order);

}  // namespace crt
