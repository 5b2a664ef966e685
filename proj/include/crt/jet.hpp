// SPDX-License-Identifier: MIT
#pragma once

#include <array>
#include <memory>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

namespace crt {

struct EvaluationError : std::domain_error {
    using std::domain_error::domain_error;
};

// Monomials x^a with |a| <= order in `dim` variables, listed degree by degree.
// Inside one degree the order does not depend on `order`, so a layout of lower
// order is a prefix of a layout of higher order.
class JetLayout {
public:
    static std::shared_ptr<const JetLayout> get(int dim, int order);

    int dim = 0;
    int order = 0;
    int size = 0;
    std::vector<int> exps;          // size*dim exponents
    std::vector<int> degree_end;    // degree_end[d] = number of monomials of degree <= d
    std::vector<std::array<int, 3>> mul;  // (i, j, i*j) over pairs with deg sum <= order
    // deriv[v] = (src, dst, factor): d/dx_v maps coefficient src to dst (in the order-1 layout)
    std::vector<std::vector<std::array<int, 3>>> deriv;
    std::unordered_map<long long, int> lookup;  // packed exponent -> index

    const int* exponent(int idx) const { return exps.data() + idx * dim; }
    int index_of(const int* alpha) const;
    int degree(int idx) const;

    JetLayout(int dim, int order);
};

// Truncated multivariate Taylor polynomial around a point, coefficients c_a = d^a f / a!.
class Jet {
public:
    Jet() = default;
    Jet(int dim, int order, double value = 0.0);
    static Jet variable(int dim, int order, int var, double value);

    bool valid() const { return static_cast<bool>(lay_); }
    int dim() const { return lay_->dim; }
    int order() const { return lay_->order; }
    int size() const { return lay_->size; }
    const JetLayout& layout() const { return *lay_; }

    double value() const { return c_[0]; }
    double coeff(int idx) const { return c_[idx]; }
    double& coeff(int idx) { return c_[idx]; }
    const std::vector<double>& coeffs() const { return c_; }

    // partial derivative along the listed variables (repeats allowed)
    double partial(const std::vector<int>& vars) const;
    double partial(int i) const;
    double partial(int i, int j) const;
    double partial(int i, int j, int k) const;

    Jet derivative(int var) const;
    Jet truncate(int order) const;
    // re-express in `new_dim` variables; old variable v becomes new variable var_map[v]
    Jet embed(int new_dim, const std::vector<int>& var_map) const;
    // Taylor composition phi(x) with phi^(j)(x0)/j! supplied for j = 0..order
    Jet compose(const std::vector<double>& taylor) const;

    Jet& operator+=(const Jet& o);
    Jet& operator-=(const Jet& o);
    Jet& operator*=(const Jet& o);
    Jet& operator+=(double s);
    Jet& operator-=(double s);
    Jet& operator*=(double s);
    Jet& operator/=(double s);
    Jet operator-() const;

    friend Jet operator*(const Jet& a, const Jet& b);

private:
    void conform(const Jet& o);  // truncate *this to min order, check dims
    std::shared_ptr<const JetLayout> lay_;
    std::vector<double> c_;
};

inline Jet operator+(Jet a, const Jet& b) { return a += b; }
inline Jet operator-(Jet a, const Jet& b) { return a -= b; }
inline Jet operator+(Jet a, double s) { return a += s; }
inline Jet operator+(double s, Jet a) { return a += s; }
inline Jet operator-(Jet a, double s) { return a -= s; }
inline Jet operator-(double s, const Jet& a) { return (-a) += s; }
inline Jet operator*(Jet a, double s) { return a *= s; }
inline Jet operator*(double s, Jet a) { return a *= s; }
inline Jet operator/(Jet a, double s) { return a /= s; }
Jet operator/(const Jet& a, const Jet& b);
Jet operator/(double s, const Jet& b);

Jet exp(const Jet& x);
Jet log(const Jet& x);
Jet sin(const Jet& x);
Jet cos(const Jet& x);
Jet sqrt(const Jet& x);
Jet pow(const Jet& x, double p);
Jet inv(const Jet& x);

int min_order(const std::vector<Jet>& js);

// Order-3 Taylor data in derivative (not coefficient) form.
struct Jet3 {
    double value = 0.0;
    Eigen::VectorXd grad;
    Eigen::MatrixXd hess;
    std::vector<double> third;  // d^3 entries, index (i*d + j)*d + k
    int dim = 0;
    double third_at(int i, int j, int k) const { return third[(i * dim + j) * dim + k]; }
};

Jet3 to_jet3(const Jet& j);
// coefficient-level product rule on Jet3 data (independent of the Jet machinery)
Jet3 jet3_product(const Jet3& a, const Jet3& b);

}  // namespace crt
