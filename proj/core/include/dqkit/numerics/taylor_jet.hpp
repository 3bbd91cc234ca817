#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "dqkit/numerics/rational.hpp"

namespace dqkit {

/// Floating Taylor jet of a function of the first chart coordinate at a fixed point h0:
/// c_n = f^{(n)}(h0) / n!. All other coordinates are cyclic (derivative zero), which
/// models rotation-invariant data on an (h, theta) chart.
///
/// Each derivative consumes one order; results carry the smallest order among operands.
class TaylorJet {
 public:
  TaylorJet() = default;
  explicit TaylorJet(std::vector<double> c) : c_(std::move(c)) {
    if (c_.empty()) throw std::invalid_argument("Taylor jet needs at least one coefficient");
  }
  static TaylorJet constant(int order, double v) {
    TaylorJet t(std::vector<double>(static_cast<std::size_t>(order) + 1, 0.0));
    t.c_[0] = v;
    return t;
  }
  /// The coordinate function h itself, expanded at h0.
  static TaylorJet variable(int order, double h0) {
    TaylorJet t = constant(order, h0);
    if (order >= 1) t.c_[1] = 1.0;
    return t;
  }

  int order() const { return static_cast<int>(c_.size()) - 1; }
  double value() const { return c_[0]; }
  /// n-th derivative at h0.
  double derivative(int n) const {
    double f = 1;
    for (int k = 2; k <= n; ++k) f *= k;
    return c_.at(static_cast<std::size_t>(n)) * f;
  }
  const std::vector<double>& coefficients() const { return c_; }

  TaylorJet zero() const { return constant(order(), 0.0); }
  TaylorJet constant(const Rational& q) const { return constant(order(), to_double(q)); }
  TaylorJet derive(int j) const {
    if (j != 0) return zero();
    if (order() == 0) throw std::domain_error("Taylor jet exhausted by differentiation");
    std::vector<double> d(c_.size() - 1);
    for (std::size_t n = 0; n + 1 < c_.size(); ++n) d[n] = static_cast<double>(n + 1) * c_[n + 1];
    return TaylorJet(std::move(d));
  }
  bool is_zero() const {
    for (double v : c_)
      if (v != 0.0) return false;
    return true;
  }

  TaylorJet& operator+=(const TaylorJet& o) {
    shrink(o.order());
    for (std::size_t n = 0; n < c_.size(); ++n) c_[n] += o.c_[n];
    return *this;
  }
  TaylorJet& operator-=(const TaylorJet& o) {
    shrink(o.order());
    for (std::size_t n = 0; n < c_.size(); ++n) c_[n] -= o.c_[n];
    return *this;
  }
  TaylorJet& operator*=(double s) {
    for (double& v : c_) v *= s;
    return *this;
  }

  friend TaylorJet operator+(TaylorJet a, const TaylorJet& b) { return a += b; }
  friend TaylorJet operator-(TaylorJet a, const TaylorJet& b) { return a -= b; }
  friend TaylorJet operator-(TaylorJet a) { return a *= -1.0; }
  friend TaylorJet operator*(TaylorJet a, const Rational& q) { return a *= to_double(q); }
  friend TaylorJet operator*(TaylorJet a, double s) { return a *= s; }
  friend TaylorJet operator*(const TaylorJet& a, const TaylorJet& b) {
    const int n = std::min(a.order(), b.order());
    std::vector<double> r(static_cast<std::size_t>(n) + 1, 0.0);
    for (int i = 0; i <= n; ++i)
      for (int j = 0; i + j <= n; ++j) r[i + j] += a.c_[i] * b.c_[j];
    return TaylorJet(std::move(r));
  }

 private:
  void shrink(int order) {
    if (order < this->order()) c_.resize(static_cast<std::size_t>(order) + 1);
  }

  std::vector<double> c_{0.0};
};

inline bool is_invertible(const TaylorJet& a) { return a.value() != 0.0 && std::isfinite(a.value()); }

inline TaylorJet invert(const TaylorJet& a) {
  if (!is_invertible(a)) throw std::domain_error("Taylor jet has zero value");
  const auto& c = a.coefficients();
  std::vector<double> b(c.size(), 0.0);
  b[0] = 1.0 / c[0];
  for (std::size_t k = 1; k < c.size(); ++k) {
    double s = 0;
    for (std::size_t i = 1; i <= k; ++i) s += c[i] * b[k - i];
    b[k] = -s * b[0];
  }
  return TaylorJet(std::move(b));
}

inline bool is_invertible(double x) { return x != 0.0; }
inline double invert(double x) { return 1.0 / x; }

}  // namespace dqkit
