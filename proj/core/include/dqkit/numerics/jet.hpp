#pragma once

#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "dqkit/numerics/rational.hpp"
#include "dqkit/numerics/ring.hpp"

namespace dqkit {

/// Truncated power series  sum_{j <= J} e^j c_j  in an auxiliary parameter e with
/// coefficients in a ring C. Used both for small-parameter metric families and for
/// polynomial dependence on a deformation parameter t.
template <CoefficientRing C>
class Jet {
 public:
  Jet() = default;
  /// The constant jet `value` of order J.
  Jet(int order, C value) {
    if (order < 0) throw std::invalid_argument("jet order must be non-negative");
    c_.assign(static_cast<std::size_t>(order) + 1, value.zero());
    c_[0] = std::move(value);
  }
  explicit Jet(std::vector<C> coeffs) : c_(std::move(coeffs)) {
    if (c_.empty()) throw std::invalid_argument("jet needs at least one coefficient");
  }

  /// c0 + c1 e, padded with zeros to order J.
  static Jet linear(int order, const C& c0, const C& c1) {
    Jet r(order, c0);
    if (order >= 1) r.c_[1] = c1;
    return r;
  }

  int order() const { return static_cast<int>(c_.size()) - 1; }
  const C& operator[](int j) const { return c_[static_cast<std::size_t>(j)]; }
  C& operator[](int j) { return c_[static_cast<std::size_t>(j)]; }
  std::span<const C> coefficients() const { return c_; }

  Jet zero() const { return Jet(order(), c_[0].zero()); }
  Jet constant(const Rational& q) const { return Jet(order(), c_[0].constant(q)); }
  Jet derive(int j) const {
    Jet r = *this;
    for (auto& c : r.c_) c = c.derive(j);
    return r;
  }
  bool is_zero() const {
    for (const auto& c : c_)
      if (!c.is_zero()) return false;
    return true;
  }

  template <class F>
  Jet map(F&& f) const {
    Jet r = *this;
    for (auto& c : r.c_) c = f(c);
    return r;
  }

  Jet& operator+=(const Jet& o) {
    check(o);
    for (std::size_t j = 0; j < c_.size(); ++j) c_[j] += o.c_[j];
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    check(o);
    for (std::size_t j = 0; j < c_.size(); ++j) c_[j] -= o.c_[j];
    return *this;
  }
  Jet& operator*=(const Rational& q) {
    for (auto& c : c_) c = c * q;
    return *this;
  }

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator-(Jet a) { return a *= Rational(-1); }
  friend Jet operator*(Jet a, const Rational& q) { return a *= q; }
  friend Jet operator*(const Rational& q, Jet a) { return a *= q; }
  friend Jet operator*(const Jet& a, const Jet& b) {
    a.check(b);
    Jet r = a.zero();
    const int n = a.order();
    for (int i = 0; i <= n; ++i) {
      if (a[i].is_zero()) continue;
      for (int j = 0; i + j <= n; ++j)
        if (!b[j].is_zero()) r[i + j] += a[i] * b[j];
    }
    return r;
  }
  /// Scaling by an element of the coefficient ring.
  friend Jet operator*(Jet a, const C& c) {
    for (auto& x : a.c_) x = x * c;
    return a;
  }
  friend bool operator==(const Jet& a, const Jet& b) { return a.c_ == b.c_; }

 private:
  void check(const Jet& o) const {
    if (o.c_.size() != c_.size()) throw std::invalid_argument("jet order mismatch");
  }

  std::vector<C> c_;
};

template <CoefficientRing C>
bool is_invertible(const Jet<C>& a) {
  return is_invertible(a[0]);
}

/// Geometric-series inverse; requires an invertible leading coefficient.
template <CoefficientRing C>
Jet<C> invert(const Jet<C>& a) {
  if (!is_invertible(a[0])) throw std::domain_error("jet head is not invertible");
  const int n = a.order();
  Jet<C> b = a.zero();
  C h = invert(a[0]);
  b[0] = h;
  for (int k = 1; k <= n; ++k) {
    C s = a[0].zero();
    for (int i = 1; i <= k; ++i) s += a[i] * b[k - i];
    b[k] = -(h * s);
  }
  return b;
}

/// log(a / a_0) for a jet whose head a_0 is an invertible constant,
/// i.e. log(a) up to the additive constant log(a_0).
template <CoefficientRing C>
Jet<C> log_relative(const Jet<C>& a) {
  Jet<C> x = a * invert(a[0]);
  x[0] = x[0].zero();
  Jet<C> term = x, out = x;
  for (int n = 2; n <= a.order(); ++n) {
    term = term * x;
    out += term * Rational(n % 2 == 0 ? -1 : 1, n);
  }
  return out;
}

}  // namespace dqkit
