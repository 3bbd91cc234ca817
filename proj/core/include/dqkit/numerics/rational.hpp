#pragma once

#include <gmpxx.h>

#include <compare>
#include <string>
#include <string_view>

namespace dqkit {

/// Exact rational backed by GMP; gmpxx keeps results canonical (reduced, positive denominator).
using Rational = mpq_class;

/// Parses "p/q", "p" or "-p/q". Throws std::invalid_argument on anything else, including zero denominators.
Rational parse_rational(std::string_view text);

/// Canonical fraction string, "p/q" or "p" when the denominator is 1.
std::string to_string(const Rational& q);

double to_double(const Rational& q);

Rational factorial(unsigned n);

/// Exact complex number with rational parts. Fourier coefficients live here.
struct Gaussian {
  Rational re;
  Rational im;

  Gaussian() = default;
  Gaussian(Rational r) : re(std::move(r)) {}
  Gaussian(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
  Gaussian(long r) : re(r) {}

  static Gaussian i() { return {Rational(0), Rational(1)}; }

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  bool is_real() const { return sgn(im) == 0; }
  Gaussian conj() const { return {re, -im}; }
  /// Throws std::domain_error on zero.
  Gaussian inverse() const;

  Gaussian& operator+=(const Gaussian& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  Gaussian& operator-=(const Gaussian& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  Gaussian& operator*=(const Gaussian& o);
  Gaussian& operator*=(const Rational& q) {
    re *= q;
    im *= q;
    return *this;
  }

  friend Gaussian operator+(Gaussian a, const Gaussian& b) { return a += b; }
  friend Gaussian operator-(Gaussian a, const Gaussian& b) { return a -= b; }
  friend Gaussian operator*(Gaussian a, const Gaussian& b) { return a *= b; }
  friend Gaussian operator*(Gaussian a, const Rational& q) { return a *= q; }
  friend Gaussian operator*(const Rational& q, Gaussian a) { return a *= q; }
  friend Gaussian operator-(const Gaussian& a) { return {-a.re, -a.im}; }
  friend bool operator==(const Gaussian& a, const Gaussian& b) { return a.re == b.re && a.im == b.im; }
};

std::string to_string(const Gaussian& z);

inline bool is_invertible(const Rational& q) { return sgn(q) != 0; }
inline Rational invert(const Rational& q) { return 1 / q; }
inline bool is_invertible(const Gaussian& z) { return !z.is_zero(); }
inline Gaussian invert(const Gaussian& z) { return z.inverse(); }

}  // namespace dqkit
