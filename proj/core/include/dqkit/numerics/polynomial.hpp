#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "dqkit/numerics/rational.hpp"

namespace dqkit {

/// Sparse multivariate polynomial with exact rational coefficients in at most 6 variables.
class Polynomial {
 public:
  using Exponent = std::array<std::uint8_t, 6>;
  using TermMap = std::map<Exponent, Rational>;

  Polynomial() = default;
  explicit Polynomial(int nvars);

  static Polynomial constant(int nvars, const Rational& c);
  /// The coordinate x^j.
  static Polynomial variable(int nvars, int j);
  static Polynomial monomial(int nvars, const Exponent& e, const Rational& c);
  /// Univariate polynomial sum_n c_n x^n.
  static Polynomial univariate(std::span<const Rational> coeffs);

  int nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  Rational coefficient(const Exponent& e) const;
  /// Total degree; -1 for the zero polynomial.
  int degree() const;
  /// Degree in variable j; -1 for the zero polynomial.
  int degree_in(int j) const;
  /// Coefficients of x^0..x^deg for a univariate polynomial.
  std::vector<Rational> univariate_coefficients() const;

  Polynomial zero() const { return nvars_ ? Polynomial(nvars_) : Polynomial(); }
  Polynomial constant(const Rational& q) const { return constant(nvars_, q); }
  Polynomial derive(int j) const;
  bool is_zero() const { return terms_.empty(); }

  Rational evaluate(std::span<const Rational> x) const;
  double evaluate(std::span<const double> x) const;
  /// Univariate evaluation.
  double operator()(double x) const;

  void add_term(const Exponent& e, const Rational& c);

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Rational& q);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator-(Polynomial a) { return a *= Rational(-1); }
  friend Polynomial operator*(Polynomial a, const Rational& q) { return a *= q; }
  friend Polynomial operator*(const Rational& q, Polynomial a) { return a *= q; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.terms_ == b.terms_; }

  std::string to_string() const;

 private:
  int nvars_ = 0;
  TermMap terms_;
};

/// Antiderivative in a univariate polynomial, vanishing at 0.
Polynomial integrate_univariate(const Polynomial& p);

/// Univariate division with remainder: a = q b + r with deg r < deg b.
struct PolynomialDivision {
  Polynomial quotient, remainder;
};
PolynomialDivision divide_univariate(const Polynomial& a, const Polynomial& b);

inline bool is_invertible(const Polynomial& p) { return p.degree() == 0; }
Polynomial invert(const Polynomial& p);

}  // namespace dqkit
