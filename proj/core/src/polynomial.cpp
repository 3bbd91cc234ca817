#include "dqkit/numerics/polynomial.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace dqkit {

Polynomial::Polynomial(int nvars) : nvars_(nvars) {
  if (nvars < 1 || nvars > 6) throw std::invalid_argument("polynomial needs 1..6 variables");
}

Polynomial Polynomial::constant(int nvars, const Rational& c) {
  Polynomial p(nvars);
  p.add_term(Exponent{}, c);
  return p;
}

Polynomial Polynomial::variable(int nvars, int j) {
  if (j < 0 || j >= nvars) throw std::invalid_argument("variable index out of range");
  Exponent e{};
  e[j] = 1;
  return monomial(nvars, e, Rational(1));
}

Polynomial Polynomial::monomial(int nvars, const Exponent& e, const Rational& c) {
  Polynomial p(nvars);
  for (int j = nvars; j < 6; ++j)
    if (e[j] != 0) throw std::invalid_argument("exponent beyond the declared variables");
  p.add_term(e, c);
  return p;
}

Polynomial Polynomial::univariate(std::span<const Rational> coeffs) {
  Polynomial p(1);
  for (std::size_t n = 0; n < coeffs.size(); ++n) {
    Exponent e{};
    e[0] = static_cast<std::uint8_t>(n);
    p.add_term(e, coeffs[n]);
  }
  return p;
}

Rational Polynomial::coefficient(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

int Polynomial::degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (auto v : e) s += v;
    d = std::max(d, s);
  }
  return d;
}

int Polynomial::degree_in(int j) const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, static_cast<int>(e[j]));
  return d;
}

std::vector<Rational> Polynomial::univariate_coefficients() const {
  if (nvars_ != 1) throw std::invalid_argument("not a univariate polynomial");
  std::vector<Rational> c(static_cast<std::size_t>(std::max(degree(), 0)) + 1);
  for (const auto& [e, v] : terms_) c[e[0]] = v;
  return c;
}

Polynomial Polynomial::derive(int j) const {
  if (j < 0 || j >= nvars_) throw std::invalid_argument("derivative direction out of range");
  Polynomial out(nvars_);
  for (const auto& [e, c] : terms_) {
    if (e[j] == 0) continue;
    Exponent f = e;
    --f[j];
    out.terms_.emplace(f, c * e[j]);
  }
  return out;
}

Rational Polynomial::evaluate(std::span<const Rational> x) const {
  Rational s;
  for (const auto& [e, c] : terms_) {
    Rational t = c;
    for (int j = 0; j < nvars_; ++j)
      for (int k = 0; k < e[j]; ++k) t *= x[j];
    s += t;
  }
  return s;
}

double Polynomial::evaluate(std::span<const double> x) const {
  double s = 0;
  for (const auto& [e, c] : terms_) {
    double t = c.get_d();
    for (int j = 0; j < nvars_; ++j)
      for (int k = 0; k < e[j]; ++k) t *= x[j];
    s += t;
  }
  return s;
}

double Polynomial::operator()(double x) const {
  // Horner on the dense coefficient list.
  auto c = univariate_coefficients();
  double s = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) s = s * x + it->get_d();
  return s;
}

void Polynomial::add_term(const Exponent& e, const Rational& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (nvars_ == 0) nvars_ = o.nvars_;
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (nvars_ == 0) nvars_ = o.nvars_;
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& q) {
  if (sgn(q) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, c] : terms_) c *= q;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial out(std::max(std::max(a.nvars_, b.nvars_), 1));
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      Polynomial::Exponent e;
      for (int j = 0; j < 6; ++j) e[j] = static_cast<std::uint8_t>(ea[j] + eb[j]);
      out.add_term(e, ca * cb);
    }
  return out;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    os << (first ? "" : " + ") << "(" << dqkit::to_string(c) << ")";
    first = false;
    for (int j = 0; j < nvars_; ++j)
      if (e[j]) os << "*x" << j + 1 << (e[j] > 1 ? "^" + std::to_string(e[j]) : "");
  }
  return os.str();
}

Polynomial integrate_univariate(const Polynomial& p) {
  if (p.nvars() != 1) throw std::invalid_argument("not a univariate polynomial");
  Polynomial out(1);
  for (const auto& [e, c] : p.terms()) {
    Polynomial::Exponent f{};
    f[0] = static_cast<std::uint8_t>(e[0] + 1);
    out.add_term(f, c / (e[0] + 1));
  }
  return out;
}

PolynomialDivision divide_univariate(const Polynomial& a, const Polynomial& b) {
  if (a.nvars() > 1 || b.nvars() > 1) throw std::invalid_argument("not a univariate polynomial");
  if (b.is_zero()) throw std::domain_error("division by the zero polynomial");
  const int db = b.degree();
  const Rational lead = b.coefficient(Polynomial::Exponent{static_cast<std::uint8_t>(db)});
  Polynomial q(1), r = a.is_zero() ? Polynomial(1) : a;
  while (!r.is_zero() && r.degree() >= db) {
    const int dr = r.degree();
    Polynomial::Exponent e{};
    e[0] = static_cast<std::uint8_t>(dr - db);
    Polynomial t = Polynomial::monomial(1, e, r.coefficient(Polynomial::Exponent{static_cast<std::uint8_t>(dr)}) / lead);
    q += t;
    r -= t * b;
  }
  return {std::move(q), std::move(r)};
}

Polynomial invert(const Polynomial& p) {
  if (!is_invertible(p)) throw std::domain_error("only nonzero constant polynomials are invertible");
  return Polynomial::constant(p.nvars(), 1 / p.terms().begin()->second);
}

}  // namespace dqkit
