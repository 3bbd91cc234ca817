#include "dqkit/numerics/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace dqkit {

namespace {

bool is_integer_literal(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!is_integer_literal(num) || !is_integer_literal(den) || den.front() == '-' || den.front() == '+')
    throw std::invalid_argument("not a fraction string: '" + std::string(text) + "'");
  std::string n(num);
  if (n.front() == '+') n.erase(0, 1);
  mpz_class p(n), q{std::string(den)};
  if (q == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  Rational r(p, q);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

double to_double(const Rational& q) { return q.get_d(); }

Rational factorial(unsigned n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return Rational(f);
}

Gaussian Gaussian::inverse() const {
  Rational norm = re * re + im * im;
  if (sgn(norm) == 0) throw std::domain_error("inverse of zero Gaussian rational");
  return {re / norm, -im / norm};
}

Gaussian& Gaussian::operator*=(const Gaussian& o) {
  if (sgn(im) == 0 && sgn(o.im) == 0) {
    re *= o.re;
    return *this;
  }
  Rational r = re * o.re - im * o.im;
  Rational i = re * o.im + im * o.re;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

std::string to_string(const Gaussian& z) {
  if (z.is_real()) return to_string(z.re);
  return to_string(z.re) + (sgn(z.im) < 0 ? "-" : "+") + to_string(abs(z.im)) + "i";
}

}  // namespace dqkit
