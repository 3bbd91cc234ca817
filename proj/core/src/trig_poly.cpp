#include "dqkit/numerics/trig_poly.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace dqkit {

namespace {

Frequency negate(const Frequency& k) {
  Frequency r{};
  for (int j = 0; j < kMaxTorusDim; ++j) r[j] = static_cast<std::int16_t>(-k[j]);
  return r;
}

bool is_zero_frequency(const Frequency& k) {
  return std::all_of(k.begin(), k.end(), [](auto v) { return v == 0; });
}

}  // namespace

Frequency make_frequency(std::span<const int> k) {
  if (k.size() > static_cast<std::size_t>(kMaxTorusDim)) throw std::invalid_argument("frequency vector too long");
  Frequency f{};
  for (std::size_t j = 0; j < k.size(); ++j) f[j] = static_cast<std::int16_t>(k[j]);
  return f;
}

TrigPoly::TrigPoly(int dim) : dim_(dim) {
  if (dim < 1 || dim > kMaxTorusDim) throw std::invalid_argument("torus dimension out of range");
}

TrigPoly TrigPoly::constant(int dim, const Gaussian& c) { return mode(dim, Frequency{}, c); }

TrigPoly TrigPoly::mode(int dim, const Frequency& k, const Gaussian& c) {
  TrigPoly p(dim);
  for (int j = dim; j < kMaxTorusDim; ++j)
    if (k[j] != 0) throw std::invalid_argument("frequency has components beyond the torus dimension");
  p.add_term(k, c);
  return p;
}

TrigPoly TrigPoly::cosine(int dim, const Frequency& k, const Rational& a) {
  Rational half = a / 2;
  TrigPoly p = mode(dim, k, Gaussian(half));
  p.add_term(negate(k), Gaussian(half));
  return p;
}

TrigPoly TrigPoly::sine(int dim, const Frequency& k, const Rational& a) {
  // a sin = (a / 2i)(e^{ik} - e^{-ik}) = -(ia/2) e^{ik} + (ia/2) e^{-ik}
  Rational half = a / 2;
  TrigPoly p = mode(dim, k, Gaussian(Rational(0), -half));
  p.add_term(negate(k), Gaussian(Rational(0), half));
  return p;
}

Gaussian TrigPoly::coefficient(const Frequency& k) const {
  auto it = terms_.find(k);
  return it == terms_.end() ? Gaussian() : it->second;
}

Gaussian TrigPoly::mean() const { return coefficient(Frequency{}); }

bool TrigPoly::is_real() const {
  for (const auto& [k, c] : terms_)
    if (!(coefficient(negate(k)) == c.conj())) return false;
  return true;
}

bool TrigPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && is_zero_frequency(terms_.begin()->first));
}

int TrigPoly::max_frequency() const {
  int m = 0;
  for (const auto& [k, c] : terms_)
    for (int j = 0; j < dim_; ++j) m = std::max(m, std::abs(static_cast<int>(k[j])));
  return m;
}

TrigPoly TrigPoly::derive(int j) const {
  if (j < 0 || j >= dim_) throw std::invalid_argument("derivative direction out of range");
  TrigPoly out(dim_);
  for (const auto& [k, c] : terms_) {
    if (k[j] == 0) continue;
    // i k_j (re + i im) = -k_j im + i k_j re
    Rational kj(k[j]);
    out.terms_.emplace_hint(out.terms_.end(), k, Gaussian(-kj * c.im, kj * c.re));
  }
  return out;
}

TrigPoly TrigPoly::conj() const {
  TrigPoly out(dim_);
  for (const auto& [k, c] : terms_) out.terms_.emplace(negate(k), c.conj());
  return out;
}

TrigPoly TrigPoly::real_part() const {
  TrigPoly out = *this;
  out += conj();
  out *= Rational(1, 2);
  return out;
}

TrigPoly TrigPoly::imag_part() const {
  // (f - conj f) / 2i
  TrigPoly out = *this;
  out -= conj();
  out *= Gaussian(Rational(0), Rational(-1, 2));
  return out;
}

void TrigPoly::add_term(const Frequency& k, const Gaussian& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(k, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void TrigPoly::check_dim(const TrigPoly& o) const {
  if (dim_ != o.dim_ && dim_ != 0 && o.dim_ != 0) throw std::invalid_argument("torus dimension mismatch");
}

TrigPoly& TrigPoly::operator+=(const TrigPoly& o) {
  check_dim(o);
  if (dim_ == 0) dim_ = o.dim_;
  for (const auto& [k, c] : o.terms_) add_term(k, c);
  return *this;
}

TrigPoly& TrigPoly::operator-=(const TrigPoly& o) {
  check_dim(o);
  if (dim_ == 0) dim_ = o.dim_;
  for (const auto& [k, c] : o.terms_) add_term(k, -c);
  return *this;
}

TrigPoly& TrigPoly::operator*=(const Gaussian& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [k, v] : terms_) v *= c;
  return *this;
}

TrigPoly& TrigPoly::operator*=(const Rational& q) {
  if (sgn(q) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [k, v] : terms_) v *= q;
  return *this;
}

TrigPoly operator*(const TrigPoly& a, const TrigPoly& b) {
  a.check_dim(b);
  TrigPoly out = a.dim_ ? a.zero() : b.zero();
  if (a.terms_.empty() || b.terms_.empty()) return out;
  const int n = a.dim_;
  for (const auto& [ka, ca] : a.terms_) {
    for (const auto& [kb, cb] : b.terms_) {
      Frequency k{};
      for (int j = 0; j < n; ++j) k[j] = static_cast<std::int16_t>(ka[j] + kb[j]);
      out.add_term(k, ca * cb);
    }
  }
  return out;
}

std::string TrigPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << dqkit::to_string(c) << ")e[";
    for (int j = 0; j < dim_; ++j) os << (j ? "," : "") << k[j];
    os << "]";
  }
  return os.str();
}

Rational torus_integrate(const TrigPoly& f) {
  Gaussian c = f.mean();
  if (!c.is_real() || !f.is_real()) throw std::invalid_argument("torus_integrate expects a real function");
  return c.re;
}

TrigPoly flat_laplacian(const TrigPoly& f) {
  TrigPoly out(f.dim());
  for (const auto& [k, c] : f.terms()) {
    long k2 = 0;
    for (int j = 0; j < f.dim(); ++j) k2 += static_cast<long>(k[j]) * k[j];
    if (k2 != 0) out.add_term(k, c * Rational(-k2));
  }
  return out;
}

TrigPoly poisson_solve(const TrigPoly& f) {
  if (!f.mean().is_zero()) throw std::invalid_argument("poisson_solve requires a zero-mean right-hand side");
  TrigPoly out(f.dim());
  for (const auto& [k, c] : f.terms()) {
    long k2 = 0;
    for (int j = 0; j < f.dim(); ++j) k2 += static_cast<long>(k[j]) * k[j];
    out.add_term(k, c * Rational(-1, k2));
  }
  return out;
}

bool is_invertible(const TrigPoly& f) { return f.is_constant() && !f.is_zero(); }

TrigPoly invert(const TrigPoly& f) {
  if (!is_invertible(f)) throw std::domain_error("only nonzero constants are invertible");
  return TrigPoly::constant(f.dim(), f.mean().inverse());
}

}  // namespace dqkit
