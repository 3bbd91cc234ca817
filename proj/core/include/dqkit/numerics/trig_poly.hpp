#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "dqkit/numerics/rational.hpp"

namespace dqkit {

inline constexpr int kMaxTorusDim = 6;

/// Integer frequency vector k in Z^n, zero-padded beyond the torus dimension.
using Frequency = std::array<std::int16_t, kMaxTorusDim>;

Frequency make_frequency(std::span<const int> k);

/// Finite Fourier sum  sum_k c_k exp(i k.x)  on the torus T^n = (R/2piZ)^n with Gaussian-rational c_k.
///
/// Real functions satisfy c_{-k} = conj(c_k). Arithmetic never rounds: products are
/// convolutions and a derivative multiplies c_k by i k_j.
class TrigPoly {
 public:
  using TermMap = std::map<Frequency, Gaussian>;

  TrigPoly() = default;
  explicit TrigPoly(int dim);

  static TrigPoly constant(int dim, const Gaussian& c);
  static TrigPoly mode(int dim, const Frequency& k, const Gaussian& c);
  /// a cos(k.x)
  static TrigPoly cosine(int dim, const Frequency& k, const Rational& a);
  /// a sin(k.x)
  static TrigPoly sine(int dim, const Frequency& k, const Rational& a);

  int dim() const { return dim_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  Gaussian coefficient(const Frequency& k) const;
  Gaussian mean() const;
  bool is_zero() const { return terms_.empty(); }
  bool is_real() const;
  bool is_constant() const;
  /// Largest |k_j| over all stored modes.
  int max_frequency() const;

  TrigPoly zero() const { return dim_ == 0 ? TrigPoly() : TrigPoly(dim_); }
  TrigPoly constant(const Rational& q) const { return constant(dim_, Gaussian(q)); }
  TrigPoly derive(int j) const;
  TrigPoly conj() const;
  TrigPoly real_part() const;
  TrigPoly imag_part() const;

  void add_term(const Frequency& k, const Gaussian& c);

  TrigPoly& operator+=(const TrigPoly& o);
  TrigPoly& operator-=(const TrigPoly& o);
  TrigPoly& operator*=(const Gaussian& c);
  TrigPoly& operator*=(const Rational& q);

  friend TrigPoly operator+(TrigPoly a, const TrigPoly& b) { return a += b; }
  friend TrigPoly operator-(TrigPoly a, const TrigPoly& b) { return a -= b; }
  friend TrigPoly operator*(const TrigPoly& a, const TrigPoly& b);
  friend TrigPoly operator*(TrigPoly a, const Rational& q) { return a *= q; }
  friend TrigPoly operator*(const Rational& q, TrigPoly a) { return a *= q; }
  friend TrigPoly operator*(TrigPoly a, const Gaussian& c) { return a *= c; }
  friend TrigPoly operator-(TrigPoly a) { return a *= Rational(-1); }
  friend bool operator==(const TrigPoly& a, const TrigPoly& b) { return a.dim_ == b.dim_ && a.terms_ == b.terms_; }

  /// Deterministic human-readable listing, used in golden dumps.
  std::string to_string() const;

 private:
  void check_dim(const TrigPoly& o) const;

  int dim_ = 0;
  TermMap terms_;
};

/// Constant Fourier coefficient, i.e. the integral divided by the symbolic volume (2pi)^n.
/// Throws std::invalid_argument if f is not real.
Rational torus_integrate(const TrigPoly& f);

/// Zero-mean u with sum_j d^2u/dx_j^2 = f. Throws std::invalid_argument if f has a nonzero mean.
TrigPoly poisson_solve(const TrigPoly& f);

/// Flat Laplacian sum_j d^2/dx_j^2.
TrigPoly flat_laplacian(const TrigPoly& f);

/// Only nonzero constants are units of the ring.
bool is_invertible(const TrigPoly& f);
TrigPoly invert(const TrigPoly& f);

}  // namespace dqkit
