#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>

#include "dqkit/numerics/rational.hpp"

namespace dqkit {

/// Truncated Laurent series  sum_{k <= N} nu^k c_k  in the formal parameter nu.
///
/// Exponents above the truncation order are dropped on every operation, and a
/// binary operation truncates at the smaller of the two orders. `C{}` must act
/// as an additive zero.
template <class C>
class NuSeries {
 public:
  using Map = std::map<int, C>;

  NuSeries() = default;
  explicit NuSeries(int truncation) : trunc_(truncation) {}
  NuSeries(const C& c, int truncation) : trunc_(truncation) { add(0, c); }

  /// c nu^k as a series truncated at `truncation`.
  static NuSeries monomial(int k, const C& c, int truncation) {
    NuSeries s(truncation);
    s.add(k, c);
    return s;
  }

  int truncation() const { return trunc_; }
  const Map& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Smallest stored exponent; truncation()+1 for the zero series.
  int min_order() const { return terms_.empty() ? trunc_ + 1 : terms_.begin()->first; }

  C coefficient(int k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? C{} : it->second;
  }

  void add(int k, const C& c) {
    if (k > trunc_ || is_zero_value(c)) return;
    auto [it, inserted] = terms_.try_emplace(k, c);
    if (!inserted) {
      it->second += c;
      if (is_zero_value(it->second)) terms_.erase(it);
    }
  }

  NuSeries truncated(int order) const {
    NuSeries r(std::min(order, trunc_));
    for (const auto& [k, c] : terms_) r.add(k, c);
    return r;
  }

  /// Multiplication by nu^s (s may be negative).
  NuSeries shifted(int s) const {
    NuSeries r(trunc_ + s);
    for (const auto& [k, c] : terms_) r.terms_.emplace(k + s, c);
    return r;
  }

  template <class F>
  auto map(F&& f) const -> NuSeries<std::invoke_result_t<F, const C&>> {
    NuSeries<std::invoke_result_t<F, const C&>> r(trunc_);
    for (const auto& [k, c] : terms_) r.add(k, f(c));
    return r;
  }

  NuSeries& operator+=(const NuSeries& o) {
    trunc_ = std::min(trunc_, o.trunc_);
    drop_above(trunc_);
    for (const auto& [k, c] : o.terms_) add(k, c);
    return *this;
  }
  NuSeries& operator-=(const NuSeries& o) {
    trunc_ = std::min(trunc_, o.trunc_);
    drop_above(trunc_);
    for (const auto& [k, c] : o.terms_) add(k, -c);
    return *this;
  }
  NuSeries& operator*=(const Rational& q) {
    if (sgn(q) == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [k, c] : terms_) c *= q;
    return *this;
  }

  friend NuSeries operator+(NuSeries a, const NuSeries& b) { return a += b; }
  friend NuSeries operator-(NuSeries a, const NuSeries& b) { return a -= b; }
  friend NuSeries operator-(NuSeries a) { return a *= Rational(-1); }
  friend NuSeries operator*(NuSeries a, const Rational& q) { return a *= q; }

  /// Cauchy product. The result is valid up to min(N_a + v_b, N_b + v_a),
  /// with v the valuation, which is what the truncation records.
  friend NuSeries operator*(const NuSeries& a, const NuSeries& b) {
    int trunc = std::min(a.trunc_, b.trunc_);
    if (!a.terms_.empty() && !b.terms_.empty())
      trunc = std::min(a.trunc_ + b.min_order(), b.trunc_ + a.min_order());
    NuSeries r(trunc);
    for (const auto& [ka, ca] : a.terms_)
      for (const auto& [kb, cb] : b.terms_)
        if (ka + kb <= trunc) r.add(ka + kb, ca * cb);
    return r;
  }

  friend bool operator==(const NuSeries& a, const NuSeries& b) { return a.terms_ == b.terms_; }

 private:
  static bool is_zero_value(const C& c) {
    if constexpr (requires { c.is_zero(); })
      return c.is_zero();
    else
      return c == C{};
  }
  void drop_above(int n) {
    terms_.erase(terms_.upper_bound(n), terms_.end());
  }

  int trunc_ = 0;
  Map terms_;
};

}  // namespace dqkit
