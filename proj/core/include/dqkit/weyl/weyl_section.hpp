#pragma once

#include <array>
#include <bit>
#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "dqkit/numerics/nu_series.hpp"
#include "dqkit/numerics/rational.hpp"
#include "dqkit/numerics/ring.hpp"
#include "dqkit/weyl/symplectic_structure.hpp"

namespace dqkit {

/// Monomial label y^alpha dx^I nu^k of a Weyl-valued form.
struct WeylKey {
  std::array<std::uint8_t, 6> y{};
  std::uint8_t form = 0;  // bit i set <=> dx^i present, ordered increasingly
  std::int8_t nu = 0;

  int ydeg() const {
    int d = 0;
    for (auto e : y) d += e;
    return d;
  }
  int form_degree() const { return std::popcount(form); }
  /// Fedosov grading: deg y = 1, deg nu = 2.
  int wdeg() const { return ydeg() + 2 * nu; }

  auto operator<=>(const WeylKey&) const = default;
};

/// Sign of dx^I ^ dx^J for increasing index sets, or 0 when they overlap.
inline int wedge_sign(std::uint8_t a, std::uint8_t b) {
  if (a & b) return 0;
  int inversions = 0;
  for (int j = 0; j < 8; ++j)
    if (b & (1u << j)) inversions += std::popcount(static_cast<unsigned>(a >> (j + 1)));
  return inversions % 2 ? -1 : 1;
}

/// Sign of moving dx^k to the front of dx^I (k not in I).
inline int insertion_sign(std::uint8_t form, int k) {
  return std::popcount(static_cast<unsigned>(form & ((1u << k) - 1))) % 2 ? -1 : 1;
}

/// Section of the Weyl bundle tensored with differential forms over a coordinate chart:
///   sum  a_{alpha,I,k}(x) y^alpha dx^I nu^k
/// with coefficients in the ring R. Terms of W-degree above max_wdeg() are never stored,
/// and a product is truncated at the smaller bound of its factors.
template <CoefficientRing R>
class WeylSection {
 public:
  using Structure = std::shared_ptr<const SymplecticStructure>;
  using TermMap = std::map<WeylKey, R>;

  WeylSection(Structure s, int max_wdeg, R zero) : s_(std::move(s)), max_w_(max_wdeg), zero_(zero.zero()) {
    if (!s_) throw std::invalid_argument("Weyl section needs a symplectic structure");
  }

  static WeylSection monomial(Structure s, int max_wdeg, const WeylKey& key, const R& c) {
    WeylSection w(std::move(s), max_wdeg, c);
    w.add_term(key, c);
    return w;
  }

  const Structure& structure() const { return s_; }
  int dim() const { return s_->dim(); }
  int max_wdeg() const { return max_w_; }
  const TermMap& terms() const { return terms_; }
  const R& zero_coefficient() const { return zero_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  R coefficient(const WeylKey& k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? zero_ : it->second;
  }

  void add_term(const WeylKey& k, const R& c) {
    if (k.wdeg() > max_w_ || c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(k, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  WeylSection empty_like(int max_wdeg) const { return WeylSection(s_, max_wdeg, zero_); }
  WeylSection empty_like() const { return empty_like(max_w_); }

  /// Part of W-degree exactly d.
  WeylSection homogeneous(int d) const {
    WeylSection r = empty_like();
    for (const auto& [k, c] : terms_)
      if (k.wdeg() == d) r.terms_.emplace(k, c);
    return r;
  }
  /// Part of form degree exactly q.
  WeylSection form_part(int q) const {
    WeylSection r = empty_like();
    for (const auto& [k, c] : terms_)
      if (k.form_degree() == q) r.terms_.emplace(k, c);
    return r;
  }
  WeylSection truncated(int max_wdeg) const {
    WeylSection r = empty_like(std::min(max_wdeg, max_w_));
    for (const auto& [k, c] : terms_) r.add_term(k, c);
    return r;
  }
  /// Largest W-degree present; -1 if zero.
  int top_wdeg() const {
    int d = -1;
    for (const auto& [k, c] : terms_) d = std::max(d, k.wdeg());
    return d;
  }

  WeylSection& operator+=(const WeylSection& o) {
    check(o);
    max_w_ = std::min(max_w_, o.max_w_);
    prune();
    for (const auto& [k, c] : o.terms_) add_term(k, c);
    return *this;
  }
  WeylSection& operator-=(const WeylSection& o) {
    check(o);
    max_w_ = std::min(max_w_, o.max_w_);
    prune();
    for (const auto& [k, c] : o.terms_) add_term(k, -c);
    return *this;
  }
  WeylSection& operator*=(const Rational& q) {
    if (sgn(q) == 0) terms_.clear();
    for (auto& [k, c] : terms_) c = c * q;
    return *this;
  }
  friend WeylSection operator+(WeylSection a, const WeylSection& b) { return a += b; }
  friend WeylSection operator-(WeylSection a, const WeylSection& b) { return a -= b; }
  friend WeylSection operator-(WeylSection a) { return a *= Rational(-1); }
  friend WeylSection operator*(WeylSection a, const Rational& q) { return a *= q; }
  friend WeylSection operator*(const Rational& q, WeylSection a) { return a *= q; }
  friend bool operator==(const WeylSection& a, const WeylSection& b) { return a.terms_ == b.terms_; }

  /// Multiplication of every coefficient by a base function.
  WeylSection times_function(const R& f) const {
    WeylSection r = empty_like();
    for (const auto& [k, c] : terms_) r.add_term(k, c * f);
    return r;
  }

  /// Multiplication by nu^s; terms pushed above max_wdeg are dropped.
  WeylSection nu_shifted(int s) const {
    WeylSection r = empty_like();
    for (const auto& [k, c] : terms_) {
      WeylKey t = k;
      t.nu = static_cast<std::int8_t>(k.nu + s);
      r.add_term(t, c);
    }
    return r;
  }

  /// Fiberwise product a o b = exp((nu/2) lambda^{ij} d_{y^i} d_{z^j}) a(y) b(z)|_{z=y}
  /// with the wedge product of form parts.
  friend WeylSection operator*(const WeylSection& a, const WeylSection& b) { return a.fiber_product(b, Mode::full); }

  /// Graded commutator [a, b] = a o b - (-1)^{q_a q_b} b o a, evaluated as twice the odd
  /// contraction orders of a o b.
  friend WeylSection commutator(const WeylSection& a, const WeylSection& b) {
    return a.fiber_product(b, Mode::odd).nu_shifted(1);
  }
  /// (1/nu)[a, b]; exact because every commutator carries a factor nu.
  friend WeylSection commutator_over_nu(const WeylSection& a, const WeylSection& b) {
    return a.fiber_product(b, Mode::odd);
  }

  /// sigma(a o b): the y-free, form-free part of the product of two 0-forms, as a nu-series
  /// truncated at nu^max_nu.
  friend NuSeries<R> symbol_of_product(const WeylSection& a, const WeylSection& b, int max_nu) {
    WeylSection p = a.fiber_product(b, Mode::symbol, 2 * max_nu);
    NuSeries<R> out(max_nu);
    for (const auto& [k, c] : p.terms_)
      if (k.form == 0 && k.ydeg() == 0) out.add(k.nu, c);
    return out;
  }

  /// sigma(a): y = 0, form-degree-0 part.
  NuSeries<R> symbol(int max_nu) const {
    NuSeries<R> out(max_nu);
    for (const auto& [k, c] : terms_)
      if (k.form == 0 && k.ydeg() == 0 && k.nu <= max_nu) out.add(k.nu, c);
    return out;
  }

  /// delta(a) = dx^k ^ d_{y^k} a.
  WeylSection delta() const {
    WeylSection r = empty_like();
    const int n = dim();
    for (const auto& [k, c] : terms_)
      for (int i = 0; i < n; ++i) {
        if (k.y[i] == 0 || (k.form >> i) & 1u) continue;
        WeylKey t = k;
        --t.y[i];
        t.form = static_cast<std::uint8_t>(k.form | (1u << i));
        r.add_term(t, c * Rational(insertion_sign(k.form, i) * k.y[i]));
      }
    return r;
  }

  /// delta^{-1}(a_{pq}) = (1/(p+q)) y^k i(d_{x^k}) a_{pq}; kills the p = q = 0 part.
  WeylSection delta_inverse() const {
    WeylSection r = empty_like(max_w_ + 1);
    const int n = dim();
    for (const auto& [k, c] : terms_) {
      const int pq = k.ydeg() + k.form_degree();
      if (pq == 0) continue;
      for (int i = 0; i < n; ++i) {
        if (!((k.form >> i) & 1u)) continue;
        WeylKey t = k;
        ++t.y[i];
        t.form = static_cast<std::uint8_t>(k.form & ~(1u << i));
        r.add_term(t, c * Rational(insertion_sign(t.form, i), pq));
      }
    }
    return r;
  }

  /// Exterior derivative on coefficients, dx^i ^ d_{x^i} a.
  WeylSection exterior_derivative() const {
    WeylSection r = empty_like();
    const int n = dim();
    for (const auto& [k, c] : terms_)
      for (int i = 0; i < n; ++i) {
        if ((k.form >> i) & 1u) continue;
        R d = c.derive(i);
        if (d.is_zero()) continue;
        WeylKey t = k;
        t.form = static_cast<std::uint8_t>(k.form | (1u << i));
        r.add_term(t, insertion_sign(k.form, i) > 0 ? d : -d);
      }
    return r;
  }

  /// Deterministic sorted listing for golden comparisons.
  std::string dump() const {
    std::ostringstream os;
    for (const auto& [k, c] : terms_) {
      os << "nu^" << static_cast<int>(k.nu) << " y[";
      for (int i = 0; i < dim(); ++i) os << (i ? "," : "") << static_cast<int>(k.y[i]);
      os << "] dx{";
      bool first = true;
      for (int i = 0; i < dim(); ++i)
        if ((k.form >> i) & 1u) {
          os << (first ? "" : ",") << i;
          first = false;
        }
      os << "} : " << coefficient_string(c) << "\n";
    }
    return os.str();
  }

 private:
  enum class Mode { full, odd, symbol };

  struct Pair {
    int i, j;
    Rational half_lambda;  // lambda^{ij} / 2
  };

  static std::string coefficient_string(const R& c) {
    if constexpr (requires { c.to_string(); })
      return c.to_string();
    else
      return "<coefficient>";
  }

  void check(const WeylSection& o) const {
    if (s_ != o.s_ && !(*s_ == *o.s_)) throw std::invalid_argument("Weyl sections over different symplectic structures");
  }
  void prune() {
    for (auto it = terms_.begin(); it != terms_.end();)
      it = it->first.wdeg() > max_w_ ? terms_.erase(it) : std::next(it);
  }

  std::vector<Pair> pairs() const {
    std::vector<Pair> p;
    for (int i = 0; i < dim(); ++i)
      for (int j = 0; j < dim(); ++j)
        if (sgn(s_->lambda(i, j)) != 0) p.push_back({i, j, s_->lambda(i, j) / 2});
    return p;
  }

  // Contractions of y^alpha (left) against z^beta (right): the exponential factorizes over
  // the index pairs (i, j) with lambda^{ij} != 0 because all the derivatives commute.
  struct Contraction {
    std::array<std::uint8_t, 6> y;
    int s;
    Rational coeff;
  };

  static void enumerate(const std::vector<Pair>& pairs, std::size_t p, std::array<std::uint8_t, 6>& ya,
                        std::array<std::uint8_t, 6>& yb, int s, const Rational& coeff, Mode mode,
                        std::vector<Contraction>& out) {
    if (p == pairs.size()) {
      if (mode == Mode::odd && s % 2 == 0) return;
      std::array<std::uint8_t, 6> y{};
      bool empty = true;
      for (int i = 0; i < 6; ++i) {
        y[i] = static_cast<std::uint8_t>(ya[i] + yb[i]);
        empty &= y[i] == 0;
      }
      if (mode == Mode::symbol && !empty) return;
      out.push_back({y, s, coeff});
      return;
    }
    const Pair& pr = pairs[p];
    const int amax = ya[pr.i], bmax = yb[pr.j];
    const int top = std::min(amax, bmax);
    Rational c = coeff;
    for (int t = 0; t <= top; ++t) {
      if (t > 0) {
        // multiply by (lambda/2) * (a - t + 1)(b - t + 1) / t
        c *= pr.half_lambda * (amax - t + 1) * (bmax - t + 1);
        c /= t;
      }
      ya[pr.i] = static_cast<std::uint8_t>(amax - t);
      yb[pr.j] = static_cast<std::uint8_t>(bmax - t);
      enumerate(pairs, p + 1, ya, yb, s + t, c, mode, out);
    }
    ya[pr.i] = static_cast<std::uint8_t>(amax);
    yb[pr.j] = static_cast<std::uint8_t>(bmax);
  }

  WeylSection fiber_product(const WeylSection& b, Mode mode, int wbound = -1) const {
    check(b);
    const int shift = mode == Mode::odd ? 2 : 0;  // (1/nu)[.,.] lowers W-degree by 2
    int max_w = std::min(max_w_, b.max_w_);
    if (wbound >= 0) max_w = std::min(max_w, wbound);
    WeylSection r(s_, max_w, zero_);
    const auto prs = pairs();
    std::vector<Contraction> cs;
    for (const auto& [ka, ca] : terms_) {
      const int wa = ka.wdeg();
      for (const auto& [kb, cb] : b.terms_) {
        if (wa + kb.wdeg() - shift > max_w) continue;
        if (mode == Mode::symbol && (ka.form || kb.form || ka.ydeg() != kb.ydeg())) continue;
        const int sign = wedge_sign(ka.form, kb.form);
        if (sign == 0) continue;
        cs.clear();
        auto ya = ka.y, yb = kb.y;
        enumerate(prs, 0, ya, yb, 0, Rational(mode == Mode::odd ? 2 * sign : sign), mode, cs);
        if (cs.empty()) continue;
        const R prod = ca * cb;
        if (prod.is_zero()) continue;
        for (const auto& ct : cs) {
          WeylKey k;
          k.y = ct.y;
          k.form = static_cast<std::uint8_t>(ka.form | kb.form);
          k.nu = static_cast<std::int8_t>(ka.nu + kb.nu + ct.s - (mode == Mode::odd ? 1 : 0));
          r.add_term(k, prod * ct.coeff);
        }
      }
    }
    return r;
  }

  Structure s_;
  int max_w_;
  R zero_;
  TermMap terms_;
};

}  // namespace dqkit
