#include "dqkit/dfweight/dfweight.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

namespace dqkit {

namespace {

Rational evaluate(const std::vector<Rational>& c, const Rational& x) {
  Rational out = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) out = out * x + *it;
  return out;
}

// coefficient of k^p, zero out of range
Rational coefficient(const std::vector<Rational>& c, int p) {
  return p >= 0 && p < static_cast<int>(c.size()) ? c[p] : Rational(0);
}

}  // namespace

std::vector<Rational> interpolate(const std::vector<Rational>& x, const std::vector<Rational>& y) {
  const std::size_t n = x.size();
  if (y.size() != n || n == 0) throw std::invalid_argument("interpolation needs matching nonempty samples");
  // Newton divided differences, then expand the Newton form.
  std::vector<Rational> dd = y;
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = n - 1; i >= j; --i) {
      Rational dx = x[i] - x[i - j];
      if (sgn(dx) == 0) throw std::invalid_argument("interpolation nodes must be distinct");
      dd[i] = (dd[i] - dd[i - 1]) / dx;
    }
  std::vector<Rational> c(n, Rational(0));
  for (std::size_t i = n; i-- > 0;) {
    // c <- c * (t - x_i) + dd_i
    for (std::size_t p = n - 1; p > 0; --p) c[p] = c[p - 1] - x[i] * c[p];
    c[0] = -x[i] * c[0] + dd[i];
  }
  return c;
}

DfExpansion expand_F(const HilbertWeightData& data) {
  const int m = data.m;
  if (m < 1) throw DfWeightError("dimension m must be positive");
  std::vector<HilbertSample> s = data.samples;
  std::sort(s.begin(), s.end(), [](const auto& a, const auto& b) { return a.k < b.k; });
  std::set<long> seen;
  for (const auto& x : s) {
    if (x.k < 1) throw DfWeightError("k must be positive, got " + std::to_string(x.k));
    if (x.d <= 0) throw DfWeightError("d_k must be positive at k = " + std::to_string(x.k));
    if (!seen.insert(x.k).second) throw DfWeightError("repeated k = " + std::to_string(x.k));
  }
  const std::size_t need = static_cast<std::size_t>(m) + 2;
  if (s.size() < need + 1)
    throw DfWeightError("need at least " + std::to_string(need + 1) + " samples for m = " + std::to_string(m) +
                        " (one held out), got " + std::to_string(s.size()));

  std::vector<Rational> kd, d, kw, w;
  for (std::size_t i = 0; i < need; ++i) {
    if (i + 1 < need) {
      kd.emplace_back(s[i].k);
      d.emplace_back(s[i].d);
    }
    kw.emplace_back(s[i].k);
    w.push_back(s[i].w);
  }
  DfExpansion e;
  e.d_coefficients = interpolate(kd, d);
  e.w_coefficients = interpolate(kw, w);
  for (std::size_t i = need - 1; i < s.size(); ++i) {
    Rational k(s[i].k);
    if (evaluate(e.d_coefficients, k) != Rational(s[i].d))
      throw DfWeightError("d_k is not a polynomial of degree " + std::to_string(m) + ": mismatch at k = " +
                          std::to_string(s[i].k));
  }
  for (std::size_t i = need; i < s.size(); ++i)
    if (evaluate(e.w_coefficients, Rational(s[i].k)) != s[i].w)
      throw DfWeightError("w_k is not a polynomial of degree " + std::to_string(m + 1) + ": mismatch at k = " +
                          std::to_string(s[i].k));
  e.held_out = static_cast<int>(s.size() - need);

  e.a0 = coefficient(e.d_coefficients, m);
  e.a1 = coefficient(e.d_coefficients, m - 1);
  e.a2 = coefficient(e.d_coefficients, m - 2);
  e.b0 = coefficient(e.w_coefficients, m + 1);
  e.b1 = coefficient(e.w_coefficients, m);
  e.b2 = coefficient(e.w_coefficients, m - 1);
  if (sgn(e.a0) == 0) throw DfWeightError("leading Hilbert coefficient a0 vanishes");
  // (a0 + a1 x + a2 x^2)(F0 + F1 x + F2 x^2) = b0 + b1 x + b2 x^2 + O(x^3), x = 1/k
  e.F0 = e.b0 / e.a0;
  e.F1 = (e.a0 * e.b1 - e.a1 * e.b0) / (e.a0 * e.a0);
  e.F2 = (e.b2 - e.a1 * e.F1 - e.a2 * e.F0) / e.a0;
  return e;
}

HilbertWeightData cp1_equivariant_oracle(int k_max) {
  if (k_max < 1) throw std::invalid_argument("k_max must be positive");
  HilbertWeightData out{1, {}};
  for (long k = 1; k <= k_max; ++k) {
    long d = 0;
    Rational w = 0;
    for (long j = 0; j <= k; ++j) {
      ++d;
      w += j;
    }
    out.samples.push_back({k, d, w});
  }
  return out;
}

HilbertWeightData synthetic_hilbert_data(int m, const Rational& a0, const Rational& a1, const Rational& b0,
                                         const Rational& b1, int count) {
  HilbertWeightData out{m, {}};
  for (long k = 1; k <= count; ++k) {
    Rational kk(k), km = 1;
    for (int i = 1; i < m; ++i) km *= kk;  // k^{m-1}
    Rational d = a0 * km * kk + a1 * km;
    if (d.get_den() != 1) throw std::invalid_argument("synthetic d_k must be an integer");
    out.samples.push_back({k, d.get_num().get_si(), b0 * km * kk * kk + b1 * km * kk});
  }
  return out;
}

HilbertWeightData invert_action(HilbertWeightData data) {
  for (auto& s : data.samples) s.w = -s.w;
  return data;
}

Rational futaki_consistency(const Rational& F1, const Rational& f_value, VolumeForm form, int m,
                            const Rational& volume) {
  if (sgn(volume) <= 0) throw std::invalid_argument("volume must be positive");
  Rational f = form == VolumeForm::OmegaPower ? f_value : f_value * factorial(static_cast<unsigned>(m));
  Rational r = F1 + f / (2 * factorial(static_cast<unsigned>(m)) * volume);
  return abs(r);
}

double futaki_consistency(const Rational& F1, double f_value, VolumeForm form, int m, double volume) {
  if (!(volume > 0)) throw std::invalid_argument("volume must be positive");
  const double mf = to_double(factorial(static_cast<unsigned>(m)));
  const double f = form == VolumeForm::OmegaPower ? f_value : f_value * mf;
  return std::abs(to_double(F1) + f / (2 * mf * volume));
}

}  // namespace dqkit
