#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <vector>

#include "dqkit/numerics/nu_series.hpp"
#include "dqkit/numerics/ring.hpp"
#include "dqkit/weyl/symplectic_structure.hpp"

namespace dqkit {

namespace detail {

// Partial derivative d_{i1...ir} f, memoized by the sorted index tuple.
template <CoefficientRing R>
class DerivativeCache {
 public:
  explicit DerivativeCache(R f) { cache_.emplace(std::vector<int>{}, std::move(f)); }

  const R& get(std::vector<int> idx) {
    std::sort(idx.begin(), idx.end());
    auto it = cache_.find(idx);
    if (it != cache_.end()) return it->second;
    std::vector<int> head(idx.begin(), idx.end() - 1);
    R d = get(head).derive(idx.back());
    return cache_.emplace(std::move(idx), std::move(d)).first->second;
  }

 private:
  std::map<std::vector<int>, R> cache_;
};

}  // namespace detail

/// Moyal product on flat R^{2m} or T^{2m}:
///   F * G = sum_{r <= N} (nu/2)^r / r! lambda^{i1 j1} ... lambda^{ir jr} d_{i1..ir} F d_{j1..jr} G,
/// summed literally over index tuples.
template <CoefficientRing R>
NuSeries<R> moyal_star_flat(const SymplecticStructure& s, const R& F, const R& G, int order) {
  const int n = s.dim();
  detail::DerivativeCache<R> dF(F), dG(G);
  NuSeries<R> out(order);
  std::vector<std::vector<std::pair<int, Rational>>> rows(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (sgn(s.lambda(i, j)) != 0) rows[i].push_back({j, s.lambda(i, j)});

  for (int r = 0; r <= order; ++r) {
    R term = F.zero();
    std::vector<int> is(r, 0), js(r, 0);
    // Odometer over i-tuples, nested odometer over the nonzero lambda entries in each row.
    std::function<void(int, Rational)> rec = [&](int p, Rational c) {
      if (p == r) {
        term += dF.get(is) * dG.get(js) * c;
        return;
      }
      for (int i = 0; i < n; ++i)
        for (const auto& [j, l] : rows[i]) {
          is[p] = i;
          js[p] = j;
          rec(p + 1, c * l);
        }
    };
    rec(0, Rational(1));
    Rational scale = 1 / factorial(r);
    for (int k = 0; k < r; ++k) scale /= 2;
    out.add(r, term * scale);
  }
  return out;
}

}  // namespace dqkit
