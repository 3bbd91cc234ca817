#pragma once

#include <vector>

#include "dqkit/geom/connection.hpp"

namespace dqkit {

/// Christoffel symbols of a metric g with inverse ginv, carried with the 2-form omega:
///   Gamma^k_{ij} = g^{kl} (d_i g_{jl} + d_j g_{il} - d_l g_{ij}) / 2.
template <CoefficientRing R>
Connection<R> levi_civita_connection(const SquareMatrix<R>& g, const SquareMatrix<R>& ginv, SquareMatrix<R> omega) {
  const int n = g.size();
  const R zero = g(0, 0).zero();
  std::vector<SquareMatrix<R>> dg;
  for (int k = 0; k < n; ++k) dg.push_back(g.map([k](const R& x) { return x.derive(k); }));
  Tensor<R> gamma(3, n, zero);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l) {
        R low = (dg[i](j, l) + dg[j](i, l) - dg[l](i, j)) * Rational(1, 2);
        if (ring_is_zero(low)) continue;
        for (int k = 0; k < n; ++k)
          if (!ring_is_zero(ginv(l, k))) gamma(k, i, j) += ginv(l, k) * low;
      }
  return Connection<R>(std::move(omega), std::move(gamma));
}

/// g^{ij} Ric_{ij}.
template <CoefficientRing R>
R ricci_trace(const SquareMatrix<R>& ginv, const Tensor<R>& ricci) {
  const int n = ginv.size();
  R s = ginv(0, 0).zero();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (!ring_is_zero(ginv(i, j)) && !ring_is_zero(ricci(i, j))) s += ginv(i, j) * ricci(i, j);
  return s;
}

}  // namespace dqkit
