#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>

#include "dqkit/geom/connection.hpp"
#include "dqkit/weyl/weyl_section.hpp"

namespace dqkit {

/// Curvature R(d_k, d_l) d_j = R^r_{jkl} d_r stored as riemann(r, j, k, l),
/// and Ric_{ij} = tr[V -> R(V, d_i) d_j] = R^r_{jri}.
template <class R>
struct CurvatureData {
  Tensor<R> riemann;
  Tensor<R> ricci;
};

template <CoefficientRing R>
CurvatureData<R> curvature(const Connection<R>& c) {
  const int n = c.dim();
  Tensor<R> rm(4, n, c.zero());
  std::vector<Tensor<R>> dg;  // dg[k](r, l, j) = d_k Gamma^r_{lj}
  for (int k = 0; k < n; ++k) dg.push_back(c.gamma().map([k](const R& x) { return x.derive(k); }));
  for (int r = 0; r < n; ++r)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = k + 1; l < n; ++l) {
          R v = dg[k](r, l, j) - dg[l](r, k, j);
          for (int s = 0; s < n; ++s) {
            if (!ring_is_zero(c.gamma(s, l, j)) && !ring_is_zero(c.gamma(r, k, s))) v += c.gamma(s, l, j) * c.gamma(r, k, s);
            if (!ring_is_zero(c.gamma(s, k, j)) && !ring_is_zero(c.gamma(r, l, s))) v -= c.gamma(s, k, j) * c.gamma(r, l, s);
          }
          rm(r, j, l, k) = -v;
          rm(r, j, k, l) = std::move(v);
        }
  Tensor<R> ric(2, n, c.zero());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      R s = c.zero();
      for (int r = 0; r < n; ++r) s += rm(r, j, r, i);
      ric(i, j) = s;
    }
  return {std::move(rm), std::move(ric)};
}

/// Lowered curvature  omega(R(d_k, d_l) d_j, d_i) = omega_{ri} R^r_{jkl}, slots (i, j, k, l).
template <CoefficientRing R>
Tensor<R> lowered_curvature(const Connection<R>& c, const Tensor<R>& riemann) {
  const int n = c.dim();
  Tensor<R> t(4, n, c.zero());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          R s = c.zero();
          for (int r = 0; r < n; ++r)
            if (!ring_is_zero(c.omega()(r, i))) s += c.omega()(r, i) * riemann(r, j, k, l);
          t(i, j, k, l) = s;
        }
  return t;
}

/// Lowered Lie derivative of the connection along X_F:
///   L_{qut} = omega((nabla^2_{(q,u)} X_F) + R(X_F, d_q) d_u, d_t).
/// Throws std::logic_error if the result is not totally symmetric.
template <CoefficientRing R>
Tensor<R> lie_derivative_connection(const Connection<R>& c, const CurvatureData<R>& curv, const R& f) {
  const int n = c.dim();
  // omega(nabla^2 X_F, .) = nabla^2 dF because nabla omega = 0 and X_F^r omega_{rt} = d_t F.
  Tensor<R> l = second_cov_deriv(c, gradient(f, n));
  Tensor<R> x = hamiltonian_field(c, f);
  for (int q = 0; q < n; ++q)
    for (int u = 0; u < n; ++u)
      for (int t = 0; t < n; ++t) {
        R s = c.zero();
        for (int k = 0; k < n; ++k) {
          const R& xk = x.at(static_cast<std::size_t>(k));
          if (ring_is_zero(xk)) continue;
          for (int r = 0; r < n; ++r) {
            const R& rr = curv.riemann(r, u, k, q);
            if (!ring_is_zero(rr) && !ring_is_zero(c.omega()(r, t))) s += xk * rr * c.omega()(r, t);
          }
        }
        l(q, u, t) += s;
      }
  if (!is_totally_symmetric(l)) throw std::logic_error("Lie derivative of the connection is not totally symmetric");
  return l;
}

template <CoefficientRing R>
Tensor<R> lie_derivative_connection(const Connection<R>& c, const R& f) {
  return lie_derivative_connection(c, curvature(c), f);
}

/// Differential forms as bitmask -> coefficient maps.
template <class R>
using FormMap = std::map<std::uint8_t, R>;

template <CoefficientRing R>
FormMap<R> wedge(const FormMap<R>& a, const FormMap<R>& b) {
  FormMap<R> out;
  for (const auto& [ka, ca] : a)
    for (const auto& [kb, cb] : b) {
      const int s = wedge_sign(ka, kb);
      if (s == 0) continue;
      R v = ca * cb;
      if (s < 0) v = -v;
      auto [it, inserted] = out.try_emplace(static_cast<std::uint8_t>(ka | kb), v);
      if (!inserted) it->second += v;
    }
  return out;
}

/// 2-form  (1/2) a_{kl} dx^k ^ dx^l  from antisymmetric components.
template <CoefficientRing R>
FormMap<R> two_form(int n, const auto& component) {
  FormMap<R> f;
  for (int k = 0; k < n; ++k)
    for (int l = k + 1; l < n; ++l) {
      R v = component(k, l);
      if (!ring_is_zero(v)) f.emplace(static_cast<std::uint8_t>((1u << k) | (1u << l)), std::move(v));
    }
  return f;
}

/// omega^p / p!
template <CoefficientRing R>
FormMap<R> omega_power(const SquareMatrix<R>& omega, int p) {
  const int n = omega.size();
  FormMap<R> w = two_form<R>(n, [&](int k, int l) { return omega(k, l); });
  FormMap<R> out{{0, omega(0, 0).constant(Rational(1))}};
  for (int j = 1; j <= p; ++j) {
    out = wedge(out, w);
    for (auto& [k, v] : out) v = v * Rational(1, j);
  }
  return out;
}

/// Ratio of a top-degree form to omega^m/m!.
template <CoefficientRing R>
R top_form_ratio(const FormMap<R>& top, const SquareMatrix<R>& omega) {
  const int n = omega.size();
  const std::uint8_t full = static_cast<std::uint8_t>((1u << n) - 1);
  FormMap<R> vol = omega_power(omega, n / 2);
  auto it = top.find(full);
  if (it == top.end()) return omega(0, 0).zero();
  return it->second * invert(vol.at(full));
}

/// P(nabla) omega^m/m! = (1/2) tr(R ^ R) ^ omega^{m-2}/(m-2)!; zero on surfaces.
template <CoefficientRing R>
R pontryagin_scalar(const Connection<R>& c, const CurvatureData<R>& curv) {
  const int n = c.dim(), m = n / 2;
  if (m < 2) return c.zero();
  // R^a_b = (1/2) R^a_{bkl} dx^k ^ dx^l
  std::vector<FormMap<R>> rf(static_cast<std::size_t>(n * n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      rf[a * n + b] = two_form<R>(n, [&](int k, int l) { return curv.riemann(a, b, k, l); });
  FormMap<R> tr;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (auto& [k, v] : wedge(rf[a * n + b], rf[b * n + a])) {
        auto [it, inserted] = tr.try_emplace(k, v);
        if (!inserted) it->second += v;
      }
  FormMap<R> top = wedge(tr, omega_power(c.omega(), m - 2));
  return top_form_ratio(top, c.omega()) * Rational(1, 2);
}

template <CoefficientRing R>
R pontryagin_scalar(const Connection<R>& c) {
  return pontryagin_scalar(c, curvature(c));
}

/// (nabla^2_{(p,q)} Ric)^{pq} = lambda^{pa} lambda^{qb} (nabla^2 Ric)_{pqab}.
template <CoefficientRing R>
R ricci_hessian_trace(const Connection<R>& c, const CurvatureData<R>& curv) {
  const int n = c.dim();
  Tensor<R> h = second_cov_deriv(c, curv.ricci);
  const auto& L = c.lambda();
  R s = c.zero();
  for (int p = 0; p < n; ++p)
    for (int a = 0; a < n; ++a) {
      if (ring_is_zero(L(p, a))) continue;
      for (int q = 0; q < n; ++q)
        for (int b = 0; b < n; ++b)
          if (!ring_is_zero(L(q, b)) && !ring_is_zero(h(p, q, a, b))) s += L(p, a) * L(q, b) * h(p, q, a, b);
    }
  return s;
}

/// Cahen-Gutt momentum  mu(nabla) = (nabla^2_{(p,q)} Ric)^{pq} + P(nabla).
template <CoefficientRing R>
R cahen_gutt_momentum(const Connection<R>& c) {
  CurvatureData<R> curv = curvature(c);
  return ricci_hessian_trace(c, curv) + pontryagin_scalar(c, curv);
}

/// Every slot of a covariant 3-tensor raised with lambda: B^{ijk} = lambda^{ia} lambda^{jb} lambda^{kc} B_{abc}.
template <CoefficientRing R>
Tensor<R> raise_all3(const SquareMatrix<R>& lambda, const Tensor<R>& b) {
  const int n = lambda.size();
  Tensor<R> cur = b;
  for (int slot = 0; slot < 3; ++slot) {
    Tensor<R> nxt(3, n, b.at(0).zero());
    for (std::size_t f = 0; f < nxt.size(); ++f) {
      auto ix = nxt.unflatten(f);
      R s = b.at(0).zero();
      auto jx = ix;
      for (int a = 0; a < n; ++a) {
        if (ring_is_zero(lambda(ix[slot], a))) continue;
        jx[slot] = a;
        if (!ring_is_zero(cur(jx))) s += lambda(ix[slot], a) * cur(jx);
      }
      nxt.at(f) = s;
    }
    cur = std::move(nxt);
  }
  return cur;
}

/// Pointwise pairing  lambda^{i1j1} lambda^{i2j2} lambda^{i3j3} A_{i1i2i3} B_{j1j2j3}.
template <CoefficientRing R>
R triple_contraction(const SquareMatrix<R>& lambda, const Tensor<R>& a, const Tensor<R>& b) {
  Tensor<R> bt = raise_all3(lambda, b);
  R s = a.at(0).zero();
  for (std::size_t f = 0; f < a.size(); ++f)
    if (!ring_is_zero(a.at(f)) && !ring_is_zero(bt.at(f))) s += a.at(f) * bt.at(f);
  return s;
}

}  // namespace dqkit
