#pragma once

#include <stdexcept>
#include <utility>

#include "dqkit/geom/tensor.hpp"
#include "dqkit/numerics/matrix.hpp"
#include "dqkit/numerics/rational.hpp"
#include "dqkit/numerics/ring.hpp"

namespace dqkit {

/// Constant matrix promoted to a ring, using `proto` for shape.
template <class R>
SquareMatrix<R> promote(const SquareMatrix<Rational>& m, const R& proto) {
  SquareMatrix<R> out(m.size(), proto.zero());
  for (int i = 0; i < m.size(); ++i)
    for (int j = 0; j < m.size(); ++j) out(i, j) = proto.constant(m(i, j));
  return out;
}

/// Affine connection on a coordinate chart together with a nondegenerate 2-form omega.
///
/// Christoffel symbols are stored in full: gamma(k, i, j) = Gamma^k_{ij}, meaning
/// nabla_{d_i} d_j = Gamma^k_{ij} d_k. The inverse matrix lambda = omega^{-1} raises indices.
template <CoefficientRing R>
class Connection {
 public:
  Connection(SquareMatrix<R> omega, Tensor<R> gamma) : omega_(std::move(omega)), gamma_(std::move(gamma)) {
    const int n = omega_.size();
    if (gamma_.rank() != 3 || gamma_.dim() != n) throw std::invalid_argument("Christoffel tensor has the wrong shape");
    zero_ = gamma_.at(0).zero();
    lambda_ = matrix_inverse(omega_, zero_, zero_.constant(Rational(1)));
  }

  /// Flat coordinate connection.
  static Connection flat(SquareMatrix<R> omega) {
    const int n = omega.size();
    R z = omega(0, 0).zero();
    return Connection(std::move(omega), Tensor<R>(3, n, z));
  }

  /// From the lowered tensor  G_{ijl} = omega(nabla_{d_i} d_j, d_l) = Gamma^k_{ij} omega_{kl}.
  static Connection from_lowered(SquareMatrix<R> omega, const Tensor<R>& lowered) {
    Connection c = flat(std::move(omega));
    c.gamma_ = c.raise_last(lowered);
    return c;
  }

  int dim() const { return omega_.size(); }
  const R& zero() const { return zero_; }
  const SquareMatrix<R>& omega() const { return omega_; }
  const SquareMatrix<R>& lambda() const { return lambda_; }
  const Tensor<R>& gamma() const { return gamma_; }
  const R& gamma(int k, int i, int j) const { return gamma_(k, i, j); }

  /// G_{ijl} = Gamma^k_{ij} omega_{kl}.
  Tensor<R> lowered() const {
    const int n = dim();
    Tensor<R> t(3, n, zero_);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l) {
          R s = zero_;
          for (int k = 0; k < n; ++k)
            if (!ring_is_zero(gamma_(k, i, j)) && !ring_is_zero(omega_(k, l))) s += gamma_(k, i, j) * omega_(k, l);
          t(i, j, l) = s;
        }
    return t;
  }

  /// A^k_{ij} = A_{ijl} lambda^{lk} for a lowered 3-tensor.
  Tensor<R> raise_last(const Tensor<R>& a) const {
    const int n = dim();
    Tensor<R> t(3, n, zero_);
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          R s = zero_;
          for (int l = 0; l < n; ++l)
            if (!ring_is_zero(a(i, j, l)) && !ring_is_zero(lambda_(l, k))) s += a(i, j, l) * lambda_(l, k);
          t(k, i, j) = s;
        }
    return t;
  }

  /// nabla + A for a lowered symmetric 3-tensor A.
  Connection plus(const Tensor<R>& lowered_a) const {
    Connection c = *this;
    c.gamma_ += raise_last(lowered_a);
    return c;
  }

  bool torsion_free() const {
    const int n = dim();
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
          if (!(gamma_(k, i, j) == gamma_(k, j, i))) return false;
    return true;
  }

  /// (nabla_i omega)_{jk} = d_i omega_{jk} - Gamma^l_{ij} omega_{lk} - Gamma^l_{ik} omega_{jl}.
  Tensor<R> omega_derivative() const {
    const int n = dim();
    Tensor<R> t(3, n, zero_);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          R s = omega_(j, k).derive(i);
          for (int l = 0; l < n; ++l) {
            s -= gamma_(l, i, j) * omega_(l, k);
            s -= gamma_(l, i, k) * omega_(j, l);
          }
          t(i, j, k) = s;
        }
    return t;
  }

  bool preserves_omega() const { return omega_derivative().is_zero(); }

  template <class F>
  auto map(F&& f) const {
    using T = std::invoke_result_t<F, const R&>;
    return Connection<T>(omega_.map(f), gamma_.map(f));
  }

 private:
  SquareMatrix<R> omega_, lambda_;
  Tensor<R> gamma_;
  R zero_;
};

/// Symplectic connection from a torsion-free one:
///   nabla = nabla0 + (1/3)(N(X,Y) + N(Y,X)),  (nabla0_X omega)(Y,Z) = omega(N(X,Y), Z).
template <CoefficientRing R>
Connection<R> make_symplectic(const Connection<R>& nabla0) {
  if (!nabla0.torsion_free()) throw std::invalid_argument("input connection has torsion");
  const int n = nabla0.dim();
  const Tensor<R> dw = nabla0.omega_derivative();
  // N^l_{ij} = (nabla0_i omega)_{jk} lambda^{kl}
  Tensor<R> N(3, n, nabla0.zero());
  for (int l = 0; l < n; ++l)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        R s = nabla0.zero();
        for (int k = 0; k < n; ++k) s += dw(i, j, k) * nabla0.lambda()(k, l);
        N(l, i, j) = s;
      }
  Tensor<R> g = nabla0.gamma();
  for (int l = 0; l < n; ++l)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) g(l, i, j) += (N(l, i, j) + N(l, j, i)) * Rational(1, 3);
  return Connection<R>(nabla0.omega(), std::move(g));
}

/// Covariant derivative with the new slot first: (nabla T)_{i a_1 ... a_r}.
/// Bit s of `upper` marks slot s of T as contravariant.
template <CoefficientRing R>
Tensor<R> covariant_derivative(const Connection<R>& c, const Tensor<R>& t, unsigned upper = 0) {
  const int n = c.dim(), r = t.rank();
  Tensor<R> out(r + 1, n, c.zero());
  for (std::size_t f = 0; f < out.size(); ++f) {
    auto ix = out.unflatten(f);
    typename Tensor<R>::Index tx{};
    for (int s = 0; s < r; ++s) tx[s] = ix[s + 1];
    const int i = ix[0];
    R v = t(tx).derive(i);
    for (int s = 0; s < r; ++s) {
      const int a = tx[s];
      auto jx = tx;
      for (int l = 0; l < n; ++l) {
        jx[s] = l;
        const R& tl = t(jx);
        if (ring_is_zero(tl)) continue;
        if ((upper >> s) & 1u) {
          if (!ring_is_zero(c.gamma(a, i, l))) v += c.gamma(a, i, l) * tl;
        } else if (!ring_is_zero(c.gamma(l, i, a))) {
          v -= c.gamma(l, i, a) * tl;
        }
      }
    }
    out.at(f) = v;
  }
  return out;
}

/// nabla^2_{(U,V)} T = nabla_U nabla_V T - nabla_{nabla_U V} T, slots (U, V, T...).
template <CoefficientRing R>
Tensor<R> second_cov_deriv(const Connection<R>& c, const Tensor<R>& t, unsigned upper = 0) {
  return covariant_derivative(c, covariant_derivative(c, t, upper), upper << 1);
}

/// Differential dF as a rank-1 tensor.
template <CoefficientRing R>
Tensor<R> gradient(const R& f, int n) {
  Tensor<R> t(1, n, f.zero());
  for (int i = 0; i < n; ++i) t.at(static_cast<std::size_t>(i)) = f.derive(i);
  return t;
}

/// Hamiltonian vector field, i(X_F) omega = dF:  X^i = d_j F lambda^{ji}.
template <CoefficientRing R>
Tensor<R> hamiltonian_field(const Connection<R>& c, const R& f) {
  const int n = c.dim();
  Tensor<R> x(1, n, c.zero());
  for (int i = 0; i < n; ++i) {
    R s = c.zero();
    for (int j = 0; j < n; ++j) s += f.derive(j) * c.lambda()(j, i);
    x.at(static_cast<std::size_t>(i)) = s;
  }
  return x;
}

}  // namespace dqkit
