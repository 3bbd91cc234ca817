#pragma once

#include <concepts>

#include "dqkit/numerics/rational.hpp"

namespace dqkit {

/// Commutative coefficient ring of functions on a coordinate chart.
///
/// Elements carry their own shape (torus dimension, jet order, ...), so a zero or a
/// constant is always produced from an existing element rather than from nothing.
/// `derive(j)` is the partial derivative along the j-th coordinate.
template <class R>
concept CoefficientRing = std::copyable<R> && requires(R a, const R& b, const Rational& q, int j) {
  { a + b } -> std::convertible_to<R>;
  { a - b } -> std::convertible_to<R>;
  { a * b } -> std::convertible_to<R>;
  { a * q } -> std::convertible_to<R>;
  { -a } -> std::convertible_to<R>;
  { a += b } -> std::same_as<R&>;
  { a -= b } -> std::same_as<R&>;
  { b.zero() } -> std::same_as<R>;
  { b.constant(q) } -> std::same_as<R>;
  { b.derive(j) } -> std::same_as<R>;
  { b.is_zero() } -> std::convertible_to<bool>;
};

/// Zero test that also covers plain scalar types.
template <class R>
bool ring_is_zero(const R& x) {
  if constexpr (requires { x.is_zero(); })
    return x.is_zero();
  else
    return x == R{};
}

}  // namespace dqkit
