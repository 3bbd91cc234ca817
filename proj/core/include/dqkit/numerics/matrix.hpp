#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "dqkit/numerics/rational.hpp"
#include "dqkit/numerics/ring.hpp"

namespace dqkit {

/// Dense square matrix over a ring, row-major. Small (n <= 6) by design.
template <class R>
class SquareMatrix {
 public:
  SquareMatrix() = default;
  SquareMatrix(int n, const R& fill) : n_(n), a_(static_cast<std::size_t>(n) * n, fill) {}

  static SquareMatrix identity(int n, const R& zero, const R& one) {
    SquareMatrix m(n, zero);
    for (int i = 0; i < n; ++i) m(i, i) = one;
    return m;
  }

  int size() const { return n_; }
  R& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * n_ + j]; }
  const R& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * n_ + j]; }

  template <class F>
  auto map(F&& f) const {
    using T = std::invoke_result_t<F, const R&>;
    SquareMatrix<T> m(n_, f(a_.front()));
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) m(i, j) = f((*this)(i, j));
    return m;
  }

  SquareMatrix transposed() const {
    SquareMatrix t = *this;
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) t(i, j) = (*this)(j, i);
    return t;
  }

  friend SquareMatrix operator*(const SquareMatrix& a, const SquareMatrix& b) {
    if (a.n_ != b.n_) throw std::invalid_argument("matrix size mismatch");
    SquareMatrix c(a.n_, a(0, 0) - a(0, 0));
    for (int i = 0; i < a.n_; ++i)
      for (int k = 0; k < a.n_; ++k)
        for (int j = 0; j < a.n_; ++j) c(i, j) += a(i, k) * b(k, j);
    return c;
  }
  friend SquareMatrix operator+(SquareMatrix a, const SquareMatrix& b) {
    for (std::size_t i = 0; i < a.a_.size(); ++i) a.a_[i] += b.a_[i];
    return a;
  }
  friend SquareMatrix operator-(SquareMatrix a, const SquareMatrix& b) {
    for (std::size_t i = 0; i < a.a_.size(); ++i) a.a_[i] -= b.a_[i];
    return a;
  }
  friend bool operator==(const SquareMatrix& a, const SquareMatrix& b) { return a.n_ == b.n_ && a.a_ == b.a_; }

 private:
  int n_ = 0;
  std::vector<R> a_;
};

/// Gauss-Jordan inverse over a ring whose units are detected by is_invertible(x).
/// Pivots are chosen among units, so the leading-order part only needs to be invertible.
template <class R>
SquareMatrix<R> matrix_inverse(SquareMatrix<R> a, const R& zero, const R& one) {
  // Row reduction of [a | I].
  const int n = a.size();
  SquareMatrix<R> inv = SquareMatrix<R>::identity(n, zero, one);
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r)
      if (is_invertible(a(r, col))) {
        piv = r;
        break;
      }
    if (piv < 0) throw std::domain_error("matrix is not invertible over its ring");
    if (piv != col)
      for (int j = 0; j < n; ++j) {
        std::swap(a(piv, j), a(col, j));
        std::swap(inv(piv, j), inv(col, j));
      }
    R p = invert(a(col, col));
    for (int j = 0; j < n; ++j) {
      a(col, j) = a(col, j) * p;
      inv(col, j) = inv(col, j) * p;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      R f = a(r, col);
      if (ring_is_zero(f)) continue;
      for (int j = 0; j < n; ++j) {
        a(r, j) -= f * a(col, j);
        inv(r, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

}  // namespace dqkit
