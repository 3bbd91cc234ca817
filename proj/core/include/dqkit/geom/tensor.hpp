#pragma once

#include <array>
#include <functional>
#include <stdexcept>
#include <vector>

#include "dqkit/numerics/rational.hpp"
#include "dqkit/numerics/ring.hpp"

namespace dqkit {

/// Dense tensor with `rank` slots of dimension `dim` each and coefficients in R.
/// Components are addressed by index arrays; storage is row-major (last index fastest).
template <class R>
class Tensor {
 public:
  static constexpr int kMaxRank = 6;
  using Index = std::array<int, kMaxRank>;

  Tensor() = default;
  Tensor(int rank, int dim, const R& fill) : rank_(rank), dim_(dim) {
    if (rank < 0 || rank > kMaxRank) throw std::invalid_argument("tensor rank out of range");
    std::size_t n = 1;
    for (int r = 0; r < rank; ++r) n *= static_cast<std::size_t>(dim);
    data_.assign(n, fill);
  }

  int rank() const { return rank_; }
  int dim() const { return dim_; }
  std::size_t size() const { return data_.size(); }

  R& at(std::size_t flat) { return data_[flat]; }
  const R& at(std::size_t flat) const { return data_[flat]; }

  R& operator()(const Index& ix) { return data_[offset(ix)]; }
  const R& operator()(const Index& ix) const { return data_[offset(ix)]; }
  R& operator()(int a, int b) { return data_[offset({a, b})]; }
  const R& operator()(int a, int b) const { return data_[offset({a, b})]; }
  R& operator()(int a, int b, int c) { return data_[offset({a, b, c})]; }
  const R& operator()(int a, int b, int c) const { return data_[offset({a, b, c})]; }
  R& operator()(int a, int b, int c, int d) { return data_[offset({a, b, c, d})]; }
  const R& operator()(int a, int b, int c, int d) const { return data_[offset({a, b, c, d})]; }

  /// Index tuple of a flat position.
  Index unflatten(std::size_t flat) const {
    Index ix{};
    for (int r = rank_ - 1; r >= 0; --r) {
      ix[r] = static_cast<int>(flat % static_cast<std::size_t>(dim_));
      flat /= static_cast<std::size_t>(dim_);
    }
    return ix;
  }
  std::size_t offset(const Index& ix) const {
    std::size_t o = 0;
    for (int r = 0; r < rank_; ++r) o = o * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(ix[r]);
    return o;
  }

  template <class F>
  auto map(F&& f) const {
    using T = std::invoke_result_t<F, const R&>;
    Tensor<T> out(rank_, dim_, f(data_.front()));
    for (std::size_t i = 0; i < data_.size(); ++i) out.at(i) = f(data_[i]);
    return out;
  }

  bool is_zero() const {
    for (const auto& x : data_)
      if (!ring_is_zero(x)) return false;
    return true;
  }

  Tensor& operator+=(const Tensor& o) {
    check(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  Tensor& operator-=(const Tensor& o) {
    check(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  friend Tensor operator+(Tensor a, const Tensor& b) { return a += b; }
  friend Tensor operator-(Tensor a, const Tensor& b) { return a -= b; }
  friend Tensor operator*(Tensor a, const Rational& q) {
    for (auto& x : a.data_) x = x * q;
    return a;
  }
  friend bool operator==(const Tensor& a, const Tensor& b) {
    return a.rank_ == b.rank_ && a.dim_ == b.dim_ && a.data_ == b.data_;
  }

 private:
  void check(const Tensor& o) const {
    if (o.rank_ != rank_ || o.dim_ != dim_) throw std::invalid_argument("tensor shape mismatch");
  }

  int rank_ = 0;
  int dim_ = 0;
  std::vector<R> data_;
};

/// True if T is invariant under every permutation of its slots.
template <class R>
bool is_totally_symmetric(const Tensor<R>& t) {
  for (std::size_t f = 0; f < t.size(); ++f) {
    auto ix = t.unflatten(f);
    for (int a = 0; a + 1 < t.rank(); ++a) {
      auto jx = ix;
      std::swap(jx[a], jx[a + 1]);
      if (!(t(jx) == t.at(f))) return false;
    }
  }
  return true;
}

/// Average over all permutations of the slots of a rank-3 tensor.
template <class R>
Tensor<R> symmetrize3(const Tensor<R>& t) {
  Tensor<R> s(3, t.dim(), t.at(0).zero());
  const int n = t.dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        s(i, j, k) = (t(i, j, k) + t(i, k, j) + t(j, i, k) + t(j, k, i) + t(k, i, j) + t(k, j, i)) * Rational(1, 6);
  return s;
}

}  // namespace dqkit
