#include "dqkit/weyl/symplectic_structure.hpp"

#include <stdexcept>
#include <vector>

namespace dqkit {

namespace {

Rational pfaffian_rec(const SquareMatrix<Rational>& a, std::vector<int>& idx) {
  if (idx.empty()) return 1;
  int i = idx[0];
  Rational s;
  for (std::size_t p = 1; p < idx.size(); ++p) {
    int j = idx[p];
    if (sgn(a(i, j)) == 0) continue;
    std::vector<int> rest;
    for (std::size_t q = 1; q < idx.size(); ++q)
      if (q != p) rest.push_back(idx[q]);
    Rational sub = pfaffian_rec(a, rest);
    // Removing positions 0 and p costs the sign (-1)^(p-1).
    s += (p % 2 == 1 ? 1 : -1) * a(i, j) * sub;
  }
  return s;
}

}  // namespace

Rational pfaffian(const SquareMatrix<Rational>& a) {
  if (a.size() % 2) return 0;
  std::vector<int> idx(a.size());
  for (int i = 0; i < a.size(); ++i) idx[i] = i;
  return pfaffian_rec(a, idx);
}

SymplecticStructure::SymplecticStructure(int m) : dim_(2 * m) {
  if (m < 1 || m > 3) throw std::invalid_argument("symplectic dimension 2m must satisfy 1 <= m <= 3");
  omega_ = SquareMatrix<Rational>(dim_, Rational(0));
  for (int i = 0; i < m; ++i) {
    omega_(i, m + i) = 1;
    omega_(m + i, i) = -1;
  }
  finish();
}

SymplecticStructure::SymplecticStructure(const SquareMatrix<Rational>& omega) : dim_(omega.size()), omega_(omega) {
  if (dim_ < 2 || dim_ > 6 || dim_ % 2) throw std::invalid_argument("symplectic matrix must be 2m x 2m with m <= 3");
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j)
      if (omega_(i, j) != -omega_(j, i)) throw std::invalid_argument("symplectic matrix is not antisymmetric");
  finish();
}

void SymplecticStructure::finish() {
  pfaffian_ = dqkit::pfaffian(omega_);
  if (sgn(pfaffian_) == 0) throw std::invalid_argument("symplectic matrix is degenerate");
  lambda_ = matrix_inverse(omega_, Rational(0), Rational(1));
}

}  // namespace dqkit
