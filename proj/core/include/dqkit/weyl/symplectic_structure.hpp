#pragma once

#include "dqkit/numerics/matrix.hpp"
#include "dqkit/numerics/rational.hpp"

namespace dqkit {

/// Constant symplectic form on R^{2m} (or the torus T^{2m}) and its inverse.
///
/// Conventions: omega(e_i, e_j) = omega(i, j), lambda = omega^{-1} as matrices, so
/// lambda(i, k) omega(k, j) = delta_ij. The Poisson bracket is
/// {F, G} = lambda(i, j) d_i F d_j G and the Hamiltonian field satisfies i(X_F) omega = dF.
/// In the block form omega(i, m+i) = 1 this gives lambda(i, m+i) = -1 and {x^i, x^{m+i}} = -1.
class SymplecticStructure {
 public:
  SymplecticStructure() : SymplecticStructure(1) {}
  /// Block form omega(e_i, e_{m+i}) = 1.
  explicit SymplecticStructure(int m);
  /// Arbitrary constant form. Throws std::invalid_argument unless antisymmetric and nondegenerate.
  explicit SymplecticStructure(const SquareMatrix<Rational>& omega);

  int m() const { return dim_ / 2; }
  int dim() const { return dim_; }
  const SquareMatrix<Rational>& omega() const { return omega_; }
  const SquareMatrix<Rational>& lambda() const { return lambda_; }
  const Rational& omega(int i, int j) const { return omega_(i, j); }
  const Rational& lambda(int i, int j) const { return lambda_(i, j); }

  /// Coefficient of omega^m / m! against dx^1 ^ ... ^ dx^{2m} (the Pfaffian of omega).
  const Rational& pfaffian() const { return pfaffian_; }

  friend bool operator==(const SymplecticStructure& a, const SymplecticStructure& b) { return a.omega_ == b.omega_; }

 private:
  void finish();

  int dim_ = 0;
  SquareMatrix<Rational> omega_, lambda_;
  Rational pfaffian_;
};

/// Pfaffian of an antisymmetric matrix by expansion along the first row.
Rational pfaffian(const SquareMatrix<Rational>& a);

}  // namespace dqkit
