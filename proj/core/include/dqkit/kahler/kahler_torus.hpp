#pragma once

#include "dqkit/geom/invariants.hpp"
#include "dqkit/geom/levi_civita.hpp"
#include "dqkit/numerics/jet.hpp"
#include "dqkit/numerics/trig_poly.hpp"

namespace dqkit {

/// Truncated power series in the small parameter e with trig-polynomial coefficients.
using EpsJet = Jet<TrigPoly>;

/// Kahler metric on the flat torus T^{2m} with complex coordinates z^a = x^a + i x^{m+a}:
///   h_{a bbar} = delta_{ab} + e d_a d_bbar phi,  d_a = (d_{x^a} - i d_{x^{m+a}})/2,
/// Kahler form omega = i h_{a bbar} dz^a ^ dzbar^b and real metric g = 2 Re(h dz (x) dzbar).
class KahlerJetTorus {
 public:
  KahlerJetTorus(int m, TrigPoly phi, int order);

  int complex_dim() const { return m_; }
  int dim() const { return 2 * m_; }
  int order() const { return order_; }
  const TrigPoly& potential() const { return phi_; }

  /// H(a, b) = h_{a bbar} and its inverse M, so that h^{a bbar} = M(b, a).
  const SquareMatrix<EpsJet>& hermitian() const { return h_; }
  const SquareMatrix<EpsJet>& hermitian_inverse() const { return hinv_; }

  const SquareMatrix<EpsJet>& metric() const { return g_; }
  const SquareMatrix<EpsJet>& omega() const { return omega_; }

  EpsJet dz(int a, const EpsJet& f) const;
  EpsJet dzbar(int a, const EpsJet& f) const;
  EpsJet lift(const TrigPoly& f) const { return EpsJet(order_, f); }

  /// Christoffel symbols of g, with omega attached.
  Connection<EpsJet> levi_civita() const;
  /// Real Christoffel symbols assembled from Gamma^c_{ab} = h^{c dbar} d_a h_{b dbar} and its conjugate.
  Tensor<EpsJet> holomorphic_christoffel() const;

  /// S = h^{a bbar} R_{a bbar},  R_{a bbar} = -d_a d_bbar log det h.
  EpsJet scalar_curvature() const;
  /// S from the Levi-Civita curvature: g^{ij} Ric_{ij} / 2.
  EpsJet scalar_curvature_from_connection() const;
  /// Delta f = h^{a bbar} d_a d_bbar f, half the Riemannian Laplacian.
  EpsJet laplacian(const EpsJet& f) const;

 private:
  int m_, order_;
  TrigPoly phi_;
  SquareMatrix<EpsJet> h_, hinv_, g_, ginv_, omega_;
};

struct LvMomentumCheck {
  EpsJet mu;          // Cahen-Gutt momentum of the Levi-Civita connection
  EpsJet laplacian_term;  // 2 Delta S
  EpsJet pontryagin;  // P of the Levi-Civita connection
  EpsJet residual;    // mu - 2 Delta S - P
  bool passed() const { return residual.is_zero(); }
};

LvMomentumCheck lv_momentum_check(const KahlerJetTorus& k);

}  // namespace dqkit
