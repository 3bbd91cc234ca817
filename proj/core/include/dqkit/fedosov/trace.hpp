#pragma once

#include <vector>

#include "dqkit/fedosov/fedosov.hpp"

namespace dqkit {

/// {F, G} = lambda^{ij} d_i F d_j G.
TrigPoly poisson_bracket(const SymplecticStructure& s, const TrigPoly& f, const TrigPoly& g);

/// S3(F, G) = lambda lambda lambda L_F L_G with L_F the lowered Lie derivative of the connection.
TrigPoly s3_cocycle(const TorusConnection& c, const TrigPoly& f, const TrigPoly& g);

/// FG + (nu/2){F,G} + (nu^2/8) lambda lambda nabla^2 F nabla^2 G + (nu^3/48) S3(F,G).
NuSeries<TrigPoly> truncated_star3(const TorusConnection& c, const TrigPoly& f, const TrigPoly& g);

/// rho = 1 - (nu^2/24) mu; the integral of (F*G - G*F) rho vanishes through nu^3.
NuSeries<TrigPoly> trace_density_order2(const TorusConnection& c);
NuSeries<TrigPoly> trace_density_order2(const StarEvaluator& se);

/// Entry k is the nu^k coefficient of  int (F*G - G*F) rho omega^m/m!,  k = 0..N.
/// Entry k + 1 is the k-th trace equation  sum_j tau_j(C^-_{k+1-j}(F,G)).
std::vector<Rational> commutator_trace(StarEvaluator& se, const NuSeries<TrigPoly>& rho, const TrigPoly& f,
                                       const TrigPoly& g);

/// Residual of  tau_k({F,G}) + tau_{k-1}(C^-_2) + ... + tau_0(C^-_{k+1}) = 0, with tau_j = int . rho_j.
Rational trace_equation_residual(StarEvaluator& se, const NuSeries<TrigPoly>& rho, const TrigPoly& f,
                                 const TrigPoly& g, int k);

/// B = Id + nu^2 X_2 with X_2 = grad(u)/24 (flat gradient) and lap(u) = -(mu - mean mu).
class ClosingEquivalence {
 public:
  explicit ClosingEquivalence(const TorusConnection& c);

  const TrigPoly& potential() const { return u_; }
  const TrigPoly& momentum() const { return mu_; }
  bool is_identity() const { return u_.is_zero(); }

  /// X_2(F) = (1/24) sum_j d_j u d_j F.
  TrigPoly x2(const TrigPoly& f) const;
  /// div X_2 = lap(u)/24.
  TrigPoly x2_divergence() const;

  NuSeries<TrigPoly> apply(const NuSeries<TrigPoly>& f) const;
  /// B^{-1} = sum_k (-nu^2 X_2)^k.
  NuSeries<TrigPoly> apply_inverse(const NuSeries<TrigPoly>& f) const;

  /// B^{-1}(BF * BG) through the evaluator's nu order.
  NuSeries<TrigPoly> conjugated_star(StarEvaluator& se, const TrigPoly& f, const TrigPoly& g) const;

 private:
  TrigPoly mu_, u_;
};

}  // namespace dqkit
