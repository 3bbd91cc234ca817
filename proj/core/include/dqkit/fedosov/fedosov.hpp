#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "dqkit/geom/torus.hpp"
#include "dqkit/numerics/nu_series.hpp"
#include "dqkit/weyl/weyl_section.hpp"

namespace dqkit {

using WeylT = WeylSection<TrigPoly>;

/// nu^k Omega_k for one closed 2-form Omega_k (antisymmetric component matrix), k >= 1.
struct CentralTerm {
  int nu_power;
  SquareMatrix<TrigPoly> form;
};

struct FedosovInput {
  SymplecticStructure structure;
  SymTensor3 gamma;                 // lowered connection tensor
  std::vector<CentralTerm> omega;   // Omega = sum nu^k Omega_k
  int max_wdeg = 10;                // D
};

/// a Weyl-valued monomial key from a list of fiber indices (repeats allowed).
WeylKey weyl_key(std::initializer_list<int> y, std::uint8_t form = 0, int nu = 0);

/// Lift of a symplectic connection to the Weyl bundle and the solution r of the flatness
/// equation  Rbar + d r - delta r + (1/nu) r o r = Omega  with delta^{-1} r = 0.
class FedosovConnection {
 public:
  explicit FedosovConnection(FedosovInput in);

  const FedosovInput& input() const { return in_; }
  const WeylT::Structure& structure() const { return s_; }
  const TorusConnection& connection() const { return conn_; }
  int max_wdeg() const { return in_.max_wdeg; }

  /// Gbar = (1/2) omega_{lk} Gamma^k_{ij} y^l y^j dx^i.
  const WeylT& gamma_bar() const { return gamma_bar_; }
  /// Rbar = (1/4) omega_{ir} R^r_{jkl} y^i y^j dx^k ^ dx^l.
  const WeylT& r_bar() const { return r_bar_; }
  const WeylT& omega_section() const { return omega_; }
  /// r^(d) for 3 <= d <= D; lower entries are zero.
  const std::vector<WeylT>& r_components() const { return r_; }
  WeylT r() const;

  WeylT empty() const { return WeylT(s_, in_.max_wdeg, TrigPoly(s_->dim())); }

  /// d a + (1/nu)[Gbar, a].
  WeylT partial(const WeylT& a) const;
  /// d a - delta a + (1/nu)[r, a].
  WeylT fedosov_derivative(const WeylT& a) const;
  /// Rbar + d r - delta r + (1/nu) r o r - Omega, restricted to W-degree <= D - 1.
  WeylT flatness_residual() const;

 private:
  void solve();

  FedosovInput in_;
  WeylT::Structure s_;
  TorusConnection conn_;
  WeylT gamma_bar_, r_bar_, omega_;
  std::vector<WeylT> r_;
};

/// The Fedosov star product F * G = sigma(Q(F) o Q(G)) with cached lifts.
class StarEvaluator {
 public:
  /// Reports coefficients C_0..C_N; requires N <= (D - 2) / 2.
  StarEvaluator(FedosovInput in, int nu_order);

  const FedosovConnection& fedosov() const { return fed_; }
  int nu_order() const { return order_; }

  /// Homogeneous components Q(F)^(0..2N) of the flat lift, cached.
  const std::vector<WeylT>& lift_components(const TrigPoly& f);
  /// Q(F) through the full W-degree budget D (not cached).
  WeylT lift(const TrigPoly& f) const;

  NuSeries<TrigPoly> star(const TrigPoly& f, const TrigPoly& g);
  NuSeries<TrigPoly> star(const NuSeries<TrigPoly>& f, const NuSeries<TrigPoly>& g);
  TrigPoly coefficient(int r, const TrigPoly& f, const TrigPoly& g);

  /// Recomputes with D + 2 and compares C_0..C_N.
  bool truncation_stable(const TrigPoly& f, const TrigPoly& g) const;

  std::size_t cache_size() const { return cache_.size(); }

 private:
  std::vector<WeylT> lift_through(const TrigPoly& f, int depth) const;

  FedosovConnection fed_;
  int order_;
  std::map<std::string, std::vector<WeylT>> cache_;
};

}  // namespace dqkit
