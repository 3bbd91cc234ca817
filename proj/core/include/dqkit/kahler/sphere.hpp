#pragma once

#include <memory>
#include <vector>

#include "dqkit/geom/invariants.hpp"
#include "dqkit/geom/levi_civita.hpp"
#include "dqkit/numerics/polynomial.hpp"
#include "dqkit/numerics/random.hpp"
#include "dqkit/numerics/taylor_jet.hpp"

namespace dqkit {

/// Rotation-invariant metric on S^2 in the chart (h, theta), h in (-1, 1):
///   omega = dh ^ dtheta,  g = dh^2 / phi + phi dtheta^2,  phi = (1 - h^2) psi.
/// Smoothness at the poles requires psi(+-1) = 1, i.e. phi'(-1) = 2 and phi'(1) = -2.
class SphereProfile {
 public:
  explicit SphereProfile(std::vector<Rational> psi_coefficients);
  /// psi = 1, the round metric of area 4 pi.
  static SphereProfile round();
  /// psi = 1 + (1 - h^2) p(h).
  static SphereProfile from_correction(const Polynomial& p);

  const std::vector<Rational>& psi_coefficients() const { return coeffs_; }
  const Polynomial& psi() const { return psi_; }
  const Polynomial& phi() const { return phi_; }
  /// p with psi = 1 + (1 - h^2) p.
  const Polynomial& correction() const { return corr_; }

 private:
  std::vector<Rational> coeffs_;
  Polynomial psi_, phi_, corr_;
};

/// psi = 1 + (1 - h^2) p with p of the given degree and small random rational coefficients,
/// redrawn until psi > 0.
SphereProfile random_sphere_profile(Rng& rng, int degree);

/// Ring of functions p(h) / phi(h)^k on the chart, k an integer, kept with phi not dividing p.
/// The second coordinate theta is cyclic: derive(1) = 0.
class ProfileFraction {
 public:
  using Base = std::shared_ptr<const Polynomial>;

  ProfileFraction() = default;
  ProfileFraction(Base phi, Polynomial num, int k = 0);

  const Polynomial& numerator() const { return num_; }
  int phi_power() const { return k_; }
  const Base& base() const { return phi_; }
  /// The element as a polynomial; throws if it has a pole at the zeros of phi.
  Polynomial polynomial() const;

  ProfileFraction zero() const { return {phi_, Polynomial(1), 0}; }
  ProfileFraction constant(const Rational& q) const { return {phi_, Polynomial::constant(1, q), 0}; }
  ProfileFraction derive(int j) const;
  bool is_zero() const { return num_.is_zero(); }

  ProfileFraction& operator+=(const ProfileFraction& o);
  ProfileFraction& operator-=(const ProfileFraction& o);
  ProfileFraction& operator*=(const Rational& q);

  friend ProfileFraction operator+(ProfileFraction a, const ProfileFraction& b) { return a += b; }
  friend ProfileFraction operator-(ProfileFraction a, const ProfileFraction& b) { return a -= b; }
  friend ProfileFraction operator-(ProfileFraction a) { return a *= Rational(-1); }
  friend ProfileFraction operator*(ProfileFraction a, const Rational& q) { return a *= q; }
  friend ProfileFraction operator*(const ProfileFraction& a, const ProfileFraction& b);
  friend bool operator==(const ProfileFraction& a, const ProfileFraction& b) {
    return a.k_ == b.k_ && a.num_ == b.num_;
  }

 private:
  void normalize();
  void align(const ProfileFraction& o, Polynomial& mine, Polynomial& theirs, int& k) const;

  Base phi_;
  Polynomial num_{1};
  int k_ = 0;
};

inline bool is_invertible(const ProfileFraction& f) { return f.numerator().degree() == 0; }
ProfileFraction invert(const ProfileFraction& f);

/// Metric, its inverse and omega of the profile, in the fraction ring of phi.
struct SphereChart {
  SquareMatrix<ProfileFraction> g, ginv, omega;
};
SphereChart sphere_chart(const SphereProfile& p);

Connection<ProfileFraction> sphere_levi_civita(const SphereProfile& p);

/// Riemannian scalar curvature g^{ij} Ric_{ij} from the chart connection.
Polynomial sphere_scalar_curvature(const SphereProfile& p);
/// -phi''.
Polynomial sphere_scalar_curvature_closed_form(const SphereProfile& p);

/// Cahen-Gutt momentum of the Levi-Civita connection (P = 0 on a surface), exactly.
Polynomial sphere_momentum(const SphereProfile& p);
/// (phi K')' with Gauss curvature K = -phi''/2; equals M'' for
/// M = -(phi phi'' - phi'^2/2 + 2)/2, which vanishes with M' at both poles.
Polynomial sphere_momentum_closed_form(const SphereProfile& p);
Polynomial sphere_momentum_potential(const SphereProfile& p);
/// The same momentum in floating point, from Taylor jets of the metric at h0.
double sphere_momentum_at(const SphereProfile& p, double h0);

/// Quadrature tolerance of the doubling Gauss-Legendre loop on [-1, 1].
inline constexpr double kSphereQuadratureTol = 1e-12;

/// int F omega over S^2 for a function of h.
double sphere_integral(const std::function<double(double)>& f, double tol = kSphereQuadratureTol);

/// f(X) = -int u_X S omega for the rotation field, u_X = h, S Riemannian.
double futaki_classical(const SphereProfile& p);
/// Fut = int mu(nabla) u_X omega.
double futaki_cg(const SphereProfile& p);
/// int |mu| omega, with a fixed high-order rule.
double momentum_l1(const SphereProfile& p);

/// Admissible variation of the profile: psi_dot = (1 - h^2) p_dot.
/// dK = int phi_dot mu omega for the Kahler-potential variation, evaluated as
///   -int u_dot mu omega  with  u_dot'' = -phi_dot/phi^2 = -p_dot/psi^2,
/// by exact double integration of the polynomial mu.
double k_energy_derivative(const SphereProfile& p, const Polynomial& p_dot);
/// The same derivative as 2 pi int p_dot M / psi^2 dh.
double k_energy_derivative_closed_form(const SphereProfile& p, const Polynomial& p_dot);

/// Piecewise-linear path through profiles, parametrized by t in [0, nodes - 1].
class ProfilePath {
 public:
  explicit ProfilePath(std::vector<SphereProfile> nodes);
  int segments() const { return static_cast<int>(nodes_.size()) - 1; }
  SphereProfile at(const Rational& t) const;
  /// d p / dt on the segment containing t.
  Polynomial velocity(const Rational& t) const;
  /// K(t) - K(0) = int_0^t dK(gamma'(s)) ds.
  double k_energy(double t) const;
  /// dK(gamma'(t)).
  double k_energy_derivative(double t) const;

 private:
  int segment_of(const Rational& t) const;
  std::vector<SphereProfile> nodes_;
};

}  // namespace dqkit
