#include "dqkit/kahler/sphere.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "dqkit/numerics/quadrature.hpp"

namespace dqkit {

namespace {

Polynomial h_variable() { return Polynomial::variable(1, 0); }
Polynomial one_minus_h2() { return Polynomial::constant(1, Rational(1)) - h_variable() * h_variable(); }

Polynomial power(const Polynomial& p, int e) {
  Polynomial out = Polynomial::constant(1, Rational(1));
  for (int i = 0; i < e; ++i) out = out * p;
  return out;
}

Rational eval(const Polynomial& p, const Rational& x) {
  const Rational v[1] = {x};
  return p.evaluate(std::span<const Rational>(v, 1));
}

// int_s^1 (h - s) f(h) dh as a polynomial in s.
Polynomial double_tail_integral(const Polynomial& f) {
  const Polynomial h = h_variable();
  Polynomial i0 = integrate_univariate(f), i1 = integrate_univariate(h * f);
  Polynomial t0 = Polynomial::constant(1, eval(i0, Rational(1))) - i0;
  Polynomial t1 = Polynomial::constant(1, eval(i1, Rational(1))) - i1;
  return t1 - h * t0;
}

TaylorJet taylor_at(const Polynomial& p, double h0, int order) {
  std::vector<double> c(static_cast<std::size_t>(order) + 1);
  Polynomial d = p;
  double fact = 1;
  for (int n = 0; n <= order; ++n) {
    if (n > 0) fact *= n;
    c[static_cast<std::size_t>(n)] = d(h0) / fact;
    d = d.derive(0);
  }
  return TaylorJet(std::move(c));
}

const GaussLegendre& fixed_rule() {
  static const GaussLegendre rule(512, -1.0, 1.0);
  return rule;
}

}  // namespace

SphereProfile::SphereProfile(std::vector<Rational> psi_coefficients) : coeffs_(std::move(psi_coefficients)) {
  if (coeffs_.empty()) throw std::invalid_argument("profile needs at least one coefficient");
  psi_ = Polynomial::univariate(coeffs_);
  if (psi_.is_zero()) psi_ = Polynomial(1);
  if (eval(psi_, Rational(1)) != 1 || eval(psi_, Rational(-1)) != 1)
    throw std::invalid_argument("profile violates the pole closing conditions psi(+-1) = 1");
  constexpr int samples = 2000;
  for (int i = 0; i <= samples; ++i) {
    double h = -1.0 + 2.0 * i / samples;
    if (!(psi_(h) > 0)) throw std::invalid_argument("profile psi is not positive on [-1, 1]");
  }
  phi_ = one_minus_h2() * psi_;
  auto d = divide_univariate(psi_ - Polynomial::constant(1, Rational(1)), one_minus_h2());
  corr_ = d.quotient;
}

SphereProfile SphereProfile::round() { return SphereProfile({Rational(1)}); }

SphereProfile SphereProfile::from_correction(const Polynomial& p) {
  Polynomial psi = Polynomial::constant(1, Rational(1)) + one_minus_h2() * p;
  return SphereProfile(psi.univariate_coefficients());
}

SphereProfile random_sphere_profile(Rng& rng, int degree) {
  for (;;) {
    std::vector<Rational> c;
    for (int i = 0; i <= degree; ++i) c.push_back(random_rational(rng, 1, 3));
    try {
      return SphereProfile::from_correction(Polynomial::univariate(c));
    } catch (const std::invalid_argument&) {
    }
  }
}

// ProfileFraction

ProfileFraction::ProfileFraction(Base phi, Polynomial num, int k) : phi_(std::move(phi)), num_(std::move(num)), k_(k) {
  if (num_.nvars() == 0) num_ = Polynomial(1);
  normalize();
}

void ProfileFraction::normalize() {
  if (num_.is_zero()) {
    k_ = 0;
    return;
  }
  if (!phi_) {
    if (k_ != 0) throw std::logic_error("fraction without a base polynomial");
    return;
  }
  for (;;) {
    auto d = divide_univariate(num_, *phi_);
    if (!d.remainder.is_zero()) return;
    num_ = std::move(d.quotient);
    --k_;
  }
}

Polynomial ProfileFraction::polynomial() const {
  if (k_ > 0) throw std::domain_error("function has a pole at the poles of the chart");
  return k_ == 0 ? num_ : num_ * power(*phi_, -k_);
}

void ProfileFraction::align(const ProfileFraction& o, Polynomial& mine, Polynomial& theirs, int& k) const {
  k = std::max(k_, o.k_);
  const Polynomial& base = phi_ ? *phi_ : *o.phi_;
  mine = k == k_ ? num_ : num_ * power(base, k - k_);
  theirs = k == o.k_ ? o.num_ : o.num_ * power(base, k - o.k_);
}

ProfileFraction& ProfileFraction::operator+=(const ProfileFraction& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  Polynomial a, b;
  int k;
  align(o, a, b, k);
  if (!phi_) phi_ = o.phi_;
  num_ = a + b;
  k_ = k;
  normalize();
  return *this;
}

ProfileFraction& ProfileFraction::operator-=(const ProfileFraction& o) { return *this += -o; }

ProfileFraction& ProfileFraction::operator*=(const Rational& q) {
  num_ *= q;
  if (num_.is_zero()) k_ = 0;
  return *this;
}

ProfileFraction operator*(const ProfileFraction& a, const ProfileFraction& b) {
  if (a.is_zero() || b.is_zero()) return a.phi_ ? a.zero() : b.zero();
  return ProfileFraction(a.phi_ ? a.phi_ : b.phi_, a.num_ * b.num_, a.k_ + b.k_);
}

ProfileFraction ProfileFraction::derive(int j) const {
  if (j != 0 || is_zero()) return zero();
  // (p phi^{-k})' = (p' phi - k p phi') / phi^{k+1}
  Polynomial n = num_.derive(0) * *phi_ - num_ * phi_->derive(0) * Rational(k_);
  return ProfileFraction(phi_, std::move(n), k_ + 1);
}

ProfileFraction invert(const ProfileFraction& f) {
  if (!is_invertible(f)) throw std::domain_error("fraction is not a unit");
  Rational c = f.numerator().terms().begin()->second;
  return ProfileFraction(f.base(), Polynomial::constant(1, 1 / c), -f.phi_power());
}

// Geometry

SphereChart sphere_chart(const SphereProfile& p) {
  auto base = std::make_shared<const Polynomial>(p.phi());
  ProfileFraction zero(base, Polynomial(1)), one = zero.constant(Rational(1));
  ProfileFraction phi(base, Polynomial::constant(1, Rational(1)), -1), inv_phi(base, Polynomial::constant(1, Rational(1)), 1);
  SphereChart c{SquareMatrix<ProfileFraction>(2, zero), SquareMatrix<ProfileFraction>(2, zero),
                SquareMatrix<ProfileFraction>(2, zero)};
  c.g(0, 0) = inv_phi;
  c.g(1, 1) = phi;
  c.ginv = matrix_inverse(c.g, zero, one);
  c.omega(0, 1) = one;
  c.omega(1, 0) = -one;
  return c;
}

Connection<ProfileFraction> sphere_levi_civita(const SphereProfile& p) {
  SphereChart c = sphere_chart(p);
  return levi_civita_connection(c.g, c.ginv, c.omega);
}

Polynomial sphere_scalar_curvature(const SphereProfile& p) {
  SphereChart c = sphere_chart(p);
  auto lc = levi_civita_connection(c.g, c.ginv, c.omega);
  return ricci_trace(c.ginv, curvature(lc).ricci).polynomial();
}

Polynomial sphere_scalar_curvature_closed_form(const SphereProfile& p) { return -p.phi().derive(0).derive(0); }

Polynomial sphere_momentum(const SphereProfile& p) { return cahen_gutt_momentum(sphere_levi_civita(p)).polynomial(); }

Polynomial sphere_momentum_potential(const SphereProfile& p) {
  const Polynomial& f = p.phi();
  Polynomial d1 = f.derive(0), d2 = d1.derive(0);
  return (f * d2 - d1 * d1 * Rational(1, 2) + Polynomial::constant(1, Rational(2))) * Rational(-1, 2);
}

Polynomial sphere_momentum_closed_form(const SphereProfile& p) {
  Polynomial k = p.phi().derive(0).derive(0) * Rational(-1, 2);
  return (p.phi() * k.derive(0)).derive(0);
}

double sphere_momentum_at(const SphereProfile& p, double h0) {
  constexpr int order = 8;
  TaylorJet phi = taylor_at(p.phi(), h0, order), inv = invert(phi), zero = phi.zero(), one = phi.constant(Rational(1));
  SquareMatrix<TaylorJet> g(2, zero), ginv(2, zero), w(2, zero);
  g(0, 0) = inv;
  g(1, 1) = phi;
  ginv(0, 0) = phi;
  ginv(1, 1) = inv;
  w(0, 1) = one;
  w(1, 0) = -one;
  return cahen_gutt_momentum(levi_civita_connection(g, ginv, w)).value();
}

double sphere_integral(const std::function<double(double)>& f, double tol) {
  return 2 * std::numbers::pi * integrate_doubling(f, -1.0, 1.0, tol).value;
}

double futaki_classical(const SphereProfile& p) {
  Polynomial s = sphere_scalar_curvature(p);
  return -sphere_integral([&](double h) { return h * s(h); });
}

double futaki_cg(const SphereProfile& p) {
  Polynomial mu = sphere_momentum(p);
  return sphere_integral([&](double h) { return h * mu(h); });
}

double momentum_l1(const SphereProfile& p) {
  Polynomial mu = sphere_momentum(p);
  return 2 * std::numbers::pi * fixed_rule().integrate([&](double h) { return std::abs(mu(h)); });
}

double k_energy_derivative(const SphereProfile& p, const Polynomial& p_dot) {
  Polynomial w = double_tail_integral(sphere_momentum(p));
  const Polynomial& psi = p.psi();
  return sphere_integral([&](double s) {
    double q = psi(s);
    return p_dot(s) * w(s) / (q * q);
  });
}

double k_energy_derivative_closed_form(const SphereProfile& p, const Polynomial& p_dot) {
  Polynomial m = sphere_momentum_potential(p);
  const Polynomial& psi = p.psi();
  return sphere_integral([&](double h) {
    double q = psi(h);
    return p_dot(h) * m(h) / (q * q);
  });
}

// ProfilePath

ProfilePath::ProfilePath(std::vector<SphereProfile> nodes) : nodes_(std::move(nodes)) {
  if (nodes_.empty()) throw std::invalid_argument("path needs at least one profile");
}

int ProfilePath::segment_of(const Rational& t) const {
  if (t < 0 || t > std::max(segments(), 0)) throw std::out_of_range("path parameter outside [0, segments]");
  if (segments() == 0) return 0;
  int s = static_cast<int>(std::floor(to_double(t)));
  return std::min(s, segments() - 1);
}

SphereProfile ProfilePath::at(const Rational& t) const {
  const int s = segment_of(t);
  if (segments() == 0) return nodes_[0];
  Rational tau = t - s;
  Polynomial p = nodes_[s].correction() * (1 - tau) + nodes_[s + 1].correction() * tau;
  return SphereProfile::from_correction(p);
}

Polynomial ProfilePath::velocity(const Rational& t) const {
  const int s = segment_of(t);
  if (segments() == 0) return Polynomial(1);
  return nodes_[s + 1].correction() - nodes_[s].correction();
}

double ProfilePath::k_energy_derivative(double t) const {
  Rational tr(t);
  return dqkit::k_energy_derivative(at(tr), velocity(tr));
}

double ProfilePath::k_energy(double t) const {
  if (t < 0 || t > std::max(segments(), 0)) throw std::out_of_range("path parameter outside [0, segments]");
  double total = 0;
  for (int s = 0; s < segments() && s < t; ++s) {
    // mu is quadratic in the segment parameter, so interpolate it exactly from three profiles
    const Polynomial p0 = nodes_[s].correction(), p1 = nodes_[s + 1].correction(), dp = p1 - p0;
    const Polynomial m0 = sphere_momentum(nodes_[s]), m1 = sphere_momentum(nodes_[s + 1]);
    const Polynomial mh = sphere_momentum(SphereProfile::from_correction((p0 + p1) * Rational(1, 2)));
    const Polynomial wa = double_tail_integral(m0), wb = double_tail_integral(mh * Rational(4) - m0 * Rational(3) - m1),
                     wc = double_tail_integral(m0 * Rational(2) + m1 * Rational(2) - mh * Rational(4));
    const Polynomial psi0 = nodes_[s].psi(), dpsi = nodes_[s + 1].psi() - psi0;
    auto dk = [&](double tau) {
      return sphere_integral([&](double h) {
        double w = wa(h) + tau * (wb(h) + tau * wc(h)), q = psi0(h) + tau * dpsi(h);
        return dp(h) * w / (q * q);
      });
    };
    const double end = std::min(1.0, t - s);
    if (end > 0) total += integrate_doubling(dk, 0.0, end, 1e-12, 8).value;
  }
  return total;
}

}  // namespace dqkit
