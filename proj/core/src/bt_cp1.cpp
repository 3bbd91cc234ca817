#include "dqkit/bt/bt_cp1.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dqkit {

namespace {

using Coefficient = ModeFunction::Coefficient;

Polynomial one_minus_h2() {
  Polynomial h = Polynomial::variable(1, 0);
  return Polynomial::constant(1, Rational(1)) - h * h;
}

Polynomial power(const Polynomial& p, int e) {
  Polynomial out = Polynomial::constant(1, Rational(1));
  for (int i = 0; i < e; ++i) out = out * p;
  return out;
}

Coefficient times(const Coefficient& a, const Coefficient& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
Coefficient times(const Coefficient& a, const Polynomial& p) { return {a.re * p, a.im * p}; }
Coefficient times_i(const Coefficient& a) { return {-a.im, a.re}; }
Coefficient derive(const Coefficient& a) { return {a.re.derive(0), a.im.derive(0)}; }
Coefficient minus(const Coefficient& a, const Coefficient& b) { return {a.re - b.re, a.im - b.im}; }
Coefficient scaled(const Coefficient& a, const Rational& q) { return {a.re * q, a.im * q}; }
bool is_zero(const Coefficient& a) { return a.re.is_zero() && a.im.is_zero(); }

Polynomial exact_quotient(const Polynomial& a, const Polynomial& b) {
  auto d = divide_univariate(a, b);
  if (!d.remainder.is_zero()) throw std::logic_error("pole factors failed to recombine");
  return d.quotient;
}

double logsumexp(const std::vector<double>& v) {
  double m = *std::max_element(v.begin(), v.end());
  double s = 0;
  for (double x : v) s += std::exp(x - m);
  return m + std::log(s);
}

int default_nodes(int k) { return 2 * k + 96; }

}  // namespace

// ModeFunction

ModeFunction ModeFunction::mode(int n, const Polynomial& re, const Polynomial& im) {
  ModeFunction f;
  f.add(n, {re.nvars() ? re : Polynomial(1), im.nvars() ? im : Polynomial(1)});
  return f;
}

void ModeFunction::add(int n, const Coefficient& c) {
  auto [it, inserted] = modes_.try_emplace(n, c);
  if (!inserted) {
    it->second.re += c.re;
    it->second.im += c.im;
  }
  if (is_zero(it->second)) modes_.erase(it);
}

bool ModeFunction::is_invariant() const { return modes_.empty() || (modes_.size() == 1 && modes_.begin()->first == 0); }

int ModeFunction::bandwidth() const {
  int b = 0;
  for (const auto& [n, c] : modes_) b = std::max(b, std::abs(n));
  return b;
}

int ModeFunction::degree() const {
  int d = 0;
  for (const auto& [n, c] : modes_) d = std::max({d, c.re.degree() + std::abs(n), c.im.degree() + std::abs(n)});
  return d;
}

std::complex<double> ModeFunction::component(int n, double h) const {
  auto it = modes_.find(n);
  if (it == modes_.end()) return 0.0;
  double pole = std::pow(std::max(0.0, 1 - h * h), 0.5 * std::abs(n));
  return std::complex<double>(it->second.re(h), it->second.im(h)) * pole;
}

std::complex<double> ModeFunction::operator()(double h, double theta) const {
  std::complex<double> s = 0;
  for (const auto& [n, c] : modes_) s += component(n, h) * std::polar(1.0, n * theta);
  return s;
}

ModeFunction& ModeFunction::operator+=(const ModeFunction& o) {
  for (const auto& [n, c] : o.modes_) add(n, c);
  return *this;
}

ModeFunction operator*(const ModeFunction& a, const ModeFunction& b) {
  ModeFunction out;
  const Polynomial w = one_minus_h2();
  for (const auto& [na, ca] : a.modes_)
    for (const auto& [nb, cb] : b.modes_) {
      const int extra = (std::abs(na) + std::abs(nb) - std::abs(na + nb)) / 2;
      out.add(na + nb, times(times(ca, cb), power(w, extra)));
    }
  return out;
}

ModeFunction operator*(ModeFunction a, const Rational& q) {
  ModeFunction out;
  for (const auto& [n, c] : a.modes_) out.add(n, scaled(c, q));
  return out;
}

bool operator==(const ModeFunction& a, const ModeFunction& b) {
  if (a.modes_.size() != b.modes_.size()) return false;
  for (auto i = a.modes_.begin(), j = b.modes_.begin(); i != a.modes_.end(); ++i, ++j)
    if (i->first != j->first || !(i->second.re == j->second.re) || !(i->second.im == j->second.im)) return false;
  return true;
}

ModeFunction poisson_bracket_cp1(const ModeFunction& f, const ModeFunction& g) {
  // With F = P w^{|a|/2} e^{ia theta}, G = Q w^{|b|/2} e^{ib theta}, w = 1 - h^2:
  //   d_h F d_theta G - d_theta F d_h G
  //     = i w^{(|a|+|b|)/2 - 1} [ w (b P'Q - a P Q') + h P Q (a|b| - b|a|) ],
  // and d_x = 2 d_h.
  ModeFunction out;
  const Polynomial w = one_minus_h2(), h = Polynomial::variable(1, 0);
  for (const auto& [a, P] : f.modes())
    for (const auto& [b, Q] : g.modes()) {
      const int aa = std::abs(a), bb = std::abs(b);
      Coefficient x = times(minus(scaled(times(derive(P), Q), Rational(b)), scaled(times(P, derive(Q)), Rational(a))), w);
      Coefficient y = scaled(times(times(P, Q), h), Rational(a * bb - b * aa));
      x = times_i(Coefficient{x.re + y.re, x.im + y.im});
      const int extra = (aa + bb - std::abs(a + b)) / 2 - 1;
      if (extra < 0)
        x = {exact_quotient(x.re, w), exact_quotient(x.im, w)};
      else
        x = times(x, power(w, extra));
      out += ModeFunction::mode(a + b, x.re * Rational(-2), x.im * Rational(-2));
    }
  return out;
}

double integrate_cp1(const ModeFunction& f) {
  // int_0^1 c_0 dx = (1/2) int_{-1}^1 c_0(h) dh
  auto it = f.modes().find(0);
  if (it == f.modes().end()) return 0;
  Polynomial a = integrate_univariate(it->second.re);
  return 0.5 * (a(1.0) - a(-1.0));
}

// BundleMetricCP1

BundleMetricCP1::BundleMetricCP1() : profile_(SphereProfile::round()), fs_(true) {}

BundleMetricCP1::BundleMetricCP1(SphereProfile profile)
    : profile_(std::move(profile)), fs_(profile_.correction().is_zero()) {}

BundleMetricCP1::Correction BundleMetricCP1::correction(double x) const {
  if (fs_ || x <= 0) return {0, 0};
  // v(x) = int_0^x (x - s) v''(s) ds,  v'(x) = int_0^x v''(s) ds
  static const GaussLegendre unit(48, 0.0, 1.0);
  const Polynomial& p = profile_.correction();
  const Polynomial& psi = profile_.psi();
  double v = 0, dv = 0;
  for (std::size_t q = 0; q < unit.nodes.size(); ++q) {
    double s = x * unit.nodes[q], h = 2 * s - 1;
    double d2 = -4 * p(h) / psi(h);
    dv += unit.weights[q] * x * d2;
    v += unit.weights[q] * x * (x - s) * d2;
  }
  return {v, dv};
}

double BundleMetricCP1::log_norm_correction(int k, int j, double x) const {
  if (fs_) return 0;
  auto c = correction(x);
  return k * c.v + (j - k * x) * c.dv;
}

double BundleMetricCP1::log_section_norm(int k, int j, double x) const {
  if (!(x > 0 && x < 1)) throw std::domain_error("section norms are evaluated on the open chart");
  // k u_FS + (j - k x) u_FS' = j log x + (k - j) log(1 - x)
  return j * std::log(x) + (k - j) * std::log1p(-x) + log_norm_correction(k, j, x);
}

// BergmanData

BergmanData::BergmanData(const BundleMetricCP1& metric, int k, int nodes)
    : metric_(metric), k_(k), rule_(nodes > 0 ? nodes : default_nodes(k), 0.0, 1.0) {
  if (k < 0) throw std::invalid_argument("tensor power must be non-negative");
  const std::size_t n = rule_.nodes.size();
  lognorm_.assign(n, std::vector<double>(static_cast<std::size_t>(k) + 1));
  for (std::size_t q = 0; q < n; ++q) {
    const double x = rule_.nodes[q];
    if (metric_.is_fubini_study()) {
      for (int j = 0; j <= k; ++j) lognorm_[q][j] = metric_.log_section_norm(k, j, x);
      continue;
    }
    // one correction evaluation per node
    double c0 = metric_.log_norm_correction(k, 0, x), c1 = metric_.log_norm_correction(k, 1, x) - c0;
    for (int j = 0; j <= k; ++j) lognorm_[q][j] = j * std::log(x) + (k - j) * std::log1p(-x) + c0 + j * c1;
  }
  log_gram_.resize(static_cast<std::size_t>(k) + 1);
  std::vector<double> terms(n);
  for (int j = 0; j <= k; ++j) {
    for (std::size_t q = 0; q < n; ++q) terms[q] = std::log(rule_.weights[q]) + lognorm_[q][j];
    log_gram_[j] = logsumexp(terms);
  }
}

Eigen::MatrixXd BergmanData::gram() const {
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(k_ + 1, k_ + 1);
  for (int j = 0; j <= k_; ++j) g(j, j) = std::exp(log_gram_[j]);
  return g;
}

double BergmanData::bergman(double x) const {
  double s = 0;
  for (int j = 0; j <= k_; ++j) s += std::exp(metric_.log_section_norm(k_, j, x) - log_gram_[j]);
  return s;
}

std::complex<double> gram_entry(const BundleMetricCP1& metric, int k, int a, int b, int theta_points) {
  // z^a zbar^b e^{-k Phi} = exp((E_a + E_b)/2) e^{i (a - b) theta}
  GaussLegendre rule(default_nodes(k), 0.0, 1.0);
  std::complex<double> total = 0;
  for (int t = 0; t < theta_points; ++t) {
    const double theta = 2 * std::numbers::pi * t / theta_points;
    double radial = 0;
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
      double x = rule.nodes[q];
      radial += rule.weights[q] * std::exp(0.5 * (metric.log_section_norm(k, a, x) + metric.log_section_norm(k, b, x)));
    }
    total += radial * std::polar(1.0, (a - b) * theta);
  }
  return total / static_cast<double>(theta_points);
}

Eigen::MatrixXcd toeplitz_matrix(const BergmanData& b, const ModeFunction& f) {
  const int d = b.dimension();
  const auto& rule = b.rule();
  Eigen::MatrixXcd t = Eigen::MatrixXcd::Zero(d, d);
  for (const auto& [n, c] : f.modes()) {
    std::vector<std::complex<double>> comp(rule.nodes.size());
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) comp[q] = f.component(n, 2 * rule.nodes[q] - 1);
    for (int j = std::max(0, -n); j < d && j + n < d; ++j) {
      std::complex<double> s = 0;
      for (std::size_t q = 0; q < rule.nodes.size(); ++q)
        s += rule.weights[q] * comp[q] *
             std::exp(0.5 * (b.orthonormal_log_norm(static_cast<int>(q), j) +
                             b.orthonormal_log_norm(static_cast<int>(q), j + n)));
      t(j + n, j) = s;
    }
  }
  return t;
}

double bergman_trace_integral(const BergmanData& b, const ModeFunction& f) {
  auto integrand = [&](double x) { return f.component(0, 2 * x - 1).real() * b.bergman(x); };
  return integrate_doubling(integrand, 0.0, 1.0, 1e-13, 64).value;
}

std::vector<double> inverse_power_fit(const std::vector<int>& ks, const std::vector<double>& y, int terms) {
  if (ks.size() != y.size() || static_cast<int>(ks.size()) < terms)
    throw std::invalid_argument("fit needs at least as many samples as terms");
  // columns in k_min / k keep the basis well scaled
  const double k0 = *std::min_element(ks.begin(), ks.end());
  Eigen::MatrixXd a(ks.size(), terms);
  Eigen::VectorXd rhs(ks.size());
  for (std::size_t i = 0; i < ks.size(); ++i) {
    for (int t = 0; t < terms; ++t) a(i, t) = std::pow(k0 / ks[i], t);
    rhs(i) = y[i] / ks[i];
  }
  auto qr = a.colPivHouseholderQr();
  if (qr.rank() < terms) throw std::runtime_error("ill-conditioned inverse-power fit");
  Eigen::VectorXd c = qr.solve(rhs);
  std::vector<double> out(terms);
  for (int t = 0; t < terms; ++t) out[t] = c(t) * std::pow(k0, t);
  return out;
}

double log_log_slope(const std::vector<int>& ks, const std::vector<double>& y) {
  if (ks.size() != y.size() || ks.size() < 2) throw std::invalid_argument("slope needs two samples");
  double mx = 0, my = 0;
  const double n = static_cast<double>(ks.size());
  for (std::size_t i = 0; i < ks.size(); ++i) {
    mx += std::log(ks[i]) / n;
    my += std::log(y[i]) / n;
  }
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    double dx = std::log(ks[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

namespace {

std::vector<std::vector<double>> bergman_table(const BundleMetricCP1& metric, const std::vector<int>& ks,
                                               const std::vector<double>& hs) {
  std::vector<std::vector<double>> rho(hs.size(), std::vector<double>(ks.size()));  // [h][k]
  for (std::size_t i = 0; i < ks.size(); ++i) {
    BergmanData b(metric, ks[i]);
    for (std::size_t j = 0; j < hs.size(); ++j) rho[j][i] = b.bergman(0.5 * (1 + hs[j]));
  }
  return rho;
}

constexpr int kFitTerms = 4;

}  // namespace

double tyz_calibration_constant(const std::vector<int>& ks) {
  BundleMetricCP1 fs;
  auto rho = bergman_table(fs, ks, {0.0});
  double a1 = inverse_power_fit(ks, rho[0], kFitTerms)[1];
  double s = sphere_scalar_curvature(fs.profile())(0.0);
  return 4 * std::numbers::pi * a1 / s;
}

TyzReport tyz_extract(const BundleMetricCP1& metric, const std::vector<int>& ks, const std::vector<double>& hs,
                      std::optional<double> calibration) {
  if (ks.size() < 4) throw std::invalid_argument("TYZ extraction needs at least four tensor powers");
  TyzReport out;
  out.calibration = calibration ? *calibration : tyz_calibration_constant(ks);
  Polynomial s = sphere_scalar_curvature(metric.profile());
  auto rho = bergman_table(metric, ks, hs);
  for (std::size_t j = 0; j < hs.size(); ++j) {
    auto c = inverse_power_fit(ks, rho[j], kFitTerms);
    TyzSample t;
    t.h = hs[j];
    t.a0 = c[0];
    t.a1 = c[1];
    t.scalar_curvature = s(hs[j]);
    t.a0_residual = c[0] - 1;
    t.a1_residual = 4 * std::numbers::pi * c[1] - out.calibration * t.scalar_curvature;
    out.samples.push_back(t);
  }
  return out;
}

double operator_norm(const Eigen::MatrixXcd& a) {
  if (a.size() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a);
  return svd.singularValues()(0);
}

BtAsymptoticReport bt_asymptotic_checks(const BundleMetricCP1& metric, const ModeFunction& f, const ModeFunction& g,
                                        const std::vector<int>& ks) {
  if (ks.size() < 3) throw std::invalid_argument("asymptotic checks need at least three tensor powers");
  BtAsymptoticReport r;
  r.ks = ks;
  const ModeFunction fg = f * g, br = poisson_bracket_cp1(f, g);
  const std::complex<double> i(0, 1);
  for (int k : ks) {
    BergmanData b(metric, k);
    Eigen::MatrixXcd tf = toeplitz_matrix(b, f), tg = toeplitz_matrix(b, g);
    r.product_defect.push_back(operator_norm(tf * tg - toeplitz_matrix(b, fg)));
    r.commutator_defect.push_back(operator_norm(static_cast<double>(k) * (tf * tg - tg * tf) - i * toeplitz_matrix(b, br)));
  }
  // The trace is cheap; sample every k in the range so the fit can carry more terms.
  auto [lo, hi] = std::minmax_element(ks.begin(), ks.end());
  for (int k = *lo; k <= *hi; ++k) {
    r.trace_ks.push_back(k);
    r.traces.push_back(toeplitz_matrix(BergmanData(metric, k), f).trace().real());
  }
  r.product_slope = log_log_slope(ks, r.product_defect);
  r.commutator_slope = log_log_slope(ks, r.commutator_defect);
  r.trace_leading = inverse_power_fit(r.trace_ks, r.traces, std::min<int>(8, static_cast<int>(r.trace_ks.size())))[0];
  r.integral = integrate_cp1(f);
  return r;
}

}  // namespace dqkit
