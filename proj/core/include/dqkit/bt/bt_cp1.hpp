#pragma once

#include <complex>
#include <map>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "dqkit/kahler/sphere.hpp"
#include "dqkit/numerics/quadrature.hpp"

namespace dqkit {

/// Smooth function on CP^1 written as  sum_n c_n(h) (1 - h^2)^{|n|/2} e^{i n theta}
/// with complex polynomial coefficients c_n = re + i im. Products and Poisson brackets stay in
/// this form because the half-integer pole factors recombine.
class ModeFunction {
 public:
  struct Coefficient {
    Polynomial re{1}, im{1};
  };

  ModeFunction() = default;
  /// c(h) e^{i n theta} (1 - h^2)^{|n|/2}.
  static ModeFunction mode(int n, const Polynomial& re, const Polynomial& im = Polynomial(1));
  /// A rotation-invariant function of h.
  static ModeFunction invariant(const Polynomial& f) { return mode(0, f); }
  static ModeFunction constant(const Rational& c) { return invariant(Polynomial::constant(1, c)); }

  const std::map<int, Coefficient>& modes() const { return modes_; }
  bool is_invariant() const;
  /// Largest |n| present.
  int bandwidth() const;
  int degree() const;

  /// The n-th angular component c_n(h) (1 - h^2)^{|n|/2}.
  std::complex<double> component(int n, double h) const;
  std::complex<double> operator()(double h, double theta) const;

  ModeFunction& operator+=(const ModeFunction& o);
  friend ModeFunction operator+(ModeFunction a, const ModeFunction& b) { return a += b; }
  friend ModeFunction operator*(const ModeFunction& a, const ModeFunction& b);
  friend ModeFunction operator*(ModeFunction a, const Rational& q);
  friend bool operator==(const ModeFunction& a, const ModeFunction& b);

 private:
  void add(int n, const Coefficient& c);
  std::map<int, Coefficient> modes_;
};

/// {F, G} for the curvature form omega_B = i R = dx ^ dtheta, x = (1 + h)/2, in the
/// lambda = omega^{-1} convention:  {F, G} = -(d_x F d_theta G - d_theta F d_x G).
ModeFunction poisson_bracket_cp1(const ModeFunction& f, const ModeFunction& g);

/// int F omega_L over CP^1, omega_L = dx ^ dtheta / (2 pi) of unit mass.
double integrate_cp1(const ModeFunction& f);

/// Hermitian metric on O(1) over CP^1 with S^1-invariant curvature omega_L of unit mass,
/// R = -2 pi i omega_L. In the coordinate x = (1 + h)/2 the data is the symplectic potential
///   u = x log x + (1 - x) log(1 - x) + v,  v'' = -4 p(h)/psi(h),  u'' = 4/phi,
/// and the monomial section z^j of O(k) has |z^j|^2 = exp(k u + (j - k x) u').
class BundleMetricCP1 {
 public:
  /// Fubini-Study.
  BundleMetricCP1();
  explicit BundleMetricCP1(SphereProfile profile);

  const SphereProfile& profile() const { return profile_; }
  bool is_fubini_study() const { return fs_; }

  /// k v + (j - k x) v' part of the log norm, zero for Fubini-Study.
  double log_norm_correction(int k, int j, double x) const;
  /// log |z^j|^2_{h^k} at x in (0, 1).
  double log_section_norm(int k, int j, double x) const;

 private:
  struct Correction {
    double v, dv;
  };
  Correction correction(double x) const;

  SphereProfile profile_;
  bool fs_;
};

/// Gram data of H^0(CP^1, O(k)) in the monomial basis for an S^1-invariant metric.
class BergmanData {
 public:
  BergmanData(const BundleMetricCP1& metric, int k, int nodes = 0);

  int k() const { return k_; }
  int dimension() const { return k_ + 1; }
  const BundleMetricCP1& metric() const { return metric_; }
  const GaussLegendre& rule() const { return rule_; }

  /// Diagonal Gram entries G_jj = int |z^j|^2 omega_L, in log form.
  const std::vector<double>& log_gram() const { return log_gram_; }
  Eigen::MatrixXd gram() const;

  /// rho_k(x) = sum_j |z^j|^2 / G_jj at x in (0, 1).
  double bergman(double x) const;

  /// log |s_j|^2 of the orthonormal section s_j = z^j / sqrt(G_jj) at rule node q.
  double orthonormal_log_norm(int q, int j) const { return lognorm_[q][j] - log_gram_[j]; }

 private:
  BundleMetricCP1 metric_;
  int k_;
  GaussLegendre rule_;
  std::vector<std::vector<double>> lognorm_;  // [node][j]
  std::vector<double> log_gram_;
};

/// One Gram entry  int z^a zbar^b h^k omega_L  by two-dimensional quadrature (trapezoid in theta).
std::complex<double> gram_entry(const BundleMetricCP1& metric, int k, int a, int b, int theta_points = 16);

/// Toeplitz operator T_F = Pi_k(F .) in the orthonormal monomial basis: entry (j + n, j) from mode n.
Eigen::MatrixXcd toeplitz_matrix(const BergmanData& b, const ModeFunction& f);

/// int F rho_k omega_L by adaptive quadrature of the Bergman function (invariant part of F).
double bergman_trace_integral(const BergmanData& b, const ModeFunction& f);

/// Least-squares fit of y_k / k as a polynomial in 1/k: y_k ~ c_0 k + c_1 + c_2/k + ...
std::vector<double> inverse_power_fit(const std::vector<int>& ks, const std::vector<double>& y, int terms);

/// Least-squares slope of log y against log k.
double log_log_slope(const std::vector<int>& ks, const std::vector<double>& y);

struct TyzSample {
  double h;
  double a0, a1;
  double scalar_curvature;  // Riemannian S of the profile at h
  double a0_residual;       // a0 - 1
  double a1_residual;       // 4 pi a1 - c S with the calibration constant c
};

struct TyzReport {
  double calibration;  // c = 4 pi a1 / S on Fubini-Study
  std::vector<TyzSample> samples;
};

/// 4 pi a1 / S on Fubini-Study from the same fit.
double tyz_calibration_constant(const std::vector<int>& ks);
TyzReport tyz_extract(const BundleMetricCP1& metric, const std::vector<int>& ks, const std::vector<double>& hs,
                      std::optional<double> calibration = std::nullopt);

struct BtAsymptoticReport {
  std::vector<int> ks;
  std::vector<double> product_defect;     // || T_F T_G - T_{FG} ||
  std::vector<double> commutator_defect;  // || k [T_F, T_G] - i T_{F,G} ||
  std::vector<int> trace_ks;              // every k between min and max of ks
  std::vector<double> traces;             // Tr T_F at trace_ks
  double product_slope = 0, commutator_slope = 0;
  double trace_leading = 0;  // fitted coefficient of k in Tr T_F
  double integral = 0;       // int F omega_L
};

/// Operator norm (largest singular value).
double operator_norm(const Eigen::MatrixXcd& a);

BtAsymptoticReport bt_asymptotic_checks(const BundleMetricCP1& metric, const ModeFunction& f, const ModeFunction& g,
                                        const std::vector<int>& ks);

}  // namespace dqkit
