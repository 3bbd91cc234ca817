#include "dqkit/numerics/quadrature.hpp"

#include <gsl/gsl_integration.h>

#include <cmath>
#include <memory>
#include <stdexcept>

namespace dqkit {

GaussLegendre::GaussLegendre(int n, double a, double b) {
  if (n < 1) throw std::invalid_argument("quadrature needs at least one node");
  std::unique_ptr<gsl_integration_glfixed_table, decltype(&gsl_integration_glfixed_table_free)> table(
      gsl_integration_glfixed_table_alloc(static_cast<size_t>(n)), &gsl_integration_glfixed_table_free);
  if (!table) throw std::runtime_error("cannot allocate Gauss-Legendre table");
  nodes.resize(n);
  weights.resize(n);
  // GSL is exact only for its tabulated sizes; polish on [-1, 1] in extended precision.
  const long double half = 0.5L * ((long double)b - a), mid = 0.5L * ((long double)b + a);
  for (int i = 0; i < n; ++i) {
    double xi = 0, wi = 0;
    gsl_integration_glfixed_point(-1, 1, static_cast<size_t>(i), &xi, &wi, table.get());
    long double x = xi, dp = 1;
    for (int it = 0; it < 3; ++it) {
      long double p0 = 1, p1 = x;
      for (int j = 2; j <= n; ++j) {
        long double p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1);
      x -= p1 / dp;
    }
    nodes[i] = static_cast<double>(mid + half * x);
    weights[i] = static_cast<double>(half * 2 / ((1 - x * x) * dp * dp));
  }
}

double GaussLegendre::integrate(const std::function<double(double)>& f) const {
  double s = 0;
  for (std::size_t i = 0; i < nodes.size(); ++i) s += weights[i] * f(nodes[i]);
  return s;
}

QuadratureResult integrate_doubling(const std::function<double(double)>& f, double a, double b, double tol, int n0,
                                    int n_max) {
  double prev = GaussLegendre(n0, a, b).integrate(f);
  for (int n = 2 * n0; n <= n_max; n *= 2) {
    double cur = GaussLegendre(n, a, b).integrate(f);
    double change = std::abs(cur - prev);
    if (!std::isfinite(cur)) throw std::runtime_error("quadrature produced a non-finite value");
    if (change <= tol * std::max(1.0, std::abs(cur))) return {cur, n, change};
    prev = cur;
  }
  throw std::runtime_error("Gauss-Legendre doubling did not converge");
}

}  // namespace dqkit
