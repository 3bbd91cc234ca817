#pragma once

#include <functional>
#include <vector>

namespace dqkit {

/// n-point Gauss-Legendre rule mapped to [a, b].
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;

  GaussLegendre(int n, double a, double b);

  double integrate(const std::function<double(double)>& f) const;
};

struct QuadratureResult {
  double value = 0;
  int points = 0;
  double last_change = 0;
};

/// Gauss-Legendre with the point count doubled from n0 until two successive values differ
/// by less than tol (absolute, or relative once |value| > 1). Throws std::runtime_error if
/// n_max is reached first.
QuadratureResult integrate_doubling(const std::function<double(double)>& f, double a, double b, double tol,
                                    int n0 = 16, int n_max = 4096);

}  // namespace dqkit
