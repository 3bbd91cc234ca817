#pragma once

#include <stdexcept>
#include <vector>

#include "dqkit/numerics/rational.hpp"

namespace dqkit {

struct HilbertSample {
  long k;
  long d;      // dim H^0(M, L^k)
  Rational w;  // total weight of the C^* action on H^0(M, L^k)
};

/// Hilbert and weight data of a polarized manifold of complex dimension m with a C^* action.
struct HilbertWeightData {
  int m = 1;
  std::vector<HilbertSample> samples;
};

/// Raised for data that is not jointly polynomial of the expected degrees.
class DfWeightError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// d_k = a0 k^m + a1 k^{m-1} + ...,  w_k = b0 k^{m+1} + b1 k^m + ...,
/// w_k / (k d_k) = F0 + F1/k + F2/k^2 + ...
struct DfExpansion {
  Rational a0, a1, a2, b0, b1, b2;
  Rational F0, F1, F2;
  std::vector<Rational> d_coefficients;  // ascending powers of k
  std::vector<Rational> w_coefficients;
  int held_out = 0;  // samples used only for validation
};

/// Ascending coefficients of the polynomial through the points (x_i, y_i), exactly.
std::vector<Rational> interpolate(const std::vector<Rational>& x, const std::vector<Rational>& y);

/// Interpolates d_k on m + 1 samples and w_k on m + 2 samples and validates on the rest.
/// Needs at least one held-out sample.
DfExpansion expand_F(const HilbertWeightData& data);

/// H^0(CP^1, O(k)) with basis z^j, j = 0..k, and weight j on z^j.
HilbertWeightData cp1_equivariant_oracle(int k_max);

/// Samples k = 1..count of the polynomials with the given leading coefficients
/// d = a0 k^m + a1 k^{m-1} and w = b0 k^{m+1} + b1 k^m, lower terms zero.
HilbertWeightData synthetic_hilbert_data(int m, const Rational& a0, const Rational& a1, const Rational& b0,
                                         const Rational& b1, int count);

/// The inverse action: every weight changes sign.
HilbertWeightData invert_action(HilbertWeightData data);

/// How a Futaki value f(X) = -int u_X S dvol was integrated.
enum class VolumeForm {
  OmegaPower,           // dvol = omega^m
  OmegaPowerFactorial,  // dvol = omega^m / m!
};

/// |F1 + f / (2 m! vol)| with f taken against omega^m and vol = int omega^m / m!.
Rational futaki_consistency(const Rational& F1, const Rational& f_value, VolumeForm form, int m,
                            const Rational& volume);
double futaki_consistency(const Rational& F1, double f_value, VolumeForm form, int m, double volume);

}  // namespace dqkit
