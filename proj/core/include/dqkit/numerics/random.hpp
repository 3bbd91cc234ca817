#pragma once

#include <cstdint>
#include <random>

#include "dqkit/numerics/trig_poly.hpp"

namespace dqkit {

using Rng = std::mt19937_64;

/// Rational p/q with |p| <= max_num and 1 <= q <= max_den, never zero.
Rational random_rational(Rng& rng, int max_num = 3, int max_den = 3);

/// Real trig polynomial with `modes` random cos/sin terms, frequencies bounded by max_freq in
/// sup norm, small rational amplitudes and no constant term.
TrigPoly random_trig_poly(Rng& rng, int dim, int max_freq, int modes);

}  // namespace dqkit
