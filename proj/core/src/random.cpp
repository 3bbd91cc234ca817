#include "dqkit/numerics/random.hpp"

#include <algorithm>

namespace dqkit {

Rational random_rational(Rng& rng, int max_num, int max_den) {
  std::uniform_int_distribution<int> num(1, max_num), den(1, max_den), sign(0, 1);
  Rational q(num(rng) * (sign(rng) ? 1 : -1), den(rng));
  q.canonicalize();
  return q;
}

TrigPoly random_trig_poly(Rng& rng, int dim, int max_freq, int modes) {
  std::uniform_int_distribution<int> freq(-max_freq, max_freq), kind(0, 1);
  TrigPoly f(dim);
  int placed = 0;
  while (placed < modes) {
    Frequency k{};
    bool nonzero = false;
    for (int j = 0; j < dim; ++j) {
      k[j] = static_cast<std::int16_t>(freq(rng));
      nonzero |= k[j] != 0;
    }
    if (!nonzero) continue;
    Rational a = random_rational(rng);
    f += kind(rng) ? TrigPoly::cosine(dim, k, a) : TrigPoly::sine(dim, k, a);
    ++placed;
  }
  return f;
}

}  // namespace dqkit
