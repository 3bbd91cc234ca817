#include "dqkit/geom/torus.hpp"

#include <algorithm>
#include <array>

namespace dqkit {

TorusConnection torus_connection(const SymplecticStructure& s, const SymTensor3& lowered) {
  const int n = s.dim();
  if (lowered.rank() != 3 || lowered.dim() != n) throw std::invalid_argument("connection tensor has the wrong shape");
  if (!is_totally_symmetric(lowered)) throw std::invalid_argument("connection tensor is not totally symmetric");
  return TorusConnection::from_lowered(promote(s.omega(), TrigPoly(n)), lowered);
}

Rational volume_integral(const TrigPoly& f, const SymplecticStructure& s) {
  return abs(s.pfaffian()) * torus_integrate(f);
}

Rational omega_E_pairing(const SymplecticStructure& s, const SymTensor3& a, const SymTensor3& b) {
  return volume_integral(triple_contraction(promote(s.lambda(), TrigPoly(s.dim())), a, b), s);
}

Jet<TrigPoly> momentum_t_expansion(const SymplecticStructure& s, const SymTensor3& gamma, const SymTensor3& a,
                                   int order) {
  using J = Jet<TrigPoly>;
  const int n = s.dim();
  Tensor<J> g(3, n, J(order, TrigPoly(n)));
  for (std::size_t f = 0; f < g.size(); ++f) g.at(f) = J::linear(order, gamma.at(f), a.at(f));
  auto omega = promote(s.omega(), J(order, TrigPoly(n)));
  return cahen_gutt_momentum(Connection<J>::from_lowered(omega, g));
}

MomentMapCheck moment_map_identity_check(const SymplecticStructure& s, const SymTensor3& gamma, const SymTensor3& a,
                                         const TrigPoly& f) {
  MomentMapCheck out;
  Jet<TrigPoly> mu = momentum_t_expansion(s, gamma, a, 1);
  out.lhs = volume_integral(mu[1] * f, s);
  auto conn = torus_connection(s, gamma);
  out.rhs = omega_E_pairing(s, lie_derivative_connection(conn, f), a);
  out.residual = out.lhs - out.rhs;
  return out;
}

SymTensor3 symmetric_completion(const SymTensor3& upper) {
  const int n = upper.dim();
  SymTensor3 t(3, n, TrigPoly(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        std::array<int, 3> ix{i, j, k};
        std::sort(ix.begin(), ix.end());
        t(i, j, k) = upper(ix[0], ix[1], ix[2]);
      }
  return t;
}

SymTensor3 random_symmetric3(Rng& rng, int dim, int max_freq, int entries, int modes) {
  SymTensor3 t(3, dim, TrigPoly(dim));
  std::uniform_int_distribution<int> idx(0, dim - 1);
  for (int e = 0; e < entries; ++e) {
    std::array<int, 3> ix{idx(rng), idx(rng), idx(rng)};
    std::sort(ix.begin(), ix.end());
    t(ix[0], ix[1], ix[2]) += random_trig_poly(rng, dim, max_freq, modes);
  }
  return symmetric_completion(t);
}

}  // namespace dqkit
