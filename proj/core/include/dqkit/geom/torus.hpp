#pragma once

#include "dqkit/geom/invariants.hpp"
#include "dqkit/numerics/jet.hpp"
#include "dqkit/numerics/random.hpp"
#include "dqkit/numerics/trig_poly.hpp"
#include "dqkit/weyl/symplectic_structure.hpp"

namespace dqkit {

/// Symplectic connections on the torus with constant omega: flat coordinate connection plus
/// a totally symmetric lowered 3-tensor.
using TorusConnection = Connection<TrigPoly>;
using SymTensor3 = Tensor<TrigPoly>;

TorusConnection torus_connection(const SymplecticStructure& s, const SymTensor3& lowered);

/// Integral against omega^m/m!, in units of the symbolic torus volume (2 pi)^{2m}.
Rational volume_integral(const TrigPoly& f, const SymplecticStructure& s);

/// Omega^E(A, B) = int lambda lambda lambda A B omega^m/m!, antisymmetric in (A, B).
Rational omega_E_pairing(const SymplecticStructure& s, const SymTensor3& a, const SymTensor3& b);

/// mu(nabla + tA) as a polynomial jet in t of the given order.
Jet<TrigPoly> momentum_t_expansion(const SymplecticStructure& s, const SymTensor3& gamma, const SymTensor3& a,
                                   int order);

struct MomentMapCheck {
  Rational lhs;       // d/dt|_0 int mu(nabla + tA) F omega^m/m!
  Rational rhs;       // Omega^E(L_{X_F} nabla, A)
  Rational residual;  // lhs - rhs
  bool passed() const { return sgn(residual) == 0; }
};

MomentMapCheck moment_map_identity_check(const SymplecticStructure& s, const SymTensor3& gamma, const SymTensor3& a,
                                         const TrigPoly& f);

/// Random totally symmetric 3-tensor: `entries` independent index triples, each a real trig
/// polynomial with `modes` terms of sup-frequency at most max_freq.
SymTensor3 random_symmetric3(Rng& rng, int dim, int max_freq, int entries, int modes);

/// Totally symmetric tensor from values on sorted triples i <= j <= k.
SymTensor3 symmetric_completion(const SymTensor3& upper);

}  // namespace dqkit
