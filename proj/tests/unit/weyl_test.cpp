#include <gtest/gtest.h>

#include "dqkit/numerics/polynomial.hpp"
#include "dqkit/numerics/random.hpp"
#include "dqkit/weyl/moyal.hpp"
#include "dqkit/weyl/weyl_section.hpp"

using namespace dqkit;

namespace {

using W = WeylSection<TrigPoly>;

auto standard(int m) { return std::make_shared<const SymplecticStructure>(m); }

WeylKey key(std::initializer_list<int> y, std::initializer_list<int> dx = {}, int nu = 0) {
  WeylKey k;
  int i = 0;
  for (int e : y) k.y[i++] = static_cast<std::uint8_t>(e);
  for (int j : dx) k.form |= static_cast<std::uint8_t>(1u << j);
  k.nu = static_cast<std::int8_t>(nu);
  return k;
}

TrigPoly one(int dim) { return TrigPoly::constant(dim, Gaussian(1)); }

W mono(const W::Structure& s, int maxw, WeylKey k, TrigPoly c) { return W::monomial(s, maxw, k, c); }

// Random section with coefficients that are random trig polynomials.
W random_section(Rng& rng, const W::Structure& s, int maxw, int terms, bool forms) {
  const int n = s->dim();
  W w(s, maxw, TrigPoly(n));
  std::uniform_int_distribution<int> idx(0, n - 1), e(0, 2), nu(0, 1), f(0, 3);
  for (int t = 0; t < terms; ++t) {
    WeylKey k;
    for (int i = 0; i < n; ++i) k.y[i] = static_cast<std::uint8_t>(e(rng) * (idx(rng) < 2 ? 1 : 0));
    k.nu = static_cast<std::int8_t>(nu(rng));
    if (forms) k.form = static_cast<std::uint8_t>(f(rng) & ((1u << n) - 1));
    TrigPoly c = random_trig_poly(rng, n, 1, 1) + TrigPoly::constant(n, Gaussian(random_rational(rng)));
    w.add_term(k, c);
  }
  return w;
}

}  // namespace

TEST(WeylProduct, CanonicalCommutation) {
  for (int m : {1, 2}) {
    auto s = standard(m);
    const int n = 2 * m;
    W y1 = mono(s, 6, key({1}), one(n));
    WeylKey km;
    km.y[m] = 1;
    W ym = mono(s, 6, km, one(n));
    W c = y1 * ym - ym * y1;
    // nu * lambda^{1,m+1} with lambda^{1,m+1} = -1.
    EXPECT_EQ(c, mono(s, 6, key({}, {}, 1), TrigPoly::constant(n, Gaussian(s->lambda(0, m)))));
    EXPECT_EQ(s->lambda(0, m), Rational(-1));
    EXPECT_EQ(commutator(y1, ym), c);
    // Square of a single generator is the pointwise square.
    EXPECT_EQ(y1 * y1, mono(s, 6, key({2}), one(n)));
  }
}

TEST(WeylProduct, UnitAndAssociativity) {
  auto s = standard(1);
  Rng rng(21);
  W unit = mono(s, 6, WeylKey{}, one(2));
  for (int trial = 0; trial < 4; ++trial) {
    W a = random_section(rng, s, 6, 4, true), b = random_section(rng, s, 6, 4, true),
      c = random_section(rng, s, 6, 4, true);
    EXPECT_EQ(unit * a, a);
    EXPECT_EQ(a * unit, a);
    EXPECT_EQ((a * b) * c, a * (b * c));
  }
}

TEST(WeylProduct, AssociativityOnT4) {
  auto s = standard(2);
  Rng rng(22);
  W a = random_section(rng, s, 5, 3, true), b = random_section(rng, s, 5, 3, true),
    c = random_section(rng, s, 5, 3, false);
  EXPECT_EQ((a * b) * c, a * (b * c));
}

TEST(WeylCommutator, GradedDefinition) {
  auto s = standard(1);
  Rng rng(23);
  for (int trial = 0; trial < 6; ++trial) {
    W a = random_section(rng, s, 6, 3, true), b = random_section(rng, s, 6, 3, true);
    // Split into homogeneous form degrees and apply the definition literally.
    W lhs = commutator(a, b), rhs = a.empty_like();
    for (int qa = 0; qa <= 2; ++qa)
      for (int qb = 0; qb <= 2; ++qb) {
        W x = a.form_part(qa), y = b.form_part(qb);
        W t = x * y;
        if ((qa * qb) % 2) t += y * x;
        else t -= y * x;
        rhs += t;
      }
    EXPECT_EQ(lhs, rhs);
    EXPECT_TRUE(commutator(a, mono(s, 6, WeylKey{}, one(2))).is_zero());
  }
  // Two odd elements: [y1 dx1, y2 dx2] uses the + sign.
  W p = mono(s, 6, key({1, 0}, {0}), one(2)), q = mono(s, 6, key({0, 1}, {1}), one(2));
  EXPECT_EQ(commutator(p, q), p * q + q * p);
}

TEST(WeylDelta, Examples) {
  auto s = standard(1);
  W a = mono(s, 6, key({1, 1}), one(2));
  W expected = mono(s, 6, key({0, 1}, {0}), one(2)) + mono(s, 6, key({1, 0}, {1}), one(2));
  EXPECT_EQ(a.delta(), expected);
  EXPECT_TRUE(mono(s, 6, WeylKey{}, one(2)).delta().is_zero());

  W b = mono(s, 6, key({1, 0}, {1}), one(2));
  EXPECT_EQ(b.delta_inverse(), mono(s, 6, key({1, 1}), TrigPoly::constant(2, Gaussian(Rational(1, 2)))));
  EXPECT_TRUE(mono(s, 6, key({}, {}, 2), one(2)).delta_inverse().is_zero());
}

TEST(WeylDelta, HodgeAndDerivation) {
  for (int m : {1, 2}) {
    auto s = standard(m);
    Rng rng(30 + m);
    for (int trial = 0; trial < 6; ++trial) {
      W a = random_section(rng, s, 6, 6, true);
      W a00 = a.empty_like();
      for (const auto& [k, c] : a.terms())
        if (k.ydeg() == 0 && k.form == 0) a00.add_term(k, c);
      EXPECT_TRUE(a.delta().delta().is_zero());
      EXPECT_TRUE(a.delta_inverse().delta_inverse().is_zero());
      EXPECT_EQ(a.delta().delta_inverse() + a.delta_inverse().delta(), a - a00);
    }
    W a = random_section(rng, s, 6, 3, true), b = random_section(rng, s, 6, 3, true);
    // delta(a o b) = delta(a) o b + (-1)^{q_a} a o delta(b), per form degree of a.
    W rhs = a.empty_like();
    for (int q = 0; q <= 4; ++q) {
      W aq = a.form_part(q);
      rhs += aq.delta() * b;
      rhs += (q % 2 ? Rational(-1) : Rational(1)) * (aq * b.delta());
    }
    // delta lowers W-degree, so compare below the truncation edge.
    EXPECT_EQ((a * b).delta().truncated(5), rhs.truncated(5));
  }
}

TEST(WeylDelta, CommutatorForm) {
  // delta = -(1/nu)[omega_ij y^i dx^j, .], also for a non-block symplectic matrix.
  SquareMatrix<Rational> om(2, Rational(0));
  om(0, 1) = Rational(3, 2);
  om(1, 0) = Rational(-3, 2);
  for (auto s : {standard(1), std::make_shared<const SymplecticStructure>(om)}) {
    W theta = W(s, 8, TrigPoly(2));
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        if (sgn(s->omega(i, j)) == 0) continue;
        WeylKey k;
        k.y[i] = 1;
        k.form = static_cast<std::uint8_t>(1u << j);
        theta.add_term(k, TrigPoly::constant(2, Gaussian(s->omega(i, j))));
      }
    Rng rng(41);
    W a = random_section(rng, s, 6, 6, true);
    EXPECT_EQ(a.delta(), -commutator_over_nu(theta, a));
  }
}

TEST(Moyal, FlatExamples) {
  SymplecticStructure s(1);
  Polynomial x = Polynomial::variable(2, 0), p = Polynomial::variable(2, 1);
  auto c = moyal_star_flat(s, x, p, 3) - moyal_star_flat(s, p, x, 3);
  EXPECT_EQ(c.terms().size(), 1u);
  EXPECT_EQ(c.coefficient(1), Polynomial::constant(2, s.lambda(0, 1)));

  Rng rng(51);
  TrigPoly F = random_trig_poly(rng, 2, 2, 3), G = random_trig_poly(rng, 2, 2, 3);
  auto unit = moyal_star_flat(s, one(2), F, 4);
  EXPECT_EQ(unit.coefficient(0), F);
  EXPECT_EQ(unit.terms().size(), 1u);
  auto fg = moyal_star_flat(s, F, G, 2), gf = moyal_star_flat(s, G, F, 2);
  EXPECT_EQ(fg.coefficient(0), F * G);
  TrigPoly pb = F.derive(0) * G.derive(1) * s.lambda(0, 1) + F.derive(1) * G.derive(0) * s.lambda(1, 0);
  EXPECT_EQ(fg.coefficient(1) - gf.coefficient(1), pb);
  EXPECT_EQ(fg.coefficient(2), gf.coefficient(2));
}

TEST(Moyal, PoissonSignConsistency) {
  // {F,G} = lambda^{ij} d_i F d_j G equals -omega(X_F, X_G) with i(X_F) omega = dF.
  SymplecticStructure s(2);
  Rng rng(52);
  TrigPoly F = random_trig_poly(rng, 4, 1, 3), G = random_trig_poly(rng, 4, 1, 3);
  const int n = 4;
  auto hamiltonian = [&](const TrigPoly& H) {
    // X^i omega_ij = d_j H  =>  X^i = d_j H lambda^{ji}
    std::vector<TrigPoly> X(n, TrigPoly(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) X[i] += H.derive(j) * s.lambda(j, i);
    return X;
  };
  auto XF = hamiltonian(F), XG = hamiltonian(G);
  TrigPoly pb(n), om(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      pb += F.derive(i) * G.derive(j) * s.lambda(i, j);
      om += XF[i] * XG[j] * s.omega(i, j);
    }
  EXPECT_EQ(pb, -om);
  // i(X_F) omega = dF componentwise.
  for (int j = 0; j < n; ++j) {
    TrigPoly c(n);
    for (int i = 0; i < n; ++i) c += XF[i] * s.omega(i, j);
    EXPECT_EQ(c, F.derive(j));
  }
}
