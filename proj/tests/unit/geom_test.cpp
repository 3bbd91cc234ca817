#include <gtest/gtest.h>

#include "dqkit/geom/torus.hpp"

using namespace dqkit;

namespace {

using T = TrigPoly;

TrigPoly cst(int n, Rational q) { return TrigPoly::constant(n, Gaussian(q)); }

SymTensor3 zero3(int n) { return SymTensor3(3, n, T(n)); }

// Sum over permutations of (i, j, k, l) with sign, applied to the 4-index function f.
template <class F>
TrigPoly antisymmetrize4(int n, int i, int j, int k, int l, F&& f) {
  std::array<int, 4> p{0, 1, 2, 3}, idx{i, j, k, l};
  TrigPoly s(n);
  do {
    int inv = 0;
    for (int a = 0; a < 4; ++a)
      for (int b = a + 1; b < 4; ++b) inv += p[a] > p[b];
    TrigPoly v = f(idx[p[0]], idx[p[1]], idx[p[2]], idx[p[3]]);
    if (inv % 2) s -= v;
    else s += v;
  } while (std::next_permutation(p.begin(), p.end()));
  return s;
}

}  // namespace

TEST(Curvature, FlatAndConstant) {
  SymplecticStructure s(1);
  auto flat = torus_connection(s, zero3(2));
  auto cf = curvature(flat);
  EXPECT_TRUE(cf.riemann.is_zero());
  EXPECT_TRUE(cf.ricci.is_zero());
  EXPECT_EQ(cahen_gutt_momentum(flat), T(2));

  // Constant lowered tensor: only the quadratic terms survive.
  SymTensor3 g = zero3(2);
  g(0, 0, 0) = cst(2, 1);
  g(0, 0, 1) = g(0, 1, 0) = g(1, 0, 0) = cst(2, Rational(1, 2));
  g = symmetric_completion(g);
  auto c = torus_connection(s, g);
  auto cu = curvature(c);
  for (int r = 0; r < 2; ++r)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) {
          T v(2);
          for (int q = 0; q < 2; ++q)
            v += c.gamma(q, l, j) * c.gamma(r, k, q) - c.gamma(q, k, j) * c.gamma(r, l, q);
          EXPECT_EQ(cu.riemann(r, j, k, l), v);
        }
  EXPECT_FALSE(cu.riemann.is_zero());
}

TEST(Curvature, BianchiAndRicciSymmetry) {
  for (int m : {1, 2}) {
    SymplecticStructure s(m);
    const int n = 2 * m;
    Rng rng(100 + m);
    auto c = torus_connection(s, random_symmetric3(rng, n, 1, m == 1 ? 3 : 2, 1));
    auto cu = curvature(c);
    for (int r = 0; r < n; ++r)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l) {
            EXPECT_EQ(cu.riemann(r, j, k, l), -cu.riemann(r, j, l, k));
            // R(k,l)j + R(l,j)k + R(j,k)l = 0
            EXPECT_TRUE((cu.riemann(r, j, k, l) + cu.riemann(r, k, l, j) + cu.riemann(r, l, j, k)).is_zero());
          }
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) EXPECT_EQ(cu.ricci(i, j), cu.ricci(j, i));
  }
}

TEST(CovariantDerivative, HessianAndRicciIdentity) {
  SymplecticStructure s(1);
  Rng rng(7);
  T f = random_trig_poly(rng, 2, 1, 3);
  auto flat = torus_connection(s, zero3(2));
  auto h = second_cov_deriv(flat, Tensor<T>(0, 2, f));
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) EXPECT_EQ(h(i, j), f.derive(i).derive(j));
  Tensor<T> konst(1, 2, cst(2, 3));
  EXPECT_TRUE(second_cov_deriv(flat, konst).is_zero());

  auto c = torus_connection(s, random_symmetric3(rng, 2, 1, 3, 1));
  auto cu = curvature(c);
  Tensor<T> x(1, 2, T(2)), alpha(1, 2, T(2));
  for (int i = 0; i < 2; ++i) {
    x.at(i) = random_trig_poly(rng, 2, 1, 1);
    alpha.at(i) = random_trig_poly(rng, 2, 1, 1);
  }
  auto hx = second_cov_deriv(c, x, 1u), ha = second_cov_deriv(c, alpha);
  for (int p = 0; p < 2; ++p)
    for (int q = 0; q < 2; ++q)
      for (int a = 0; a < 2; ++a) {
        T rx(2), ra(2);
        for (int l = 0; l < 2; ++l) {
          rx += cu.riemann(a, l, p, q) * x.at(l);
          ra -= cu.riemann(l, a, p, q) * alpha.at(l);
        }
        EXPECT_EQ(hx(p, q, a) - hx(q, p, a), rx);
        EXPECT_EQ(ha(p, q, a) - ha(q, p, a), ra);
      }
}

TEST(MakeSymplectic, RestoresParallelOmega) {
  SymplecticStructure s(1);
  Rng rng(9);
  auto omega = promote(s.omega(), T(2));
  auto flat = Connection<T>::flat(omega);
  EXPECT_EQ(make_symplectic(flat).gamma(), flat.gamma());

  Tensor<T> g(3, 2, T(2));
  for (int k = 0; k < 2; ++k)
    for (int i = 0; i < 2; ++i)
      for (int j = i; j < 2; ++j) g(k, i, j) = g(k, j, i) = random_trig_poly(rng, 2, 1, 1);
  Connection<T> nabla0(omega, g);
  EXPECT_FALSE(nabla0.preserves_omega());
  auto nabla = make_symplectic(nabla0);
  EXPECT_TRUE(nabla.preserves_omega());
  EXPECT_TRUE(nabla.torsion_free());
  EXPECT_EQ(make_symplectic(nabla).gamma(), nabla.gamma());

  g(0, 0, 1) += cst(2, 1);
  EXPECT_THROW(make_symplectic(Connection<T>(omega, g)), std::invalid_argument);
}

TEST(LieDerivative, FlatAndConstant) {
  SymplecticStructure s(1);
  Rng rng(11);
  auto flat = torus_connection(s, zero3(2));
  T f = random_trig_poly(rng, 2, 1, 2);
  auto l = lie_derivative_connection(flat, f);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) EXPECT_EQ(l(i, j, k), f.derive(i).derive(j).derive(k));

  auto c = torus_connection(s, random_symmetric3(rng, 2, 1, 3, 1));
  EXPECT_TRUE(lie_derivative_connection(c, cst(2, 5)).is_zero());
  EXPECT_TRUE(is_totally_symmetric(lie_derivative_connection(c, f)));
  // Every nonconstant low-frequency mode moves the flat connection.
  for (int a = -1; a <= 1; ++a)
    for (int b = -1; b <= 1; ++b) {
      if (a == 0 && b == 0) continue;
      std::vector<int> k{a, b};
      T g = TrigPoly::cosine(2, make_frequency(k), Rational(1));
      EXPECT_FALSE(lie_derivative_connection(flat, g).is_zero());
    }
}

TEST(Pontryagin, SurfaceFlatAndOracle) {
  Rng rng(13);
  SymplecticStructure s1(1);
  EXPECT_TRUE(pontryagin_scalar(torus_connection(s1, random_symmetric3(rng, 2, 1, 3, 1))).is_zero());
  SymplecticStructure s(2);
  EXPECT_TRUE(pontryagin_scalar(torus_connection(s, zero3(4))).is_zero());

  auto c = torus_connection(s, random_symmetric3(rng, 4, 1, 3, 1));
  auto cu = curvature(c);
  const int n = 4;
  // beta_{ijkl} = (1/2) * 6 Alt(R^a_{bij} R^b_{akl}), P = (1/8) lambda^{ji} lambda^{lk} beta_{ijkl}
  T p(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          Rational w = s.lambda(j, i) * s.lambda(l, k);
          if (sgn(w) == 0) continue;
          T beta = antisymmetrize4(n, i, j, k, l, [&](int a1, int a2, int a3, int a4) {
            T t(n);
            for (int a = 0; a < n; ++a)
              for (int b = 0; b < n; ++b) t += cu.riemann(a, b, a1, a2) * cu.riemann(b, a, a3, a4);
            return t;
          });
          p += beta * (w * Rational(1, 8) * Rational(6, 24) * Rational(1, 2));
        }
  EXPECT_FALSE(p.is_zero());
  EXPECT_EQ(pontryagin_scalar(c), p);
}

TEST(Momentum, FlatSurfaceAndMean) {
  Rng rng(17);
  SymplecticStructure s(1);
  auto c = torus_connection(s, random_symmetric3(rng, 2, 1, 3, 1));
  auto cu = curvature(c);
  T mu = cahen_gutt_momentum(c);
  EXPECT_EQ(mu, ricci_hessian_trace(c, cu));
  EXPECT_FALSE(mu.is_zero());
  EXPECT_EQ(volume_integral(mu, s), Rational(0));
  EXPECT_TRUE(mu.is_real());
}

TEST(OmegaE, AntisymmetryAndHandContraction) {
  Rng rng(19);
  SymplecticStructure s(1);
  SymTensor3 a = random_symmetric3(rng, 2, 1, 2, 2), b = random_symmetric3(rng, 2, 1, 2, 2);
  EXPECT_EQ(omega_E_pairing(s, zero3(2), b), Rational(0));
  EXPECT_EQ(omega_E_pairing(s, a, b), -omega_E_pairing(s, b, a));
  EXPECT_EQ(omega_E_pairing(s, a, a), Rational(0));

  // A = cos(x) at slots (0,0,1), B = cos(x) at slots (0,1,1); the only surviving term pairs
  // (0,0,1) with (1,1,0) through lambda^{01} lambda^{01} lambda^{10} = -1 * -1 * 1.
  T cx = TrigPoly::cosine(2, make_frequency(std::vector<int>{1, 0}), Rational(1));
  SymTensor3 a1 = zero3(2), b1 = zero3(2);
  a1(0, 0, 1) = cx;
  b1(0, 1, 1) = cx;
  a1 = symmetric_completion(a1);
  b1 = symmetric_completion(b1);
  // Each of the 3 orderings of A meets exactly one ordering of B; cos^2 has mean 1/2.
  EXPECT_EQ(omega_E_pairing(s, a1, b1), Rational(3, 2));
}

TEST(MomentMap, ExactResidualOnT2) {
  Rng rng(23);
  SymplecticStructure s(1);
  for (int trial = 0; trial < 3; ++trial) {
    auto g = random_symmetric3(rng, 2, 1, 3, 1), a = random_symmetric3(rng, 2, 1, 2, 2);
    T f = random_trig_poly(rng, 2, 1, 3);
    auto r = moment_map_identity_check(s, g, a, f);
    EXPECT_TRUE(r.passed()) << to_string(r.lhs) << " vs " << to_string(r.rhs);
    EXPECT_NE(sgn(r.lhs), 0);
    EXPECT_TRUE(moment_map_identity_check(s, g, zero3(2), f).passed());
    EXPECT_EQ(moment_map_identity_check(s, g, a, cst(2, 2)).lhs, Rational(0));
  }
}

TEST(MomentMap, PolynomialDegreeInT) {
  for (int m : {1, 2}) {
    Rng rng(29 + m);
    SymplecticStructure s(m);
    const int n = 2 * m;
    auto g = random_symmetric3(rng, n, 1, 3, 1), a = random_symmetric3(rng, n, 1, 3, 1);
    auto mu = momentum_t_expansion(s, g, a, 6);
    int top = 0;
    for (int j = 0; j <= 6; ++j)
      if (!mu[j].is_zero()) top = j;
    // Contractions of lambda against the symmetric connection tensor kill the naive
    // higher powers of t.
    EXPECT_LE(top, 3);
    EXPECT_GE(top, 1);
    RecordProperty(m == 1 ? "t_degree_T2" : "t_degree_T4", top);
  }
}
