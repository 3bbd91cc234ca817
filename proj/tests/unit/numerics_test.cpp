#include <gtest/gtest.h>

#include <cmath>

#include "dqkit/numerics/jet.hpp"
#include "dqkit/numerics/matrix.hpp"
#include "dqkit/numerics/nu_series.hpp"
#include "dqkit/numerics/polynomial.hpp"
#include "dqkit/numerics/quadrature.hpp"
#include "dqkit/numerics/random.hpp"
#include "dqkit/numerics/taylor_jet.hpp"
#include "dqkit/numerics/trig_poly.hpp"

using namespace dqkit;

namespace {

Frequency freq(std::initializer_list<int> k) {
  std::vector<int> v(k);
  return make_frequency(v);
}

TrigPoly cos_x1(int dim) { return TrigPoly::cosine(dim, freq({1}), Rational(1)); }

}  // namespace

TEST(Rational, ParseAndPrint) {
  EXPECT_EQ(parse_rational("6/4"), Rational(3, 2));
  EXPECT_EQ(parse_rational("-7"), Rational(-7));
  EXPECT_EQ(to_string(parse_rational("-10/4")), "-5/2");
  EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
  EXPECT_THROW(parse_rational("1.5"), std::invalid_argument);
  EXPECT_THROW(parse_rational("3/-4"), std::invalid_argument);
  EXPECT_THROW(parse_rational(""), std::invalid_argument);
}

TEST(Gaussian, FieldOperations) {
  Gaussian z(Rational(1), Rational(2));
  Gaussian w = z * z.inverse();
  EXPECT_EQ(w, Gaussian(1));
  EXPECT_EQ(z * z.conj(), Gaussian(5));
  EXPECT_THROW(Gaussian().inverse(), std::domain_error);
}

TEST(TrigPoly, BinomialSquare) {
  TrigPoly e = TrigPoly::mode(2, freq({1}), Gaussian(1)) + TrigPoly::mode(2, freq({-1}), Gaussian(1));
  TrigPoly sq = e * e;
  EXPECT_EQ(sq.size(), 3u);
  EXPECT_EQ(sq.coefficient(freq({2})), Gaussian(1));
  EXPECT_EQ(sq.coefficient(freq({0})), Gaussian(2));
  EXPECT_EQ(sq.coefficient(freq({-2})), Gaussian(1));
}

TEST(TrigPoly, DerivativeOfCosine) {
  TrigPoly d = cos_x1(2).derive(0);
  EXPECT_EQ(d, TrigPoly::sine(2, freq({1}), Rational(-1)));
  // -sin x = (i/2) e^{ix} - (i/2) e^{-ix}
  EXPECT_EQ(d.coefficient(freq({1})), Gaussian(Rational(0), Rational(1, 2)));
  EXPECT_EQ(d.coefficient(freq({-1})), Gaussian(Rational(0), Rational(-1, 2)));
  EXPECT_TRUE(cos_x1(2).derive(1).is_zero());
}

TEST(TrigPoly, Integrals) {
  EXPECT_EQ(torus_integrate(TrigPoly::constant(2, Gaussian(1))), Rational(1));
  EXPECT_EQ(torus_integrate(cos_x1(2)), Rational(0));
  EXPECT_EQ(torus_integrate(cos_x1(4) * cos_x1(4)), Rational(1, 2));
  EXPECT_THROW(torus_integrate(TrigPoly::mode(2, freq({1}), Gaussian(1))), std::invalid_argument);
}

TEST(TrigPoly, PoissonSolve) {
  EXPECT_EQ(poisson_solve(cos_x1(2)), TrigPoly::cosine(2, freq({1}), Rational(-1)));
  EXPECT_TRUE(poisson_solve(TrigPoly(2)).is_zero());
  EXPECT_EQ(poisson_solve(TrigPoly::cosine(2, freq({1, 1}), Rational(1))),
            TrigPoly::cosine(2, freq({1, 1}), Rational(-1, 2)));
  EXPECT_THROW(poisson_solve(TrigPoly::constant(2, Gaussian(1))), std::invalid_argument);
}

TEST(TrigPoly, RandomizedProperties) {
  Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    TrigPoly f = random_trig_poly(rng, 2, 2, 3), g = random_trig_poly(rng, 2, 2, 3);
    TrigPoly fg = f * g;
    EXPECT_TRUE(f.is_real() && fg.is_real() && fg.derive(1).is_real());
    EXPECT_EQ(torus_integrate(fg.derive(0)), Rational(0));
    EXPECT_EQ(flat_laplacian(poisson_solve(f)), f);
    EXPECT_EQ(poisson_solve(flat_laplacian(f)), f);
    // Leibniz rule, exact.
    EXPECT_EQ(fg.derive(0), f.derive(0) * g + f * g.derive(0));
    // Evaluation twice gives identical maps.
    EXPECT_EQ(f * g, fg);
  }
  EXPECT_THROW(TrigPoly(2) + TrigPoly(4).constant(Rational(1)), std::invalid_argument);
}

TEST(NuSeries, Truncation) {
  NuSeries<Rational> a(1), b(1);
  a.add(0, 1);
  a.add(1, 1);
  b.add(0, 1);
  b.add(1, -1);
  NuSeries<Rational> p = a * b;
  EXPECT_EQ(p.truncation(), 1);
  EXPECT_EQ(p.terms().size(), 1u);
  EXPECT_EQ(p.coefficient(0), Rational(1));
  // Laurent part: nu^{-1} * (1 + nu) known through nu^0 only.
  NuSeries<Rational> inv = NuSeries<Rational>::monomial(-1, Rational(1), 1);
  NuSeries<Rational> q = inv * a;
  EXPECT_EQ(q.truncation(), 0);
  EXPECT_EQ(q.coefficient(-1), Rational(1));
  EXPECT_EQ(q.coefficient(0), Rational(1));
}

TEST(Jet, Inversion) {
  TrigPoly t = cos_x1(2);
  Jet<TrigPoly> a = Jet<TrigPoly>::linear(2, TrigPoly::constant(2, Gaussian(1)), t);
  Jet<TrigPoly> b = invert(a);
  EXPECT_EQ(b[0], TrigPoly::constant(2, Gaussian(1)));
  EXPECT_EQ(b[1], -t);
  EXPECT_EQ(b[2], t * t);

  Jet<TrigPoly> two(1, TrigPoly::constant(2, Gaussian(2)));
  EXPECT_EQ(invert(two)[0], TrigPoly::constant(2, Gaussian(Rational(1, 2))));

  Rng rng(3);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<TrigPoly> c{TrigPoly::constant(2, Gaussian(random_rational(rng)))};
    for (int j = 1; j <= 3; ++j) c.push_back(random_trig_poly(rng, 2, 1, 2));
    Jet<TrigPoly> r(c);
    Jet<TrigPoly> one = r * invert(r);
    EXPECT_EQ(one, r.constant(Rational(1)));
  }
  EXPECT_THROW(invert(Jet<TrigPoly>::linear(1, t, t)), std::domain_error);
}

TEST(Jet, LogarithmDerivative) {
  // d log(a) = a^{-1} da for random jets with unit head.
  Rng rng(11);
  std::vector<TrigPoly> c{TrigPoly::constant(2, Gaussian(1))};
  for (int j = 1; j <= 3; ++j) c.push_back(random_trig_poly(rng, 2, 1, 2));
  Jet<TrigPoly> a(c);
  EXPECT_EQ(log_relative(a).derive(0), invert(a) * a.derive(0));
}

TEST(Jet, MatrixInverse) {
  Rng rng(5);
  using J = Jet<TrigPoly>;
  J zero(2, TrigPoly(2)), one = zero.constant(Rational(1));
  SquareMatrix<J> m(3, zero);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      m(i, j) = J::linear(2, TrigPoly::constant(2, Gaussian(i == j ? 2 : 0)), random_trig_poly(rng, 2, 1, 1));
    }
  // Off-diagonal antisymmetric head: pivoting is needed.
  m(0, 0) = J::linear(2, TrigPoly(2), random_trig_poly(rng, 2, 1, 1));
  m(0, 1) = m(0, 1) + one;
  m(1, 0) = m(1, 0) - one;
  auto inv = matrix_inverse(m, zero, one);
  EXPECT_EQ(m * inv, SquareMatrix<J>::identity(3, zero, one));
}

TEST(TaylorJet, ReciprocalAndDerivative) {
  TaylorJet h = TaylorJet::variable(6, 0.3);
  TaylorJet f = h * h * 1.5 + h;  // 1.5 h^2 + h
  EXPECT_NEAR(f.value(), 1.5 * 0.09 + 0.3, 1e-15);
  EXPECT_NEAR(f.derive(0).value(), 3 * 0.3 + 1, 1e-15);
  EXPECT_NEAR(f.derive(0).derive(0).value(), 3, 1e-15);
  TaylorJet g = invert(f);
  EXPECT_NEAR(g.derive(0).value(), -(3 * 0.3 + 1) / std::pow(f.value(), 2), 1e-12);
  EXPECT_TRUE(f.derive(1).is_zero());
}

TEST(Polynomial, RingOperations) {
  Polynomial x = Polynomial::variable(2, 0), y = Polynomial::variable(2, 1);
  Polynomial p = (x + y) * (x - y);
  EXPECT_EQ(p, x * x - y * y);
  EXPECT_EQ(p.derive(0), x * Rational(2));
  std::vector<Rational> pt{Rational(3), Rational(1, 2)};
  EXPECT_EQ(p.evaluate(std::span<const Rational>(pt)), Rational(35, 4));
  std::vector<Rational> c{Rational(1), Rational(0), Rational(-1)};
  Polynomial u = Polynomial::univariate(c);
  EXPECT_DOUBLE_EQ(u(0.5), 0.75);
  EXPECT_EQ(integrate_univariate(u).derive(0), u);
}

TEST(Quadrature, GaussLegendreExactness) {
  // n points integrate degree 2n-1 exactly.
  GaussLegendre g(5, -1, 1);
  EXPECT_NEAR(g.integrate([](double x) { return std::pow(x, 8); }), 2.0 / 9, 1e-14);
  auto r = integrate_doubling([](double x) { return std::exp(x); }, 0, 1, 1e-13);
  EXPECT_NEAR(r.value, std::exp(1.0) - 1, 1e-13);
}
