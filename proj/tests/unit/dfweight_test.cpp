#include <gtest/gtest.h>

#include "dqkit/dfweight/dfweight.hpp"
#include "dqkit/kahler/sphere.hpp"

using namespace dqkit;

namespace {

// Lattice points of k P for P = {x >= 0, 0 <= y <= 1, x + y <= 2} (CP^2 blown up at a point),
// with the action weighting a monomial by its y coordinate.
HilbertWeightData blowup_lattice(int k_max) {
  HilbertWeightData out{2, {}};
  for (long k = 1; k <= k_max; ++k) {
    long d = 0;
    Rational w = 0;
    for (long y = 0; y <= k; ++y)
      for (long x = 0; x + y <= 2 * k; ++x) {
        ++d;
        w += y;
      }
    out.samples.push_back({k, d, w});
  }
  return out;
}

}  // namespace

TEST(Interpolate, RecoversPolynomial) {
  std::vector<Rational> x{Rational(1), Rational(2), Rational(5), Rational(-3)}, y;
  for (const auto& t : x) y.push_back(Rational(2, 3) - t + Rational(1, 7) * t * t * t);
  auto c = interpolate(x, y);
  ASSERT_EQ(c.size(), 4u);
  EXPECT_EQ(c[0], Rational(2, 3));
  EXPECT_EQ(c[1], Rational(-1));
  EXPECT_EQ(c[2], Rational(0));
  EXPECT_EQ(c[3], Rational(1, 7));
  EXPECT_THROW(interpolate({Rational(1), Rational(1)}, {Rational(0), Rational(1)}), std::invalid_argument);
}

TEST(Cp1Oracle, SmallCases) {
  auto o = cp1_equivariant_oracle(3);
  ASSERT_EQ(o.samples.size(), 3u);
  EXPECT_EQ(o.samples[0].d, 2);
  EXPECT_EQ(o.samples[0].w, Rational(1));
  EXPECT_EQ(o.samples[1].d, 3);
  EXPECT_EQ(o.samples[1].w, Rational(3));
  EXPECT_EQ(o.samples[2].w, Rational(6));
}

TEST(ExpandF, Cp1Lattice) {
  auto e = expand_F(cp1_equivariant_oracle(8));
  EXPECT_EQ(e.F0, Rational(1, 2));
  EXPECT_EQ(e.F1, Rational(0));
  EXPECT_EQ(e.F2, Rational(0));
  EXPECT_EQ(e.a0, Rational(1));
  EXPECT_EQ(e.a1, Rational(1));
  EXPECT_EQ(e.b0, Rational(1, 2));
  EXPECT_EQ(e.b1, Rational(1, 2));
  EXPECT_EQ(e.held_out, 5);
}

TEST(ExpandF, TrivialAction) {
  auto data = cp1_equivariant_oracle(5);
  for (auto& s : data.samples) s.w = 0;
  auto e = expand_F(data);
  EXPECT_EQ(e.F0, Rational(0));
  EXPECT_EQ(e.F1, Rational(0));
  EXPECT_EQ(futaki_consistency(e.F1, Rational(0), VolumeForm::OmegaPower, 1, Rational(1)), Rational(0));
}

TEST(ExpandF, SyntheticRoundTrip) {
  Rational a0(3), a1(5), b0(7, 2), b1(-4, 3);
  auto e = expand_F(synthetic_hilbert_data(2, a0, a1, b0, b1, 7));
  EXPECT_EQ(e.a0, a0);
  EXPECT_EQ(e.a1, a1);
  EXPECT_EQ(e.b0, b0);
  EXPECT_EQ(e.b1, b1);
  EXPECT_EQ(e.a2, Rational(0));
  EXPECT_EQ(e.F0, b0 / a0);
  EXPECT_EQ(e.F1, (a0 * b1 - a1 * b0) / (a0 * a0));
  // F2 against the series of (b0 + b1 x) / (a0 + a1 x)
  EXPECT_EQ(e.F2, -a1 * e.F1 / a0);
}

TEST(ExpandF, F2MatchesSeriesOnGeneralData) {
  // d = 2k^2 + 3k + 1, w = k^3 - k^2 + 4k: w/(kd) = (1 - x + 4x^2)/(2 + 3x + x^2)
  HilbertWeightData data{2, {}};
  for (long k = 1; k <= 6; ++k) data.samples.push_back({k, 2 * k * k + 3 * k + 1, Rational(k * k * k - k * k + 4 * k)});
  auto e = expand_F(data);
  EXPECT_EQ(e.F0, Rational(1, 2));
  EXPECT_EQ(e.F1, Rational(-5, 4));
  // 2 F2 + 3 F1 + F0 = 4
  EXPECT_EQ(e.F2, Rational(29, 8));
}

TEST(ExpandF, InversionAntisymmetry) {
  for (const auto& data : {cp1_equivariant_oracle(6), blowup_lattice(6),
                           synthetic_hilbert_data(3, Rational(2), Rational(1), Rational(1, 5), Rational(3), 8)}) {
    auto e = expand_F(data), inv = expand_F(invert_action(data));
    EXPECT_EQ(inv.F0, -e.F0);
    EXPECT_EQ(inv.F1, -e.F1);
    EXPECT_EQ(inv.F2, -e.F2);
  }
}

TEST(ExpandF, ToricBlowupMatchesPolygonIntegrals) {
  auto e = expand_F(blowup_lattice(7));
  // area 3/2 and half the lattice perimeter 5/2; int_P y = 2/3 and half the boundary integral of y is 1
  EXPECT_EQ(e.a0, Rational(3, 2));
  EXPECT_EQ(e.a1, Rational(5, 2));
  EXPECT_EQ(e.b0, Rational(2, 3));
  EXPECT_EQ(e.b1, Rational(1));
  EXPECT_EQ(e.F1, Rational(-2, 27));
}

TEST(ExpandF, RejectsBadData) {
  auto base = cp1_equivariant_oracle(6);
  auto bad = base;
  bad.samples.back().w += Rational(1, 3);
  EXPECT_THROW(expand_F(bad), DfWeightError);
  bad = base;
  bad.samples[4].d += 1;
  EXPECT_THROW(expand_F(bad), DfWeightError);
  bad = base;
  bad.samples.resize(3);
  EXPECT_THROW(expand_F(bad), DfWeightError);
  bad = base;
  bad.samples[1].k = bad.samples[0].k;
  EXPECT_THROW(expand_F(bad), DfWeightError);
  bad = base;
  bad.samples[0].d = 0;
  EXPECT_THROW(expand_F(bad), DfWeightError);
}

TEST(FutakiConsistency, Cp1Rotation) {
  auto e = expand_F(cp1_equivariant_oracle(8));
  const double f = futaki_classical(SphereProfile::round());
  EXPECT_LT(futaki_consistency(e.F1, f, VolumeForm::OmegaPower, 1, 1.0), 1e-12);
  // the rotation Futaki value stays zero on a non-round metric in the same class
  const double g = futaki_classical(SphereProfile::from_correction(Polynomial::constant(1, Rational(1, 3))));
  EXPECT_LT(futaki_consistency(e.F1, g, VolumeForm::OmegaPowerFactorial, 1, 1.0), 1e-8);
}

TEST(FutakiConsistency, PlantedValue) {
  // F1 = -f / (2 m! vol) with f against omega^m; omega^m/m! values are m! times smaller
  const int m = 2;
  Rational vol(3, 2), f(5, 7), F1 = -f / (2 * factorial(2) * vol);
  EXPECT_EQ(futaki_consistency(F1, f, VolumeForm::OmegaPower, m, vol), Rational(0));
  EXPECT_EQ(futaki_consistency(F1, f / 2, VolumeForm::OmegaPowerFactorial, m, vol), Rational(0));
  EXPECT_NE(futaki_consistency(F1, f, VolumeForm::OmegaPowerFactorial, m, vol), Rational(0));
}
