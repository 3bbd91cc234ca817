#include <benchmark/benchmark.h>

#include <memory>

#include "dqkit/bt/bt_cp1.hpp"
#include "dqkit/fedosov/fedosov.hpp"

using namespace dqkit;

namespace {

WeylT random_section(Rng& rng, const WeylT::Structure& s, int max_wdeg, int terms) {
  WeylT w(s, max_wdeg, TrigPoly(s->dim()));
  std::uniform_int_distribution<int> e(0, 3), nu(0, 1);
  for (int t = 0; t < terms; ++t) {
    WeylKey k;
    for (int i = 0; i < s->dim(); ++i) k.y[i] = static_cast<std::uint8_t>(e(rng));
    k.nu = static_cast<std::int8_t>(nu(rng));
    w.add_term(k, random_trig_poly(rng, s->dim(), 1, 2));
  }
  return w;
}

SymTensor3 curved_tensor(int m) {
  Rng rng(41);
  return random_symmetric3(rng, 2 * m, 1, 3, 1);
}

FedosovInput input(int m, int D) {
  FedosovInput in;
  in.structure = SymplecticStructure(m);
  in.gamma = curved_tensor(m);
  in.max_wdeg = D;
  return in;
}

}  // namespace

static void BM_WeylProduct(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0)), D = static_cast<int>(state.range(1));
  auto s = std::make_shared<const SymplecticStructure>(m);
  Rng rng(3);
  WeylT a = random_section(rng, s, D, 12), b = random_section(rng, s, D, 12);
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_WeylProduct)->Args({1, 6})->Args({1, 10})->Args({2, 6})->Unit(benchmark::kMicrosecond);

// Solving the flatness recursion for r on a curved T^2 connection.
static void BM_SolveR(benchmark::State& state) {
  const int D = static_cast<int>(state.range(0));
  for (auto _ : state) {
    FedosovConnection f(input(1, D));
    benchmark::DoNotOptimize(f.r_components().size());
  }
}
BENCHMARK(BM_SolveR)->DenseRange(6, 10, 2)->Unit(benchmark::kMillisecond);

static void BM_StarThroughNu3(benchmark::State& state) {
  StarEvaluator se(input(1, 8), 3);
  Rng rng(5);
  TrigPoly f = random_trig_poly(rng, 2, 1, 2), g = random_trig_poly(rng, 2, 1, 2);
  for (auto _ : state) {
    StarEvaluator fresh = se;  // cached lifts would hide the work
    benchmark::DoNotOptimize(fresh.star(f, g));
  }
}
BENCHMARK(BM_StarThroughNu3)->Unit(benchmark::kMillisecond);

static void BM_ToeplitzCP1(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  BundleMetricCP1 metric(SphereProfile::from_correction(Polynomial::univariate(std::vector<Rational>{Rational(1, 5), Rational(1, 4)})));
  ModeFunction g = ModeFunction::mode(1, Polynomial::constant(1, Rational(1, 2))) +
                   ModeFunction::mode(-1, Polynomial::constant(1, Rational(1, 2)));
  for (auto _ : state) {
    BergmanData b(metric, k);
    benchmark::DoNotOptimize(toeplitz_matrix(b, g));
  }
}
BENCHMARK(BM_ToeplitzCP1)->RangeMultiplier(2)->Range(8, 64)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
