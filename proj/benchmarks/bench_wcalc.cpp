#include <benchmark/benchmark.h>

#include "wcalc/cylinder.hpp"
#include "wcalc/derivative.hpp"
#include "wcalc/ftc.hpp"
#include "wcalc/partition.hpp"
#include "wcalc/sampling.hpp"

namespace {

wcalc::DiscreteMeasure sample(std::uint64_t seed, std::size_t atoms) {
  wcalc::Rng rng(seed);
  return wcalc::random_measure(rng, 1.0, atoms);
}

wcalc::CylinderFunction sin_times_cos() {
  return {{wcalc::ScalarFunction::sin(), wcalc::ScalarFunction::cos()},
          wcalc::OuterMap::product(2)};
}

void BM_W1(benchmark::State& state) {
  const auto atoms = static_cast<std::size_t>(state.range(0));
  std::vector<wcalc::Atom> a;
  std::vector<wcalc::Atom> b;
  wcalc::Rng rng(1);
  for (std::size_t i = 0; i < atoms; ++i) {
    const double x = -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(atoms);
    a.push_back({x, rng.uniform() + 0.1});
    b.push_back({x + 0.5 / static_cast<double>(atoms), rng.uniform() + 0.1});
  }
  const auto ma = wcalc::DiscreteMeasure::normalized(a);
  const auto mb = wcalc::DiscreteMeasure::normalized(b);
  for (auto _ : state) benchmark::DoNotOptimize(wcalc::w1(ma, mb));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_W1)->RangeMultiplier(8)->Range(8, 32768)->Complexity();

void BM_Discretize(benchmark::State& state) {
  const wcalc::PartitionScheme scheme(state.range(0), 1, wcalc::BumpShape::smooth_bump);
  const auto m = sample(2, 12);
  for (auto _ : state) benchmark::DoNotOptimize(scheme.discretize(m));
}
BENCHMARK(BM_Discretize)->Arg(2)->Arg(16)->Arg(64);

void BM_DawsonExtrapolated(benchmark::State& state) {
  const auto f = wcalc::as_measure_function(sin_times_cos());
  const auto m = sample(3, 12);
  for (auto _ : state) benchmark::DoNotOptimize(wcalc::dawson_extrapolated(f, m, 0.3, 1e-3));
}
BENCHMARK(BM_DawsonExtrapolated);

void BM_Antiderivative(benchmark::State& state) {
  const auto f = wcalc::antiderivative(wcalc::lift_to_field(sin_times_cos()),
                                       static_cast<int>(state.range(0)));
  const auto m = sample(4, 12);
  for (auto _ : state) benchmark::DoNotOptimize(f(m));
}
BENCHMARK(BM_Antiderivative)->Arg(8)->Arg(32);

}  // namespace
BENCHMARK_MAIN();
