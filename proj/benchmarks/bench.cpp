#include <benchmark/benchmark.h>

#include "linmax/coefficients.hpp"
#include "linmax/harness.hpp"
#include "linmax/linear_process.hpp"
#include "linmax/skorohod.hpp"

using namespace linmax;

namespace {

SimulatedPath path_for(std::size_t n, std::uint64_t seed) {
  const auto law = TailLaw::make(1.5, 0.5);
  const auto real = sample_coefficients(CoefficientModel::deterministic({1.0, 0.5, -0.25}), 2, 0);
  return simulate_path(law, real, n, seed);
}

void BM_SimulatePath(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(path_for(n, seed++));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SimulatePath)->RangeMultiplier(10)->Range(100, 100000);

void BM_DM2Maxima(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto f = partial_maxima(path_for(n, 1));
  const auto g = partial_maxima(path_for(n, 2));
  for (auto _ : state) benchmark::DoNotOptimize(d_m2(f, g));
}
BENCHMARK(BM_DM2Maxima)->RangeMultiplier(10)->Range(100, 100000);

void BM_DM2WnMn(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto path = path_for(n, 3);
  const auto m = partial_maxima(path);
  const auto w = wn_process(path.innovations(), path.a_n, 1.0, 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(d_m2(w, m));
}
BENCHMARK(BM_DM2WnMn)->RangeMultiplier(10)->Range(100, 100000);

void BM_Adaptive(benchmark::State& state) {
  const auto f = partial_maxima(path_for(10000, 4));
  const auto g = partial_maxima(path_for(10000, 5));
  for (auto _ : state) benchmark::DoNotOptimize(d_m2(f, g, 1e-9, HausdorffMethod::Adaptive));
}
BENCHMARK(BM_Adaptive);

}  // namespace
BENCHMARK_MAIN();
