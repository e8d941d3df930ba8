#include "invsub/paths.hpp"

#include <benchmark/benchmark.h>

using namespace invsub;
using levy::LevyModel;

namespace {

// cost of a lifetime path as the number of grid steps grows
void BM_LifetimePath(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto grid = paths::uniform_grid(1.0, n);
  const auto m = LevyModel::stable(0.5);
  Rng rng = make_stream(1, 0);
  paths::PathTelemetry tel;
  for (auto _ : state) benchmark::DoNotOptimize(paths::sample_lifetime_path({}, 0.0, grid, m, rng, &tel));
  state.counters["ops_per_path"] = benchmark::Counter(static_cast<double>(tel.ops), benchmark::Counter::kAvgIterations);
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_LifetimePath)->RangeMultiplier(10)->Range(10, 100000)->Complexity()->Unit(benchmark::kMicrosecond);

void BM_TripletPathTempered(benchmark::State& state) {
  const auto grid = paths::uniform_grid(1.0, static_cast<std::size_t>(state.range(0)));
  const auto m = LevyModel::tempered(0.75, 1.0, 1.0, 1.0);
  Rng rng = make_stream(2, 0);
  for (auto _ : state) benchmark::DoNotOptimize(paths::sample_triplet_path({}, 0.0, grid, m, rng));
}
BENCHMARK(BM_TripletPathTempered)->Arg(100)->Arg(1000)->Unit(benchmark::kMicrosecond);

}  // namespace
