#include "invsub/paths.hpp"
#include "invsub/sde.hpp"

#include <benchmark/benchmark.h>

using namespace invsub;
using levy::LevyModel;

namespace {

void BM_EulerMaruyamaOu(benchmark::State& state) {
  const auto s = sde::SdeModel::ornstein_uhlenbeck(0.5, 0.25, 0.5, 0.0, 0.625);
  std::vector<double> grid = {0.0};
  const auto more = paths::uniform_grid(1.0, static_cast<std::size_t>(state.range(0)));
  grid.insert(grid.end(), more.begin(), more.end());
  Rng rng = make_stream(1, 0);
  for (auto _ : state) benchmark::DoNotOptimize(sde::euler_maruyama(s, grid, rng));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_EulerMaruyamaOu)->Arg(1000)->Arg(10000)->Unit(benchmark::kMicrosecond);

// one replica of the time-changed OU strong-error experiment
void BM_OuStrongErrorReplica(benchmark::State& state) {
  const sde::OuParams ou{0.5, 0.25, 0.5, 0.0};
  const auto grid = paths::uniform_grid(0.1, 100);
  const double h = 1.0 / static_cast<double>(state.range(0));
  Rng rng = make_stream(2, 0);
  for (auto _ : state)
    benchmark::DoNotOptimize(sde::ou_strong_error_replica(ou, LevyModel::stable(0.8), sde::ClockKind::Inverse, grid, h, rng));
}
BENCHMARK(BM_OuStrongErrorReplica)->Arg(1000)->Arg(5263)->Unit(benchmark::kMicrosecond);

void BM_PlanStep(benchmark::State& state) {
  const auto s = sde::SdeModel::ornstein_uhlenbeck(0.5, 0.25, 0.5, 0.0, 0.625);
  for (auto _ : state)
    benchmark::DoNotOptimize(sde::plan_step(s, LevyModel::stable(0.8), sde::ClockKind::Inverse, 0.1, 0.1));
}
BENCHMARK(BM_PlanStep)->Unit(benchmark::kMicrosecond);

}  // namespace
