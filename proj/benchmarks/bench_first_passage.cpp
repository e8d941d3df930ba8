#include "invsub/first_passage.hpp"

#include <benchmark/benchmark.h>

using namespace invsub;
using levy::LevyModel;

namespace {

// ops = iterations + rejections per draw, the machine-independent cost measure
void report_ops(benchmark::State& state, const Counters& c) {
  state.counters["ops_per_draw"] =
      benchmark::Counter(static_cast<double>(c.iterations + c.rejections), benchmark::Counter::kAvgIterations);
}

void BM_StableCrossing(benchmark::State& state) {
  const double a = static_cast<double>(state.range(0)) / 10.0;
  Rng rng = make_stream(1, 0);
  for (auto _ : state) benchmark::DoNotOptimize(first_passage::sample_stable_crossing(1.0, a, 1.0, rng));
}
BENCHMARK(BM_StableCrossing)->DenseRange(1, 9);

// stable measure split at 1 into a truncated part and a finite part
void BM_SplitStableCrossing(benchmark::State& state) {
  const double a = static_cast<double>(state.range(0)) / 10.0;
  auto m = LevyModel::tempered(a, 0.0, 1.0, 1.0);
  m.zeta = levy::FiniteMeasure::stable_segment(a, 1.0, 0.0, 1.0, kInf);
  Rng rng = make_stream(2, 0);
  Counters c;
  for (auto _ : state) benchmark::DoNotOptimize(first_passage::sample_crossing(1.0, m, rng, &c));
  report_ops(state, c);
}
BENCHMARK(BM_SplitStableCrossing)->DenseRange(2, 9);

// tempered alpha = 0.65 with a Pareto finite part, q = 1 + 0.75 k
void BM_TemperedCrossing(benchmark::State& state) {
  auto m = LevyModel::tempered(0.65, 1.0 + 0.75 * static_cast<double>(state.range(0)), 1.0, 1.0);
  m.zeta = levy::FiniteMeasure::pareto5(1.0);
  Rng rng = make_stream(3, 0);
  Counters c;
  for (auto _ : state) benchmark::DoNotOptimize(first_passage::sample_crossing(1.0, m, rng, &c));
  report_ops(state, c);
}
BENCHMARK(BM_TemperedCrossing)->DenseRange(0, 9, 3)->Unit(benchmark::kMicrosecond);

void BM_StablePositive(benchmark::State& state) {
  Rng rng = make_stream(4, 0);
  for (auto _ : state) benchmark::DoNotOptimize(first_passage::sample_stable_positive(0.6, 1.0, rng));
}
BENCHMARK(BM_StablePositive);

}  // namespace
