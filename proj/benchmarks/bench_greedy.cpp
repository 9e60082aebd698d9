#include <benchmark/benchmark.h>

#include "aniso/analysis.hpp"
#include "aniso/greedy.hpp"
#include "aniso/sampling.hpp"

using namespace aniso;

static void BM_GreedyRun(benchmark::State& state) {
  const ScalarField f = *find_field("expbump");
  GreedyConfig config;
  config.stop = StopRule::target(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    auto result = greedy_run(f, config);
    benchmark::DoNotOptimize(result.forest.leaf_count());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_GreedyRun)->RangeMultiplier(4)->Range(256, 16384)->Unit(benchmark::kMillisecond);

static void BM_GreedyRunLpSplit(benchmark::State& state) {
  const ScalarField f = *find_field("gauss-ridge");
  GreedyConfig config;
  config.decision = DecisionKind::lp_split;
  config.stop = StopRule::target(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    auto result = greedy_run(f, config);
    benchmark::DoNotOptimize(result.forest.leaf_count());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_GreedyRunLpSplit)->Arg(1024)->Unit(benchmark::kMillisecond);

static void BM_LocalError(benchmark::State& state) {
  const ScalarField f = *find_field("expbump");
  const double p = state.range(0) == 0 ? kInfinity : static_cast<double>(state.range(0));
  Sampler s(1);
  const Triangle t = s.triangle();
  for (auto _ : state) {
    benchmark::DoNotOptimize(local_error(t, f, p, OperatorKind::interpolation));
  }
}
BENCHMARK(BM_LocalError)->Arg(1)->Arg(2)->Arg(0);

static void BM_SigmaStudy(benchmark::State& state) {
  const int levels = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto stats = sigma_study(QuadForm::diag(1, 100), reference_triangle_mesh(), levels);
    benchmark::DoNotOptimize(stats.back().mean);
  }
}
BENCHMARK(BM_SigmaStudy)->DenseRange(3, 5)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
