// Serial reference against the OpenMP kernels on the same inputs.
#include <benchmark/benchmark.h>

#include "uisim/engine.hpp"
#include "uisim/levelk.hpp"

using namespace uisim;

namespace {

ScenarioSpec dense_scenario(int arms, int vehicles) {
  for (std::uint64_t seed = 1;; ++seed) {
    Rng rng(seed);
    try {
      return sample_scenario(arms, vehicles, rng, default_params());
    } catch (const GenerationError&) {
    }
  }
}

Execution policy_of(const benchmark::State& state) {
  return state.range(1) ? Execution::Parallel : Execution::Serial;
}

void BM_LevelKTable(benchmark::State& state) {
  const auto params = default_params();
  const auto world = build_world(dense_scenario(4, static_cast<int>(state.range(0))), params);
  const StepContext ctx(world, params);
  for (auto _ : state) benchmark::DoNotOptimize(compute_levelk_table(ctx, params.level_k.k_max, policy_of(state)));
}

void BM_Run(benchmark::State& state) {
  const auto params = default_params();
  const auto scenario = dense_scenario(4, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(run(scenario, 1, params, {policy_of(state), false}));
}

void BM_Batch(benchmark::State& state) {
  BatchConfig cfg;
  cfg.arms = {4};
  cfg.vehicles = {static_cast<int>(state.range(0))};
  cfg.runs = 8;
  cfg.seed = 5;
  cfg.policy = policy_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(run_batch(default_params(), cfg));
}

}  // namespace

BENCHMARK(BM_LevelKTable)->ArgNames({"n", "parallel"})->ArgsProduct({{4, 10}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Run)->ArgNames({"n", "parallel"})->ArgsProduct({{4, 10}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Batch)->ArgNames({"n", "parallel"})->ArgsProduct({{4, 10}, {0, 1}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
