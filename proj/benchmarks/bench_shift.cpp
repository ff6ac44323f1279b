#include <benchmark/benchmark.h>

#include "shiftreg/experiments.hpp"
#include "shiftreg/instances.hpp"
#include "shiftreg/minimax.hpp"
#include "shiftreg/rng.hpp"
#include "shiftreg/shift.hpp"

namespace {

shiftreg::SequencePair pair_of(std::size_t J) {
  shiftreg::CounterRng rng(99);
  const shiftreg::SobolevClass cls(1.0, 1.0);
  return {shiftreg::random_ball_sequence(J, cls, rng), shiftreg::random_ball_sequence(J, cls, rng)};
}

void BM_MinimizeOverShift(benchmark::State& state) {
  const auto N = static_cast<std::size_t>(state.range(0));
  const auto [a, b] = pair_of(N);
  for (auto _ : state) {
    benchmark::DoNotOptimize(shiftreg::minimize_over_shift(a, b, N));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_MinimizeOverShift)->RangeMultiplier(2)->Range(4, 256)->Complexity();

void BM_BruteForce(benchmark::State& state) {
  const auto [a, b] = pair_of(32);
  const auto grid = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(shiftreg::brute_force_min(a, b, 32, grid));
  }
}
BENCHMARK(BM_BruteForce)->Arg(1 << 12)->Arg(1 << 16);

void BM_Statistic(benchmark::State& state) {
  const auto [c, c_sharp] = pair_of(256);
  const auto obs = shiftreg::simulate_pair(c, c_sharp, 0.05, 1);
  const auto N = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(shiftreg::statistic(obs, N));
  }
}
BENCHMARK(BM_Statistic)->Arg(21)->Arg(64)->Arg(256);

void BM_AdaptiveTest(benchmark::State& state) {
  const auto [c, c_sharp] = pair_of(256);
  const auto obs = shiftreg::simulate_pair(c, c_sharp, 0.05, 1);
  const auto cfg = shiftreg::adaptive_grid(0.05, 0.5, 2.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(shiftreg::adaptive_test(obs, cfg));
  }
}
BENCHMARK(BM_AdaptiveTest);

void BM_RunTrials(benchmark::State& state) {
  shiftreg::ExperimentConfig cfg;
  cfg.trials = 200;
  cfg.parallelism = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(shiftreg::run_trials(cfg));
  }
  state.SetItemsProcessed(state.iterations() * 200);
}
BENCHMARK(BM_RunTrials)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
