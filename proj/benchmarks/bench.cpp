// Microbenchmarks for the analytic kernels and the Monte Carlo driver.
#include <benchmark/benchmark.h>

#include "qeraser/binary_attack.hpp"
#include "qeraser/binary_protocol.hpp"
#include "qeraser/imperfections.hpp"
#include "qeraser/montecarlo.hpp"
#include "qeraser/ternary_attack.hpp"

using namespace qeraser;

static void BM_DetectionProbabilities(benchmark::State& state) {
  binary::RoundConfig config;
  config.alice_bit = 1;
  for (auto _ : state) benchmark::DoNotOptimize(binary::detection_probabilities(config));
}
BENCHMARK(BM_DetectionProbabilities);

static void BM_TwoStateOptimum(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(binary_attack::two_state_optimum());
}
BENCHMARK(BM_TwoStateOptimum);

static void BM_OracleMapSuccess(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(ternary_attack::oracle_map_success());
}
BENCHMARK(BM_OracleMapSuccess);

static void BM_OptimizeTotalSuccess(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(ternary_attack::optimize_total_success());
}
BENCHMARK(BM_OptimizeTotalSuccess);

static void BM_SimulateImperfect(benchmark::State& state) {
  imperfect::Params p;
  p.sigma_u = p.sigma_l = 0.1;
  p.delta2 = 0.05;
  for (auto _ : state) benchmark::DoNotOptimize(imperfect::simulate_imperfect(imperfect::Case::Both, p));
}
BENCHMARK(BM_SimulateImperfect);

static void BM_MonteCarlo(benchmark::State& state) {
  mc::RunConfig config;
  config.protocol = static_cast<mc::Protocol>(state.range(0));
  config.trials = 100000;
  config.seed = 7;
  config.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(mc::run(config));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(config.trials));
}
BENCHMARK(BM_MonteCarlo)->Arg(0)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
