#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "pcmod/dynamics.hpp"
#include "pcmod/isolator.hpp"
#include "pcmod/oracle.hpp"
#include "pcmod/planner.hpp"
#include "pcmod/transfer.hpp"

using namespace pcmod;

namespace {

std::vector<CouplingSegment> random_segments(int n) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<CouplingSegment> segs;
  for (int i = 0; i < n; ++i) segs.emplace_back(kTwoPi * u(rng), 2.0 * u(rng));
  return segs;
}

void BM_SegmentPropagator(benchmark::State& state) {
  const CouplerParams p(0.7, 1.0);
  const CouplingSegment seg(1.1, 0.8);
  for (auto _ : state) benchmark::DoNotOptimize(segment_propagator(p, seg));
}
BENCHMARK(BM_SegmentPropagator);

void BM_ProtocolPropagator(benchmark::State& state) {
  const CouplerParams p(0.7, 1.0);
  const auto segs = random_segments(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(protocol_propagator(p, segs));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ProtocolPropagator)->RangeMultiplier(4)->Range(1, 256)->Complexity(benchmark::oN);

void BM_ExpGenerator(benchmark::State& state) {
  const CouplerParams p(0.7, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(oracle::exp_generator(p, 1.1, 0.8));
}
BENCHMARK(BM_ExpGenerator);

void BM_Rk4Protocol(benchmark::State& state) {
  const CouplerParams p(0.7, 1.0);
  const auto segs = random_segments(4);
  const auto cfg = oracle::IntegrationConfig::defaults(p);
  for (auto _ : state) benchmark::DoNotOptimize(oracle::integrate_propagator(p, segs, cfg));
}
BENCHMARK(BM_Rk4Protocol)->Unit(benchmark::kMillisecond);

void BM_SolveTwoStep(benchmark::State& state) {
  const CouplerParams p(0.5, 1.0);
  const double phi = state.range(0) == 0 ? kPi : kPi / 4.0;  // feasible / infeasible
  for (auto _ : state) benchmark::DoNotOptimize(solve_two_step(p, phi));
}
BENCHMARK(BM_SolveTwoStep)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);

void BM_TransferMap(benchmark::State& state) {
  const CouplerParams p(0.5, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(transfer_map(p, kPi, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_TransferMap)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_GreedyStaircase(benchmark::State& state) {
  const CouplerParams p(static_cast<double>(state.range(0)), 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(greedy_staircase(p, 16));
}
BENCHMARK(BM_GreedyStaircase)->Arg(2)->Arg(4)->Unit(benchmark::kMicrosecond);

void BM_MinimalPlanSearch(benchmark::State& state) {
  const CouplerParams p(2.0, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(minimal_plan_search(p));
}
BENCHMARK(BM_MinimalPlanSearch)->Unit(benchmark::kMillisecond);

void BM_ContrastSweep(benchmark::State& state) {
  const auto stage = segment_propagator(CouplerParams(0.0, 1.0), CouplingSegment(0.0, kPi / 4.0));
  for (auto _ : state) benchmark::DoNotOptimize(contrast_sweep(stage, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_ContrastSweep)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
