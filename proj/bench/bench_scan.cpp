#include <benchmark/benchmark.h>

#include <numbers>

#include "dressed/scan.hpp"
#include "dressed/units.hpp"

using namespace dressed;

namespace {

ScanSpec monodromy_scan(int points) {
  ScanSpec s;
  s.swept = SweepParameter::xi;
  s.grid = linear_grid(0.6, 5.0, points);
  s.base = make_y_tuned(units::khz_to_rad(2.04), units::khz_to_rad(9.0), 1.0, units::khz_to_rad(4.97), 1,
                        std::numbers::pi / 2);
  s.methods = {Method::perturbative, Method::monodromy};
  return s;
}

void BM_ScanSerial(benchmark::State& state) {
  const ScanSpec s = monodromy_scan(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(run_scan_serial(s));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_ScanParallel(benchmark::State& state) {
  const ScanSpec s = monodromy_scan(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(run_scan(s));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_Perturbative(benchmark::State& state) {
  ScanSpec s = monodromy_scan(static_cast<int>(state.range(0)));
  s.methods = {Method::perturbative};
  for (auto _ : state) benchmark::DoNotOptimize(run_scan(s));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_ScanSerial)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ScanParallel)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Perturbative)->Arg(441)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
