#include <benchmark/benchmark.h>

#include "geoassess/uncertainty.hpp"

namespace {

void BM_MonteCarlo(benchmark::State& state) {
  const auto cfg = geoassess::preset(geoassess::Pathway::EGS, geoassess::AutomationLevel::Baseline);
  auto spec = geoassess::default_uncertainty(cfg);
  spec.samples = 10'000;
  spec.seed = 1;
  const geoassess::MonteCarloOptions options{static_cast<unsigned>(state.range(0))};
  for (auto _ : state) {
    benchmark::DoNotOptimize(geoassess::run_monte_carlo(cfg, spec, options));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(spec.samples));
}
BENCHMARK(BM_MonteCarlo)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_Tornado(benchmark::State& state) {
  const auto cfg = geoassess::preset(geoassess::Pathway::EGS, geoassess::AutomationLevel::Baseline);
  const auto ranges = geoassess::default_tornado_ranges(cfg);
  for (auto _ : state) {
    benchmark::DoNotOptimize(geoassess::tornado(cfg, ranges, geoassess::Metric::Lcoe));
  }
}
BENCHMARK(BM_Tornado);

}  // namespace

BENCHMARK_MAIN();
