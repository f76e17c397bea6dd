#include <benchmark/benchmark.h>

#include "geoassess/finance.hpp"

namespace {

geoassess::CashFlowSeries series(int lifetime) {
  geoassess::CostModel c;
  c.capex_schedule = {{0, 25e6}};
  c.opex = 1.2e6;
  geoassess::FinancialAssumptions a;
  a.lifetime = lifetime;
  a.energy_tariff = 147.0;
  return geoassess::build_cash_flows(21764.0, 1, c, a);
}

void BM_Lcoe(benchmark::State& state) {
  const auto s = series(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(geoassess::lcoe(s, 0.06));
}
BENCHMARK(BM_Lcoe)->Arg(25)->Arg(50);

void BM_Npv(benchmark::State& state) {
  const auto s = series(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(geoassess::npv(s, 0.06));
}
BENCHMARK(BM_Npv)->Arg(25)->Arg(50);

void BM_Irr(benchmark::State& state) {
  const auto s = series(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(geoassess::irr(s));
}
BENCHMARK(BM_Irr)->Arg(25)->Arg(50);

void BM_BuildCashFlows(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(series(25));
}
BENCHMARK(BM_BuildCashFlows);

}  // namespace

BENCHMARK_MAIN();
