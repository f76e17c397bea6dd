#include <doctest.h>

#include <cmath>
#include <random>

#include "discount_oracle.hpp"
#include "geoassess/scenarios.hpp"

using namespace geoassess;
using doctest::Approx;

namespace {

constexpr Pathway kAll[] = {Pathway::EGS, Pathway::WellRepurposing, Pathway::GSHP};

struct Row {
  double capex, opex, lcoe, payback;
};

// Reference baseline rows of the comparison table.
Row baseline_row(Pathway p) {
  switch (p) {
    case Pathway::EGS: return {25e6, 1.2e6, 145.0, 12.5};
    case Pathway::WellRepurposing: return {8e6, 0.35e6, 95.0, 8.0};
    case Pathway::GSHP: return {5e6, 0.18e6, 72.0, 6.5};
  }
  return {};
}

}  // namespace

TEST_CASE("automation reductions") {
  CostModel c;
  c.capex_schedule = {CapexEntry{0, 25e6}};
  c.opex = 1.2e6;
  const auto full = apply_automation(c, preset_automation(Pathway::EGS, AutomationLevel::Full));
  CHECK(full.total_capex() == Approx(21.5e6).epsilon(1e-12));
  CHECK(full.opex == Approx(1.0e6).epsilon(1e-12));
  CHECK(apply_automation(c, AutomationScenario{}) == c);

  const auto moderate = preset(Pathway::EGS, AutomationLevel::Moderate);
  const auto ev = evaluate(moderate);
  CHECK(ev.effective_costs.total_capex() == Approx(23.25e6).epsilon(1e-12));
}

TEST_CASE("preset cost cells") {
  const auto wells = evaluate(preset(Pathway::WellRepurposing, AutomationLevel::Baseline));
  CHECK(wells.effective_costs.total_capex() == 8e6);
  CHECK(wells.effective_costs.opex == 350000.0);
  const auto gshp = evaluate(preset(Pathway::GSHP, AutomationLevel::Full));
  CHECK(gshp.effective_costs.total_capex() == Approx(4.4e6).epsilon(1e-12));
  CHECK(gshp.effective_costs.opex == Approx(150000.0).epsilon(1e-12));

  CHECK_THROWS_AS(preset("geyser", "full"), ConfigError);
  CHECK_THROWS_AS(preset("egs", "maximal"), ConfigError);
  CHECK(preset("wells", "full") == preset(Pathway::WellRepurposing, AutomationLevel::Full));
}

TEST_CASE("preset energies invert the baseline levelized cost") {
  const long double af = oracle::annuity(0.06L, 25);
  for (Pathway p : kAll) {
    const Row row = baseline_row(p);
    const long double e = (row.capex + row.opex * af) / (row.lcoe * af);
    CHECK(preset_annual_energy(p) == Approx(static_cast<double>(e)).epsilon(1e-4));
    CHECK(project_annual_energy(preset(p, AutomationLevel::Baseline)) ==
          Approx(preset_annual_energy(p)).epsilon(1e-12));
  }
  CHECK(preset_annual_energy(Pathway::EGS) == 21764.0);
  CHECK(preset_annual_energy(Pathway::WellRepurposing) == 10272.0);
  CHECK(preset_annual_energy(Pathway::GSHP) == 7932.0);
}

TEST_CASE("baseline presets reproduce levelized cost and payback") {
  for (Pathway p : kAll) {
    const Row row = baseline_row(p);
    const auto ev = evaluate(preset(p, AutomationLevel::Baseline));
    REQUIRE(ev.metrics.lcoe);
    CHECK(*ev.metrics.lcoe == Approx(row.lcoe).epsilon(0.01));
    REQUIRE(ev.metrics.payback_simple);
    CHECK(*ev.metrics.payback_simple == Approx(row.payback).epsilon(1e-9));
  }
  CHECK(*evaluate(preset(Pathway::EGS, AutomationLevel::Baseline)).metrics.lcoe ==
        Approx(145.0).epsilon(1.0 / 145.0));
}

TEST_CASE("full automation predictions") {
  const double expected[] = {123.2, 84.0, 62.3};
  for (int i = 0; i < 3; ++i) {
    const auto ev = evaluate(preset(kAll[i], AutomationLevel::Full));
    CHECK(*ev.metrics.lcoe == Approx(expected[i]).epsilon(0.001));
  }
}

TEST_CASE("temperature-coupled presets deliver their rated energy") {
  for (Pathway p : {Pathway::EGS, Pathway::WellRepurposing}) {
    const auto cfg = preset(p, AutomationLevel::Baseline);
    CHECK(cfg.plant.temperature_coupled);
    CHECK(egs_net_power(cfg.plant) == Approx(cfg.plant.rated_capacity).epsilon(1e-12));
    CHECK(delivered_annual_energy(cfg.plant) == Approx(preset_annual_energy(p)).epsilon(1e-12));
  }
}

TEST_CASE("comparison table") {
  std::vector<ProjectConfig> six;
  for (Pathway p : kAll) {
    six.push_back(preset(p, AutomationLevel::Baseline));
    six.push_back(preset(p, AutomationLevel::Full));
  }
  const auto table = compare_pathways(six);
  REQUIRE(table.size() == 6);
  CHECK(*table[1].capex == Approx(21.5e6).epsilon(1e-12));
  CHECK(table[4].is_cooling());
  CHECK_FALSE(table[0].is_cooling());

  auto single = compare_pathways(std::vector<ProjectConfig>{six[2]});
  CHECK(single.size() == 1);

  ProjectConfig open = six[0];
  open.assumptions.energy_tariff.reset();
  const auto row = compare_pathways(std::vector<ProjectConfig>{open}).front();
  CHECK(row.lcoe);
  CHECK_FALSE(row.npv);
  CHECK_FALSE(row.payback);
  CHECK(row.error.empty());

  ProjectConfig broken = six[0];
  broken.assumptions.discount_rate = -2.0;
  const auto bad = compare_pathways(std::vector<ProjectConfig>{broken}).front();
  CHECK_FALSE(bad.error.empty());
  CHECK_FALSE(bad.lcoe);
}

TEST_CASE("config validation") {
  Diagnostics diag;
  ProjectConfig cfg = preset(Pathway::EGS, AutomationLevel::Baseline);
  cfg.automation.capex_reduction = 0.1;
  CHECK_THROWS_AS(validate(cfg, diag), ConfigError);

  cfg = preset(Pathway::EGS, AutomationLevel::Full);
  cfg.automation.opex_reduction = 1.0;
  CHECK_THROWS_AS(validate(cfg, diag), ConfigError);

  cfg = preset(Pathway::EGS, AutomationLevel::Full);
  cfg.assumptions.lifetime = 30;
  CHECK_THROWS_AS(validate(cfg, diag), ConfigError);
}

TEST_CASE("automation never raises cost or lowers value") {
  std::mt19937_64 gen(4242);
  std::uniform_real_distribution<double> frac(0.0, 0.9);
  std::uniform_real_distribution<double> rate(0.01, 0.12);
  for (int i = 0; i < 300; ++i) {
    for (Pathway p : kAll) {
      ProjectConfig base = preset(p, AutomationLevel::Baseline);
      base.assumptions.discount_rate = rate(gen);
      ProjectConfig automated = base;
      automated.automation = AutomationScenario{AutomationLevel::Full, frac(gen), frac(gen)};
      CHECK(evaluate_lcoe(automated) <= evaluate_lcoe(base));
      CHECK(evaluate_npv(automated) >= evaluate_npv(base));
    }
  }
}
