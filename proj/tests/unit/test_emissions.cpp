#include <doctest.h>

#include <random>

#include "geoassess/emissions.hpp"

using namespace geoassess;
using doctest::Approx;

namespace {

PlantSpec cooling_plant(double rated, double utilization, double cop, double baseline) {
  PlantSpec p;
  p.pathway = Pathway::GSHP;
  p.rated_capacity = rated;
  p.utilization = utilization;
  p.cop = cop;
  p.baseline_cop = baseline;
  return p;
}

}  // namespace

TEST_CASE("avoided emissions against the grid factor") {
  const EmissionsContext ctx;
  CHECK(ctx.grid_factor == 0.503);
  CHECK(avoided_emissions(35040.0, ctx) == Approx(17625.12));
  CHECK(avoided_emissions(0.0, ctx) == 0.0);
  CHECK(avoided_emissions(13140.0, ctx) == Approx(6609.42));
  CHECK(avoided_emissions(1000.0, ctx) == Approx(503.0).epsilon(1e-15));
}

TEST_CASE("avoided emissions are linear in generation and grid factor") {
  std::mt19937_64 gen(99);
  std::uniform_real_distribution<double> e(0.0, 1e6);
  std::uniform_real_distribution<double> g(0.0, 1.2);
  std::uniform_real_distribution<double> k(0.0, 10.0);
  for (int i = 0; i < 500; ++i) {
    EmissionsContext ctx;
    ctx.grid_factor = g(gen);
    const double x = e(gen);
    const double y = e(gen);
    const double a = k(gen);
    CHECK(avoided_emissions(x + y, ctx) ==
          Approx(avoided_emissions(x, ctx) + avoided_emissions(y, ctx)).epsilon(1e-12));
    CHECK(avoided_emissions(a * x, ctx) == Approx(a * avoided_emissions(x, ctx)).epsilon(1e-12));
    EmissionsContext scaled = ctx;
    scaled.grid_factor = a * ctx.grid_factor;
    CHECK(avoided_emissions(x, scaled) == Approx(a * avoided_emissions(x, ctx)).epsilon(1e-12));
  }
}

TEST_CASE("gshp avoided emissions") {
  const EmissionsContext ctx;
  CHECK(gshp_displaced_electricity(48180.0, 5.5, 3.0) == Approx(7300.0));
  CHECK(gshp_avoided_emissions(cooling_plant(10.0, 0.55, 5.5, 3.0), ctx) == Approx(3671.9));
  CHECK(gshp_avoided_emissions(cooling_plant(10.0, 0.55, 5.5, 2.75), ctx) ==
        Approx(48180.0 / 5.5 * 0.503));
  CHECK(gshp_avoided_emissions(cooling_plant(10.0, 0.55, 4.0, 4.0), ctx) == 0.0);
  CHECK(gshp_avoided_emissions(cooling_plant(10.0, 0.0, 5.5, 3.0), ctx) == 0.0);

  PlantSpec egs;
  CHECK_THROWS_AS(gshp_avoided_emissions(egs, ctx), DomainError);
}

TEST_CASE("lifetime balance") {
  EmissionsContext ctx;
  CHECK(lifetime_emissions_balance(17625.0, 25, ctx) == Approx(440625.0));

  ctx.stages = StageEmissions{100.0, 10.0, 50.0};
  // 3 years: 3X = 100 + 3*10 + 50.
  CHECK(lifetime_emissions_balance(60.0, 3, ctx) == Approx(0.0));

  ctx.stages = StageEmissions{5000.0, 50.0, 1000.0};
  CHECK(lifetime_emissions_balance(6609.0, 25, ctx) == Approx(157975.0));
  CHECK_THROWS_AS(lifetime_emissions_balance(1.0, 0, ctx), DomainError);
}

TEST_CASE("emissions report") {
  PlantSpec plant;
  plant.lifetime = 25;
  const auto r = emissions_report(plant, 35040.0, EmissionsContext{});
  CHECK(r.annual_displaced_mwh == 35040.0);
  CHECK(r.avoided_annual == Approx(17625.12));
  CHECK(r.avoided_lifetime_net == Approx(17625.12 * 25));
  CHECK(r.lifetime == 25);

  const auto cooling =
      emissions_report(cooling_plant(10.0, 0.55, 5.5, 2.75), 48180.0, EmissionsContext{});
  CHECK(cooling.annual_displaced_mwh == Approx(8760.0));
  CHECK(cooling.avoided_annual >= 4000.0);
  CHECK(cooling.avoided_annual <= 5000.0);
  CHECK_FALSE(cooling.assumptions.empty());
}

TEST_CASE("emissions context validation") {
  EmissionsContext ctx;
  ctx.grid_factor = -0.1;
  CHECK_THROWS_AS(validate(ctx), ConfigError);
  ctx.grid_factor = 0.4;
  ctx.stages.construction = -1.0;
  CHECK_THROWS_AS(validate(ctx), ConfigError);
}
