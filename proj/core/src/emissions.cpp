#include "geoassess/emissions.hpp"

#include <fmt/format.h>

namespace geoassess {

double avoided_emissions(double annual_generation_mwh, const EmissionsContext& ctx) {
  return annual_generation_mwh * ctx.grid_factor;
}

double gshp_displaced_electricity(double cooling_mwh, double cop, double baseline_cop) {
  return gshp_electricity(cooling_mwh, baseline_cop) - gshp_electricity(cooling_mwh, cop);
}

double gshp_avoided_emissions(const PlantSpec& plant, const EmissionsContext& ctx) {
  if (plant.pathway != Pathway::GSHP) {
    throw DomainError(fmt::format("GSHP emissions requested for the {} pathway",
                                  pathway_id(plant.pathway)));
  }
  const double cooling = plant.rated_capacity * kHoursPerYear * plant.utilization;
  return avoided_emissions(gshp_displaced_electricity(cooling, plant.cop, plant.baseline_cop),
                           ctx);
}

double lifetime_emissions_balance(double annual_avoided, int lifetime,
                                  const EmissionsContext& ctx) {
  if (lifetime < 1) {
    throw DomainError(fmt::format("lifetime must be >= 1 year (got {})", lifetime));
  }
  const double years = lifetime;
  return annual_avoided * years - ctx.stages.construction - ctx.stages.operation * years -
         ctx.stages.decommissioning;
}

EmissionsReport emissions_report(const PlantSpec& plant, double annual_energy_mwh,
                                 const EmissionsContext& ctx) {
  EmissionsReport report;
  report.lifetime = plant.lifetime;
  report.grid_factor = ctx.grid_factor;
  if (plant.pathway == Pathway::GSHP) {
    report.annual_displaced_mwh =
        gshp_displaced_electricity(annual_energy_mwh, plant.cop, plant.baseline_cop);
    report.assumptions.push_back(
        fmt::format("cooling delivered {:.0f} MWh/yr (utilization {})", annual_energy_mwh,
                    plant.utilization));
    report.assumptions.push_back(fmt::format("GSHP COP {} vs baseline chiller COP {}",
                                             plant.cop, plant.baseline_cop));
  } else {
    report.annual_displaced_mwh = annual_energy_mwh;
  }
  report.avoided_annual = avoided_emissions(report.annual_displaced_mwh, ctx);
  report.avoided_lifetime_net =
      lifetime_emissions_balance(report.avoided_annual, plant.lifetime, ctx);
  return report;
}

void validate(const EmissionsContext& ctx) {
  if (!(ctx.grid_factor > 0.0)) {
    throw ConfigError("emissions.grid_factor",
                      fmt::format("must be > 0 (got {})", ctx.grid_factor));
  }
  const auto non_negative = [](double v, const char* field) {
    if (v < 0.0) throw ConfigError(field, fmt::format("must be >= 0 (got {})", v));
  };
  non_negative(ctx.stages.construction, "emissions.stage_emissions.construction");
  non_negative(ctx.stages.operation, "emissions.stage_emissions.operation");
  non_negative(ctx.stages.decommissioning, "emissions.stage_emissions.decommissioning");
}

}  // namespace geoassess
