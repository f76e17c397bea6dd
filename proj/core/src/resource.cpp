#include "geoassess/resource.hpp"

#include <cmath>

#include <fmt/format.h>

namespace geoassess {

namespace {

double require(const std::optional<double>& value, const char* field) {
  if (!value) {
    throw ConfigError(field, "required for temperature-coupled output");
  }
  return *value;
}

void require_positive(double value, const char* field) {
  if (!(value > 0.0)) {
    throw ConfigError(field, fmt::format("must be > 0 (got {})", value));
  }
}

void warn_outside(Diagnostics& diag, const char* field, double value, double lo, double hi) {
  if (value < lo || value > hi) {
    diag.warn(fmt::format("{} = {} is outside the typical band [{}, {}]", field, value, lo, hi));
  }
}

}  // namespace

std::string_view pathway_id(Pathway p) noexcept {
  switch (p) {
    case Pathway::EGS: return "egs";
    case Pathway::WellRepurposing: return "wells";
    case Pathway::GSHP: return "gshp";
  }
  return "egs";
}

std::string_view pathway_label(Pathway p) noexcept {
  switch (p) {
    case Pathway::EGS: return "Enhanced Geothermal System (EGS)";
    case Pathway::WellRepurposing: return "Well Repurposing";
    case Pathway::GSHP: return "Ground-Source Heat Pump (District Scale)";
  }
  return "";
}

std::optional<Pathway> parse_pathway(std::string_view id) noexcept {
  if (id == "egs") return Pathway::EGS;
  if (id == "wells") return Pathway::WellRepurposing;
  if (id == "gshp") return Pathway::GSHP;
  return std::nullopt;
}

double temperature_at_depth(const SiteProfile& site, double depth_km) {
  if (!(depth_km >= 0.0)) {
    throw DomainError(fmt::format("depth must be >= 0 km (got {})", depth_km));
  }
  return site.surface_temperature + site.gradient * depth_km;
}

double heat_in_place(const SiteProfile& site, double depth_km) {
  const double delta = temperature_at_depth(site, depth_km) - site.reference();
  if (delta < 0.0) {
    throw DomainError(fmt::format(
        "temperature at {} km is {} °C below the reference temperature", depth_km, -delta));
  }
  return site.rock_density * site.specific_heat * site.reservoir_volume * delta *
         site.recovery_factor;
}

double capacity_factor(double annual_energy_mwh, double rated_capacity_mw, Diagnostics* diag) {
  if (!(rated_capacity_mw > 0.0)) {
    throw DomainError(fmt::format("rated capacity must be > 0 MW (got {})", rated_capacity_mw));
  }
  if (annual_energy_mwh < 0.0) {
    throw DomainError(fmt::format("annual energy must be >= 0 MWh (got {})", annual_energy_mwh));
  }
  const double cf = annual_energy_mwh / (rated_capacity_mw * kHoursPerYear);
  if (diag && cf > 1.0) {
    diag->warn(fmt::format("capacity factor {} exceeds 1", cf));
  }
  return cf;
}

double annual_energy(double rated_capacity_mw, double cf) {
  if (!(rated_capacity_mw > 0.0)) {
    throw DomainError(fmt::format("rated capacity must be > 0 MW (got {})", rated_capacity_mw));
  }
  if (!(cf >= 0.0 && cf <= 1.0)) {
    throw DomainError(fmt::format("capacity factor must lie in [0, 1] (got {})", cf));
  }
  return rated_capacity_mw * kHoursPerYear * cf;
}

double egs_net_power(const PlantSpec& plant) {
  const double flow = require(plant.circulation_mass_flow, "plant.circulation_mass_flow");
  const double cp = require(plant.fluid_specific_heat, "plant.fluid_specific_heat");
  const double t_prod = require(plant.production_temperature, "plant.production_temperature");
  const double t_inj = require(plant.injection_temperature, "plant.injection_temperature");
  const double eta = require(plant.conversion_efficiency, "plant.conversion_efficiency");
  return flow * cp * (t_prod - t_inj) * eta / 1.0e6;
}

double gshp_electricity(double cooling_mwh, double cop) {
  if (!(cop > 0.0)) {
    throw DomainError(fmt::format("COP must be > 0 (got {})", cop));
  }
  return cooling_mwh / cop;
}

double gshp_savings_fraction(double cop_gshp, double cop_baseline) {
  if (!(cop_gshp > 0.0) || !(cop_baseline > 0.0)) {
    throw DomainError(
        fmt::format("COPs must be > 0 (got {} and {})", cop_gshp, cop_baseline));
  }
  return 1.0 - cop_baseline / cop_gshp;
}

double borehole_length(double peak_cooling_load_kw, double extraction_rate_w_per_m) {
  if (!(extraction_rate_w_per_m > 0.0)) {
    throw DomainError(
        fmt::format("extraction rate must be > 0 W/m (got {})", extraction_rate_w_per_m));
  }
  return peak_cooling_load_kw * 1000.0 / extraction_rate_w_per_m;
}

double delivered_annual_energy(const PlantSpec& plant) {
  if (plant.pathway == Pathway::GSHP) {
    return annual_energy(plant.rated_capacity, plant.utilization);
  }
  if (plant.temperature_coupled) {
    const double power = egs_net_power(plant);
    if (power < 0.0) {
      throw DomainError(fmt::format("temperature-coupled net power is negative ({} MW)", power));
    }
    return power * kHoursPerYear * plant.capacity_factor;
  }
  return annual_energy(plant.rated_capacity, plant.capacity_factor);
}

void validate(const SiteProfile& site, Diagnostics& diag) {
  require_positive(site.gradient, "site.gradient");
  require_positive(site.rock_density, "site.rock_density");
  require_positive(site.specific_heat, "site.specific_heat");
  require_positive(site.reservoir_volume, "site.reservoir_volume");
  if (!(site.recovery_factor > 0.0 && site.recovery_factor <= 1.0)) {
    throw ConfigError("site.recovery_factor",
                      fmt::format("must lie in (0, 1] (got {})", site.recovery_factor));
  }
  warn_outside(diag, "site.gradient", site.gradient, 20.0, 35.0);
  warn_outside(diag, "site.rock_density", site.rock_density, 2300.0, 2700.0);
  warn_outside(diag, "site.specific_heat", site.specific_heat, 800.0, 1000.0);
}

void validate(const PlantSpec& plant, Diagnostics& diag) {
  require_positive(plant.rated_capacity, "plant.rated_capacity");
  if (!(plant.capacity_factor >= 0.0 && plant.capacity_factor <= 1.0)) {
    throw ConfigError("plant.capacity_factor",
                      fmt::format("must lie in [0, 1] (got {})", plant.capacity_factor));
  }
  if (plant.lifetime < 1) {
    throw ConfigError("plant.lifetime", fmt::format("must be >= 1 (got {})", plant.lifetime));
  }
  if (plant.generation_start_year < 1 || plant.generation_start_year > plant.lifetime) {
    throw ConfigError("plant.generation_start_year",
                      fmt::format("must lie in [1, lifetime={}] (got {})", plant.lifetime,
                                  plant.generation_start_year));
  }
  if (plant.production_temperature && plant.injection_temperature &&
      !(*plant.production_temperature > *plant.injection_temperature)) {
    throw ConfigError("plant.production_temperature",
                      fmt::format("must exceed injection temperature ({} <= {})",
                                  *plant.production_temperature, *plant.injection_temperature));
  }
  if (plant.conversion_efficiency &&
      !(*plant.conversion_efficiency >= 0.0 && *plant.conversion_efficiency <= 1.0)) {
    throw ConfigError("plant.conversion_efficiency",
                      fmt::format("must lie in [0, 1] (got {})", *plant.conversion_efficiency));
  }
  if (plant.circulation_mass_flow && *plant.circulation_mass_flow < 0.0) {
    throw ConfigError("plant.circulation_mass_flow",
                      fmt::format("must be >= 0 (got {})", *plant.circulation_mass_flow));
  }
  if (plant.fluid_specific_heat) {
    require_positive(*plant.fluid_specific_heat, "plant.fluid_specific_heat");
  }

  if (plant.pathway == Pathway::GSHP) {
    if (plant.temperature_coupled) {
      throw ConfigError("plant.temperature_coupled", "not available for the gshp pathway");
    }
    if (!(plant.cop > 1.0)) {
      throw ConfigError("plant.cop", fmt::format("must be > 1 (got {})", plant.cop));
    }
    if (!(plant.baseline_cop > 1.0)) {
      throw ConfigError("plant.baseline_cop",
                        fmt::format("must be > 1 (got {})", plant.baseline_cop));
    }
    if (!(plant.utilization >= 0.0 && plant.utilization <= 1.0)) {
      throw ConfigError("plant.utilization",
                        fmt::format("must lie in [0, 1] (got {})", plant.utilization));
    }
    if (plant.cop <= plant.baseline_cop) {
      diag.warn(fmt::format("plant.cop = {} does not exceed plant.baseline_cop = {}; "
                            "cooling savings will be zero or negative",
                            plant.cop, plant.baseline_cop));
    }
    warn_outside(diag, "plant.cop", plant.cop, 4.0, 5.5);
  } else if (plant.temperature_coupled) {
    require(plant.circulation_mass_flow, "plant.circulation_mass_flow");
    require(plant.fluid_specific_heat, "plant.fluid_specific_heat");
    require(plant.production_temperature, "plant.production_temperature");
    require(plant.injection_temperature, "plant.injection_temperature");
    require(plant.conversion_efficiency, "plant.conversion_efficiency");
  }
}

}  // namespace geoassess
