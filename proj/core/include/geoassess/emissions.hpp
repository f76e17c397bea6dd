#pragma once

// Avoided-CO₂ accounting against a grid emission factor. Tonnes throughout;
// kg/kWh and t/MWh are numerically identical.

#include <string>
#include <vector>

#include "geoassess/resource.hpp"

namespace geoassess {

/// Qatar grid average, kg CO₂ per kWh.
inline constexpr double kQatarGridFactor = 0.503;

struct StageEmissions {
  double construction = 0.0;     // t
  double operation = 0.0;        // t/yr
  double decommissioning = 0.0;  // t

  bool operator==(const StageEmissions&) const = default;
};

struct EmissionsContext {
  double grid_factor = kQatarGridFactor;
  StageEmissions stages;

  bool operator==(const EmissionsContext&) const = default;
};

struct EmissionsReport {
  double annual_displaced_mwh = 0.0;
  double avoided_annual = 0.0;        // t/yr
  double avoided_lifetime_net = 0.0;  // t over the lifetime, after stage emissions
  int lifetime = 0;
  double grid_factor = kQatarGridFactor;
  // Modelling assumptions echoed with the figures (GSHP COP basis).
  std::vector<std::string> assumptions;
};

double avoided_emissions(double annual_generation_mwh, const EmissionsContext& ctx);

/// Grid electricity a GSHP avoids relative to the baseline chiller for the
/// same cooling delivered.
double gshp_displaced_electricity(double cooling_mwh, double cop, double baseline_cop);

/// Avoided t/yr for a GSHP plant delivering rated · 8760 · utilization of cooling.
/// Throws DomainError for any other pathway.
double gshp_avoided_emissions(const PlantSpec& plant, const EmissionsContext& ctx);

double lifetime_emissions_balance(double annual_avoided, int lifetime,
                                  const EmissionsContext& ctx);

/// Report for a plant whose annual output (electricity, or cooling for GSHP)
/// is `annual_energy_mwh`.
EmissionsReport emissions_report(const PlantSpec& plant, double annual_energy_mwh,
                                 const EmissionsContext& ctx);

void validate(const EmissionsContext& ctx);

}  // namespace geoassess
