#pragma once

// Resource physics and performance conversions: subsurface temperature, heat
// in place, capacity factor, heat-pump COP arithmetic and a first-order
// binary-cycle output model.
//
// Units: temperatures in °C, depth in km, gradient in °C/km, power in MW,
// annual energy in MWh, heat in J.

#include <optional>
#include <string_view>

#include "geoassess/errors.hpp"

namespace geoassess {

inline constexpr double kHoursPerYear = 8760.0;

/// Conversion efficiency assumed for a binary ORC on a 120-170 °C resource.
inline constexpr double kDefaultOrcEfficiency = 0.12;

enum class Pathway { EGS, WellRepurposing, GSHP };

/// Short identifier used on the command line and in project files: egs, wells, gshp.
std::string_view pathway_id(Pathway p) noexcept;
std::string_view pathway_label(Pathway p) noexcept;
std::optional<Pathway> parse_pathway(std::string_view id) noexcept;

/// Geology of one location. Defaults describe a Dukhan-type sedimentary basin.
struct SiteProfile {
  double surface_temperature = 27.0;
  double gradient = 30.0;
  double rock_density = 2500.0;   // kg/m³
  double specific_heat = 900.0;   // J/(kg·°C)
  double reservoir_volume = 1.0e9;  // m³
  std::optional<double> reference_temperature;  // falls back to surface_temperature
  double recovery_factor = 1.0;  // multiplier on gross heat in place

  double reference() const noexcept {
    return reference_temperature.value_or(surface_temperature);
  }

  bool operator==(const SiteProfile&) const = default;
};

struct PlantSpec {
  Pathway pathway = Pathway::EGS;
  double rated_capacity = 5.0;  // MW electric, or MW cooling for GSHP
  double capacity_factor = 0.8;
  int lifetime = 25;
  int generation_start_year = 1;

  std::optional<double> production_temperature;
  std::optional<double> injection_temperature;
  std::optional<double> conversion_efficiency;
  std::optional<double> circulation_mass_flow;  // kg/s
  std::optional<double> fluid_specific_heat;    // J/(kg·°C)
  // When set, egs_net_power() replaces rated_capacity as the output source.
  bool temperature_coupled = false;

  // GSHP only.
  double cop = 5.0;
  double baseline_cop = 3.0;
  double utilization = 0.55;

  bool operator==(const PlantSpec&) const = default;
};

/// T(z) = T_surface + G·z. Throws DomainError for negative depth.
double temperature_at_depth(const SiteProfile& site, double depth_km);

/// Q = ρ·c_p·V·(T(z) − T_ref), scaled by the site's recovery factor.
double heat_in_place(const SiteProfile& site, double depth_km);

/// E / (P·8760). Values outside [0,1] are returned and reported to `diag`.
double capacity_factor(double annual_energy_mwh, double rated_capacity_mw,
                       Diagnostics* diag = nullptr);

double annual_energy(double rated_capacity_mw, double capacity_factor);

/// ṁ·c_p·(T_prod − T_inj)·η in MW. Every input must be set on the plant;
/// a missing one raises ConfigError naming it.
double egs_net_power(const PlantSpec& plant);

double gshp_electricity(double cooling_mwh, double cop);

/// Fraction of baseline electricity avoided when the same cooling is delivered
/// at `cop_gshp` instead of `cop_baseline`.
double gshp_savings_fraction(double cop_gshp, double cop_baseline);

/// Borehole length in metres for a peak load in kW at an extraction rate in W/m.
double borehole_length(double peak_cooling_load_kw, double extraction_rate_w_per_m);

/// Annual energy delivered by the plant: electricity for EGS and wells
/// (temperature-coupled when requested), cooling for GSHP
/// (rated · 8760 · utilization).
double delivered_annual_energy(const PlantSpec& plant);

// Invariant checks. Violations throw ConfigError with a `site.` or `plant.`
// prefixed field; out-of-band but legal values are reported to `diag`.
void validate(const SiteProfile& site, Diagnostics& diag);
void validate(const PlantSpec& plant, Diagnostics& diag);

}  // namespace geoassess
