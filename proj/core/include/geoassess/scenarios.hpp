#pragma once

// Automation cost scenarios, the pathway presets, whole-project evaluation
// and multi-project comparison tables.

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "geoassess/emissions.hpp"
#include "geoassess/finance.hpp"
#include "geoassess/resource.hpp"

namespace geoassess {

enum class AutomationLevel { Baseline, Moderate, Full };

std::string_view level_id(AutomationLevel level) noexcept;
std::string_view level_label(AutomationLevel level) noexcept;
std::optional<AutomationLevel> parse_level(std::string_view id) noexcept;

struct AutomationScenario {
  AutomationLevel level = AutomationLevel::Baseline;
  double capex_reduction = 0.0;  // fraction in [0, 1)
  double opex_reduction = 0.0;

  bool operator==(const AutomationScenario&) const = default;
};

struct ProjectConfig {
  std::string name;
  SiteProfile site;
  PlantSpec plant;
  CostModel costs;  // before automation
  AutomationScenario automation;
  FinancialAssumptions assumptions;
  EmissionsContext emissions;
  std::optional<double> annual_energy_override;  // MWh; bypasses the plant model

  bool operator==(const ProjectConfig&) const = default;
};

/// Scales every investment by (1 − capex_reduction) and O&M by
/// (1 − opex_reduction). Fuel is untouched.
CostModel apply_automation(const CostModel& costs, const AutomationScenario& scenario);

/// Reduction fractions embedded in the presets. Full reproduces the cost
/// ratios of the reference table; Moderate is the midpoint of Baseline and Full.
AutomationScenario preset_automation(Pathway pathway, AutomationLevel level);

/// Back-derived annual energy of each preset (MWh electric, or MWh cooling for GSHP).
double preset_annual_energy(Pathway pathway);

/// Tariff implied by the baseline payback: (CAPEX / payback + OPEX) / energy.
double preset_tariff(Pathway pathway);

ProjectConfig preset(Pathway pathway, AutomationLevel level);

/// `preset()` keyed by command-line identifiers; throws ConfigError for unknown ids.
ProjectConfig preset(std::string_view pathway_id, std::string_view level_id);

/// Checks every sub-object; throws ConfigError naming the field on violation.
void validate(const ProjectConfig& config, Diagnostics& diag);

double project_annual_energy(const ProjectConfig& config);

struct Evaluation {
  CostModel effective_costs;
  double annual_energy = 0.0;
  CashFlowSeries cash_flows;
  MetricsReport metrics;
  EmissionsReport emissions;
};

/// Validates and runs the full deterministic pipeline.
Evaluation evaluate(const ProjectConfig& config, Diagnostics* diag = nullptr);

/// Single metric for one configuration; throws when the metric is undefined.
/// Skips validation warnings; invariant violations still throw.
double evaluate_lcoe(const ProjectConfig& config);
double evaluate_npv(const ProjectConfig& config);

struct ComparisonRow {
  std::string name;
  Pathway pathway = Pathway::EGS;
  AutomationLevel level = AutomationLevel::Baseline;
  std::optional<double> capex;
  std::optional<double> opex;
  std::optional<double> lcoe;  // levelized cost of cooling for GSHP rows
  std::optional<double> payback;
  std::optional<double> npv;
  std::optional<double> avoided_co2;  // t/yr
  std::string error;  // set when the configuration could not be evaluated

  bool is_cooling() const noexcept { return pathway == Pathway::GSHP; }
};

using ComparisonTable = std::vector<ComparisonRow>;

/// One row per configuration, in input order. Failures blank the affected
/// cells instead of aborting the table.
ComparisonTable compare_pathways(std::span<const ProjectConfig> configs);

}  // namespace geoassess
