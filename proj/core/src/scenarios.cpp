#include "geoassess/scenarios.hpp"

#include <fmt/format.h>

namespace geoassess {

namespace {

// Reference cost rows: baseline and full-automation CAPEX/OPEX, baseline
// payback, and the annual energy that reproduces the baseline levelized cost
// at r = 6 %, n = 25.
struct PathwayData {
  double capex_baseline;
  double opex_baseline;
  double capex_full;
  double opex_full;
  double payback_baseline;
  double annual_energy;
};

constexpr PathwayData kEgs{25'000'000.0, 1'200'000.0, 21'500'000.0, 1'000'000.0, 12.5, 21'764.0};
constexpr PathwayData kWells{8'000'000.0, 350'000.0, 7'200'000.0, 300'000.0, 8.0, 10'272.0};
constexpr PathwayData kGshp{5'000'000.0, 180'000.0, 4'400'000.0, 150'000.0, 6.5, 7'932.0};

const PathwayData& data_for(Pathway p) {
  switch (p) {
    case Pathway::EGS: return kEgs;
    case Pathway::WellRepurposing: return kWells;
    case Pathway::GSHP: return kGshp;
  }
  return kEgs;
}

constexpr double kFluidSpecificHeat = 4200.0;

// Mass flow that makes the binary-cycle model deliver exactly `power_mw`.
double design_mass_flow(double power_mw, double t_prod, double t_inj, double eta) {
  return power_mw * 1.0e6 / (kFluidSpecificHeat * (t_prod - t_inj) * eta);
}

PlantSpec preset_plant(Pathway pathway) {
  PlantSpec plant;
  plant.pathway = pathway;
  plant.lifetime = 25;
  plant.generation_start_year = 1;
  const double energy = data_for(pathway).annual_energy;
  switch (pathway) {
    case Pathway::EGS:
      plant.capacity_factor = 0.80;
      plant.production_temperature = 150.0;
      plant.injection_temperature = 70.0;
      plant.conversion_efficiency = kDefaultOrcEfficiency;
      break;
    case Pathway::WellRepurposing:
      plant.capacity_factor = 0.75;
      plant.production_temperature = 115.0;
      plant.injection_temperature = 60.0;
      plant.conversion_efficiency = 0.10;
      break;
    case Pathway::GSHP:
      plant.utilization = 0.55;
      plant.capacity_factor = 0.55;
      plant.cop = 5.5;
      plant.baseline_cop = 2.75;
      plant.rated_capacity = energy / (kHoursPerYear * plant.utilization);
      return plant;
  }
  plant.rated_capacity = energy / (kHoursPerYear * plant.capacity_factor);
  plant.fluid_specific_heat = kFluidSpecificHeat;
  plant.circulation_mass_flow =
      design_mass_flow(plant.rated_capacity, *plant.production_temperature,
                       *plant.injection_temperature, *plant.conversion_efficiency);
  plant.temperature_coupled = true;
  return plant;
}

SiteProfile preset_site(Pathway pathway) {
  SiteProfile site;
  switch (pathway) {
    case Pathway::EGS:  // Dukhan Basin, 4-5 km target
      site.surface_temperature = 27.0;
      site.gradient = 30.0;
      site.rock_density = 2500.0;
      site.reservoir_volume = 1.0e9;
      break;
    case Pathway::WellRepurposing:
      site.surface_temperature = 27.0;
      site.gradient = 25.0;
      site.rock_density = 2500.0;
      site.reservoir_volume = 2.0e8;
      break;
    case Pathway::GSHP:  // Doha shallow ground, 0-200 m
      site.surface_temperature = 30.0;
      site.gradient = 25.0;
      site.rock_density = 2300.0;
      site.reservoir_volume = 1.0e6;
      break;
  }
  return site;
}

}  // namespace

std::string_view level_id(AutomationLevel level) noexcept {
  switch (level) {
    case AutomationLevel::Baseline: return "baseline";
    case AutomationLevel::Moderate: return "moderate";
    case AutomationLevel::Full: return "full";
  }
  return "baseline";
}

std::string_view level_label(AutomationLevel level) noexcept {
  switch (level) {
    case AutomationLevel::Baseline: return "Baseline";
    case AutomationLevel::Moderate: return "Moderate Automation";
    case AutomationLevel::Full: return "Full Automation";
  }
  return "";
}

std::optional<AutomationLevel> parse_level(std::string_view id) noexcept {
  if (id == "baseline") return AutomationLevel::Baseline;
  if (id == "moderate") return AutomationLevel::Moderate;
  if (id == "full") return AutomationLevel::Full;
  return std::nullopt;
}

CostModel apply_automation(const CostModel& costs, const AutomationScenario& scenario) {
  CostModel out = costs;
  for (auto& entry : out.capex_schedule) entry.amount *= 1.0 - scenario.capex_reduction;
  out.opex *= 1.0 - scenario.opex_reduction;
  return out;
}

AutomationScenario preset_automation(Pathway pathway, AutomationLevel level) {
  const PathwayData& d = data_for(pathway);
  AutomationScenario s;
  s.level = level;
  if (level == AutomationLevel::Baseline) return s;
  s.capex_reduction = 1.0 - d.capex_full / d.capex_baseline;
  s.opex_reduction = 1.0 - d.opex_full / d.opex_baseline;
  if (level == AutomationLevel::Moderate) {
    s.capex_reduction *= 0.5;
    s.opex_reduction *= 0.5;
  }
  return s;
}

double preset_annual_energy(Pathway pathway) { return data_for(pathway).annual_energy; }

double preset_tariff(Pathway pathway) {
  const PathwayData& d = data_for(pathway);
  return (d.capex_baseline / d.payback_baseline + d.opex_baseline) / d.annual_energy;
}

ProjectConfig preset(Pathway pathway, AutomationLevel level) {
  const PathwayData& d = data_for(pathway);
  ProjectConfig config;
  config.name = fmt::format("{}-{}", pathway_id(pathway), level_id(level));
  config.site = preset_site(pathway);
  config.plant = preset_plant(pathway);
  config.costs.capex_schedule = {CapexEntry{0, d.capex_baseline}};
  config.costs.opex = d.opex_baseline;
  config.automation = preset_automation(pathway, level);
  config.assumptions.lifetime = config.plant.lifetime;
  config.assumptions.energy_tariff = preset_tariff(pathway);
  return config;
}

ProjectConfig preset(std::string_view pathway, std::string_view level) {
  const auto p = parse_pathway(pathway);
  if (!p) {
    throw ConfigError("pathway",
                      fmt::format("unknown pathway '{}' (expected egs, wells or gshp)", pathway));
  }
  const auto l = parse_level(level);
  if (!l) {
    throw ConfigError(
        "level", fmt::format("unknown level '{}' (expected baseline, moderate or full)", level));
  }
  return preset(*p, *l);
}

void validate(const ProjectConfig& config, Diagnostics& diag) {
  validate(config.site, diag);
  validate(config.plant, diag);
  validate(config.emissions);

  const auto& a = config.assumptions;
  if (a.lifetime < 1) {
    throw ConfigError("assumptions.lifetime", fmt::format("must be >= 1 (got {})", a.lifetime));
  }
  if (a.lifetime != config.plant.lifetime) {
    throw ConfigError("assumptions.lifetime",
                      fmt::format("must equal plant.lifetime ({} != {})", a.lifetime,
                                  config.plant.lifetime));
  }
  if (!(a.discount_rate > -1.0)) {
    throw ConfigError("assumptions.discount_rate",
                      fmt::format("must be > -1 (got {})", a.discount_rate));
  }
  if (!(a.inflation_rate > -1.0)) {
    throw ConfigError("assumptions.inflation_rate",
                      fmt::format("must be > -1 (got {})", a.inflation_rate));
  }
  if (a.energy_tariff && !(*a.energy_tariff >= 0.0)) {
    throw ConfigError("assumptions.energy_tariff",
                      fmt::format("must be >= 0 (got {})", *a.energy_tariff));
  }

  for (const auto& entry : config.costs.capex_schedule) {
    if (entry.year < 0 || entry.year > a.lifetime) {
      throw ConfigError("costs.capex_schedule",
                        fmt::format("investment year {} lies outside [0, {}]", entry.year,
                                    a.lifetime));
    }
    if (!(entry.amount >= 0.0)) {
      throw ConfigError("costs.capex_schedule",
                        fmt::format("investment amount must be >= 0 (got {})", entry.amount));
    }
  }
  if (!(config.costs.opex >= 0.0)) {
    throw ConfigError("costs.opex", fmt::format("must be >= 0 (got {})", config.costs.opex));
  }
  if (!(config.costs.fuel_cost >= 0.0)) {
    throw ConfigError("costs.fuel_cost",
                      fmt::format("must be >= 0 (got {})", config.costs.fuel_cost));
  }

  const auto& s = config.automation;
  const auto check_reduction = [](double v, const char* field) {
    if (!(v >= 0.0 && v < 1.0)) {
      throw ConfigError(field, fmt::format("must lie in [0, 1) (got {})", v));
    }
  };
  check_reduction(s.capex_reduction, "automation.capex_reduction");
  check_reduction(s.opex_reduction, "automation.opex_reduction");
  if (s.level == AutomationLevel::Baseline &&
      (s.capex_reduction != 0.0 || s.opex_reduction != 0.0)) {
    throw ConfigError("automation.level", "baseline automation must carry zero reductions");
  }

  if (config.annual_energy_override && !(*config.annual_energy_override >= 0.0)) {
    throw ConfigError("annual_energy_override",
                      fmt::format("must be >= 0 (got {})", *config.annual_energy_override));
  }
}

double project_annual_energy(const ProjectConfig& config) {
  if (config.annual_energy_override) return *config.annual_energy_override;
  return delivered_annual_energy(config.plant);
}

Evaluation evaluate(const ProjectConfig& config, Diagnostics* diag) {
  Diagnostics local;
  validate(config, diag ? *diag : local);

  Evaluation ev;
  ev.effective_costs = apply_automation(config.costs, config.automation);
  ev.annual_energy = project_annual_energy(config);
  ev.cash_flows = build_cash_flows(ev.annual_energy, config.plant.generation_start_year,
                                   ev.effective_costs, config.assumptions);
  ev.metrics = compute_metrics(ev.cash_flows, config.assumptions.discount_rate);
  ev.emissions = emissions_report(config.plant, ev.annual_energy, config.emissions);
  return ev;
}

namespace {

CashFlowSeries series_for(const ProjectConfig& config) {
  Diagnostics ignored;
  validate(config, ignored);
  return build_cash_flows(project_annual_energy(config), config.plant.generation_start_year,
                          apply_automation(config.costs, config.automation),
                          config.assumptions);
}

}  // namespace

double evaluate_lcoe(const ProjectConfig& config) {
  return lcoe(series_for(config), config.assumptions.discount_rate);
}

double evaluate_npv(const ProjectConfig& config) {
  return npv(series_for(config), config.assumptions.discount_rate);
}

ComparisonTable compare_pathways(std::span<const ProjectConfig> configs) {
  ComparisonTable table;
  table.reserve(configs.size());
  for (const auto& config : configs) {
    ComparisonRow row;
    row.name = config.name;
    row.pathway = config.plant.pathway;
    row.level = config.automation.level;
    const CostModel effective = apply_automation(config.costs, config.automation);
    row.capex = effective.total_capex();
    row.opex = effective.opex;
    try {
      const Evaluation ev = evaluate(config);
      row.lcoe = ev.metrics.lcoe;
      row.payback = ev.metrics.payback_simple;
      row.npv = ev.metrics.npv;
      row.avoided_co2 = ev.emissions.avoided_annual;
    } catch (const Error& e) {
      row.error = e.what();
    }
    table.push_back(std::move(row));
  }
  return table;
}

}  // namespace geoassess
