#include "geoassess/project_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

namespace geoassess {

namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

json parse_json(std::string_view text, const std::string& source) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const std::size_t byte = e.byte == 0 ? 0 : e.byte - 1;
    const std::size_t limit = std::min(byte, text.size());
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i < limit; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::string what = e.what();
    if (const auto pos = what.find("syntax error"); pos != std::string::npos) what = what.substr(pos);
    throw ParseError(source, line, column, what);
  }
}

std::string join(const std::string& prefix, std::string_view key) {
  return prefix.empty() ? std::string(key) : prefix + "." + std::string(key);
}

// Reads one JSON object, tracking which keys were consumed so that leftovers
// can be rejected.
class ObjectReader {
 public:
  ObjectReader(const json& node, std::string path) : node_(node), path_(std::move(path)) {
    if (!node_.is_object()) throw ConfigError(path_.empty() ? "<root>" : path_, "expected an object");
  }

  const std::string& path() const { return path_; }

  const json* child(std::string_view key) {
    const auto it = node_.find(std::string(key));
    if (it == node_.end()) return nullptr;
    seen_.insert(std::string(key));
    return &*it;
  }

  std::optional<double> number(std::string_view key) {
    const json* v = child(key);
    if (!v) return std::nullopt;
    if (!v->is_number()) throw ConfigError(join(path_, key), "expected a number");
    return v->get<double>();
  }

  double number(std::string_view key, double fallback) { return number(key).value_or(fallback); }

  double required_number(std::string_view key) {
    const auto v = number(key);
    if (!v) throw ConfigError(join(path_, key), "is required");
    return *v;
  }

  std::optional<long long> integer(std::string_view key) {
    const json* v = child(key);
    if (!v) return std::nullopt;
    if (!v->is_number_integer()) throw ConfigError(join(path_, key), "expected an integer");
    return v->get<long long>();
  }

  std::optional<std::uint64_t> unsigned_integer(std::string_view key) {
    const json* v = child(key);
    if (!v) return std::nullopt;
    if (!v->is_number_unsigned()) {
      throw ConfigError(join(path_, key), "expected a non-negative integer");
    }
    return v->get<std::uint64_t>();
  }

  std::optional<std::string> string(std::string_view key) {
    const json* v = child(key);
    if (!v) return std::nullopt;
    if (!v->is_string()) throw ConfigError(join(path_, key), "expected a string");
    return v->get<std::string>();
  }

  std::optional<bool> boolean(std::string_view key) {
    const json* v = child(key);
    if (!v) return std::nullopt;
    if (!v->is_boolean()) throw ConfigError(join(path_, key), "expected true or false");
    return v->get<bool>();
  }

  void finish() const {
    for (const auto& [key, value] : node_.items()) {
      if (!seen_.contains(key)) throw ConfigError(join(path_, key), "unknown key");
    }
  }

 private:
  const json& node_;
  std::string path_;
  std::set<std::string> seen_;
};

int to_int(long long v, const std::string& field) {
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
    throw ConfigError(field, "integer out of range");
  }
  return static_cast<int>(v);
}

Distribution read_distribution(const json& node, const std::string& path) {
  ObjectReader r(node, path);
  const auto kind = r.string("kind");
  if (!kind) throw ConfigError(join(path, "kind"), "is required");
  bool relative = false;
  if (const auto scale = r.string("scale")) {
    if (*scale == "relative") {
      relative = true;
    } else if (*scale != "absolute") {
      throw ConfigError(join(path, "scale"), "expected 'absolute' or 'relative'");
    }
  }
  std::optional<Distribution> d;
  try {
    if (*kind == "point") {
      d = Distribution::point(r.required_number("value"));
    } else if (*kind == "uniform") {
      d = Distribution::uniform(r.required_number("low"), r.required_number("high"));
    } else if (*kind == "triangular") {
      const double lo = r.required_number("low");
      const double mode = r.required_number("mode");
      d = Distribution::triangular(lo, mode, r.required_number("high"));
    } else if (*kind == "normal") {
      const double mean = r.required_number("mean");
      const double sd = r.required_number("sd");
      const auto lo = r.number("low");
      d = Distribution::normal(mean, sd, lo, r.number("high"));
    } else {
      throw ConfigError(join(path, "kind"),
                        fmt::format("unknown distribution '{}' (expected point, uniform, "
                                    "triangular or normal)",
                                    *kind));
    }
  } catch (const DomainError& e) {
    throw ConfigError(path, e.what());
  }
  r.finish();
  return relative ? d->as_relative() : *d;
}

std::map<std::string, Distribution> read_parameters(const json& node, const std::string& path) {
  if (!node.is_object()) throw ConfigError(path, "expected an object");
  std::map<std::string, Distribution> out;
  for (const auto& [key, value] : node.items()) {
    const std::string field = join(path, key);
    if (!is_parameter_path(key)) throw ConfigError(field, "not a numeric project parameter");
    out.emplace(key, read_distribution(value, field));
  }
  return out;
}

UncertaintySpec read_uncertainty(const json& node, const std::string& path,
                                 const UncertaintySpec& base) {
  ObjectReader r(node, path);
  UncertaintySpec spec = base;
  if (const auto n = r.integer("samples")) {
    if (*n < 1) throw ConfigError(join(path, "samples"), "must be >= 1");
    spec.samples = static_cast<std::size_t>(*n);
  }
  if (const auto s = r.unsigned_integer("seed")) spec.seed = *s;
  if (const json* p = r.child("parameters")) {
    for (auto& [name, dist] : read_parameters(*p, join(path, "parameters"))) {
      spec.parameters.insert_or_assign(name, dist);
    }
  }
  r.finish();
  return spec;
}

SiteProfile read_site(const json& node) {
  ObjectReader r(node, "site");
  SiteProfile s;
  s.surface_temperature = r.number("surface_temperature", s.surface_temperature);
  s.gradient = r.number("gradient", s.gradient);
  s.rock_density = r.number("rock_density", s.rock_density);
  s.specific_heat = r.number("specific_heat", s.specific_heat);
  s.reservoir_volume = r.number("reservoir_volume", s.reservoir_volume);
  s.reference_temperature = r.number("reference_temperature");
  s.recovery_factor = r.number("recovery_factor", s.recovery_factor);
  r.finish();
  return s;
}

PlantSpec read_plant(const json& node, std::optional<double>& energy_override, Diagnostics& diag) {
  ObjectReader r(node, "plant");
  PlantSpec p;
  const auto pathway = r.string("pathway");
  if (!pathway) throw ConfigError("plant.pathway", "is required");
  const auto parsed = parse_pathway(*pathway);
  if (!parsed) {
    throw ConfigError("plant.pathway",
                      fmt::format("unknown pathway '{}' (expected egs, wells or gshp)", *pathway));
  }
  p.pathway = *parsed;
  p.rated_capacity = r.required_number("rated_capacity");
  p.capacity_factor = r.number("capacity_factor", p.capacity_factor);
  if (const auto n = r.integer("lifetime")) p.lifetime = to_int(*n, "plant.lifetime");
  if (const auto a = r.integer("generation_start_year")) {
    p.generation_start_year = to_int(*a, "plant.generation_start_year");
  }
  p.production_temperature = r.number("production_temperature");
  p.injection_temperature = r.number("injection_temperature");
  p.conversion_efficiency = r.number("conversion_efficiency");
  p.circulation_mass_flow = r.number("circulation_mass_flow");
  p.fluid_specific_heat = r.number("fluid_specific_heat");
  p.temperature_coupled = r.boolean("temperature_coupled").value_or(false);
  p.cop = r.number("cop", p.cop);
  p.baseline_cop = r.number("baseline_cop", p.baseline_cop);
  p.utilization = r.number("utilization", p.utilization);
  energy_override = r.number("annual_energy_override");
  r.finish();

  if (p.temperature_coupled && !p.conversion_efficiency) {
    p.conversion_efficiency = kDefaultOrcEfficiency;
    diag.warn(fmt::format("plant.conversion_efficiency not given; using {} (binary ORC)",
                          kDefaultOrcEfficiency));
  }
  return p;
}

CostModel read_costs(const json& node) {
  ObjectReader r(node, "costs");
  CostModel c;
  const json* capex = r.child("capex");
  const json* schedule = r.child("capex_schedule");
  if (capex && schedule) {
    throw ConfigError("costs.capex", "give either capex or capex_schedule, not both");
  }
  if (capex) {
    if (!capex->is_number()) throw ConfigError("costs.capex", "expected a number");
    c.capex_schedule = {CapexEntry{0, capex->get<double>()}};
  } else if (schedule) {
    if (!schedule->is_array()) throw ConfigError("costs.capex_schedule", "expected a list");
    c.capex_schedule.clear();
    for (std::size_t i = 0; i < schedule->size(); ++i) {
      const std::string path = fmt::format("costs.capex_schedule[{}]", i);
      ObjectReader e((*schedule)[i], path);
      const auto year = e.integer("year");
      if (!year) throw ConfigError(path + ".year", "is required");
      const double amount = e.required_number("amount");
      e.finish();
      c.capex_schedule.push_back(CapexEntry{to_int(*year, path + ".year"), amount});
    }
  } else {
    throw ConfigError("costs.capex", "is required");
  }
  c.opex = r.number("opex", c.opex);
  c.fuel_cost = r.number("fuel_cost", c.fuel_cost);
  if (const auto esc = r.string("opex_escalation")) {
    if (*esc == "none") {
      c.opex_escalation = OpexEscalation::None;
    } else if (*esc == "inflation-indexed") {
      c.opex_escalation = OpexEscalation::InflationIndexed;
    } else {
      throw ConfigError("costs.opex_escalation", "expected 'none' or 'inflation-indexed'");
    }
  }
  r.finish();
  return c;
}

AutomationScenario read_automation(const json& node) {
  ObjectReader r(node, "automation");
  AutomationScenario s;
  if (const auto level = r.string("level")) {
    const auto parsed = parse_level(*level);
    if (!parsed) {
      throw ConfigError("automation.level",
                        fmt::format("unknown level '{}' (expected baseline, moderate or full)",
                                    *level));
    }
    s.level = *parsed;
  }
  s.capex_reduction = r.number("capex_reduction", 0.0);
  s.opex_reduction = r.number("opex_reduction", 0.0);
  r.finish();
  return s;
}

FinancialAssumptions read_assumptions(const json& node, std::optional<int>& lifetime) {
  ObjectReader r(node, "assumptions");
  FinancialAssumptions a;
  a.discount_rate = r.number("discount_rate", a.discount_rate);
  a.inflation_rate = r.number("inflation_rate", a.inflation_rate);
  if (const auto n = r.integer("lifetime")) lifetime = to_int(*n, "assumptions.lifetime");
  a.energy_tariff = r.number("energy_tariff");
  r.finish();
  return a;
}

EmissionsContext read_emissions(const json& node) {
  ObjectReader r(node, "emissions");
  EmissionsContext ctx;
  ctx.grid_factor = r.number("grid_factor", ctx.grid_factor);
  if (const json* stages = r.child("stage_emissions")) {
    ObjectReader s(*stages, "emissions.stage_emissions");
    ctx.stages.construction = s.number("construction", 0.0);
    ctx.stages.operation = s.number("operation", 0.0);
    ctx.stages.decommissioning = s.number("decommissioning", 0.0);
    s.finish();
  }
  r.finish();
  return ctx;
}

ordered_json write_distribution(const Distribution& d) {
  ordered_json j;
  j["kind"] = kind_id(d.kind());
  switch (d.kind()) {
    case Distribution::Kind::Point:
      j["value"] = d.param(0);
      break;
    case Distribution::Kind::Uniform:
      j["low"] = d.param(0);
      j["high"] = d.param(1);
      break;
    case Distribution::Kind::Triangular:
      j["low"] = d.param(0);
      j["mode"] = d.param(1);
      j["high"] = d.param(2);
      break;
    case Distribution::Kind::Normal:
      j["mean"] = d.param(0);
      j["sd"] = d.param(1);
      if (d.lower_bound()) j["low"] = *d.lower_bound();
      if (d.upper_bound()) j["high"] = *d.upper_bound();
      break;
  }
  if (d.relative()) j["scale"] = "relative";
  return j;
}

template <typename T>
void put_optional(ordered_json& j, const char* key, const std::optional<T>& v) {
  if (v) j[key] = *v;
}

}  // namespace

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path.string(), "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ProjectFile parse_project(std::string_view text, Diagnostics& diag, const std::string& source) {
  const json root = parse_json(text, source);
  ObjectReader r(root, "");

  ProjectFile file;
  ProjectConfig& c = file.config;
  c.name = r.string("name").value_or("project");

  if (const json* site = r.child("site")) c.site = read_site(*site);

  const json* plant = r.child("plant");
  if (!plant) throw ConfigError("plant", "is required");
  c.plant = read_plant(*plant, c.annual_energy_override, diag);

  const json* costs = r.child("costs");
  if (!costs) throw ConfigError("costs", "is required");
  c.costs = read_costs(*costs);

  if (const json* automation = r.child("automation")) c.automation = read_automation(*automation);

  std::optional<int> lifetime;
  if (const json* assumptions = r.child("assumptions")) {
    c.assumptions = read_assumptions(*assumptions, lifetime);
  }
  const bool plant_lifetime_given = plant->contains("lifetime");
  if (lifetime) {
    c.assumptions.lifetime = *lifetime;
    if (!plant_lifetime_given) c.plant.lifetime = *lifetime;
  } else {
    c.assumptions.lifetime = c.plant.lifetime;
  }

  if (const json* emissions = r.child("emissions")) c.emissions = read_emissions(*emissions);
  if (const json* uncertainty = r.child("uncertainty")) {
    file.uncertainty = read_uncertainty(*uncertainty, "uncertainty", UncertaintySpec{});
  }
  r.finish();

  validate(c, diag);
  if (file.uncertainty) validate(*file.uncertainty, c);
  return file;
}

ProjectFile load_project_file(const std::filesystem::path& path, Diagnostics& diag) {
  return parse_project(read_text_file(path), diag, path.string());
}

ProjectConfig load_project(const std::filesystem::path& path, Diagnostics& diag) {
  return load_project_file(path, diag).config;
}

std::string serialize_project(const ProjectFile& file) {
  const ProjectConfig& c = file.config;
  ordered_json root;
  root["name"] = c.name;

  ordered_json site;
  site["surface_temperature"] = c.site.surface_temperature;
  site["gradient"] = c.site.gradient;
  site["rock_density"] = c.site.rock_density;
  site["specific_heat"] = c.site.specific_heat;
  site["reservoir_volume"] = c.site.reservoir_volume;
  put_optional(site, "reference_temperature", c.site.reference_temperature);
  site["recovery_factor"] = c.site.recovery_factor;
  root["site"] = site;

  ordered_json plant;
  plant["pathway"] = pathway_id(c.plant.pathway);
  plant["rated_capacity"] = c.plant.rated_capacity;
  plant["capacity_factor"] = c.plant.capacity_factor;
  plant["lifetime"] = c.plant.lifetime;
  plant["generation_start_year"] = c.plant.generation_start_year;
  put_optional(plant, "production_temperature", c.plant.production_temperature);
  put_optional(plant, "injection_temperature", c.plant.injection_temperature);
  put_optional(plant, "conversion_efficiency", c.plant.conversion_efficiency);
  put_optional(plant, "circulation_mass_flow", c.plant.circulation_mass_flow);
  put_optional(plant, "fluid_specific_heat", c.plant.fluid_specific_heat);
  plant["temperature_coupled"] = c.plant.temperature_coupled;
  plant["cop"] = c.plant.cop;
  plant["baseline_cop"] = c.plant.baseline_cop;
  plant["utilization"] = c.plant.utilization;
  put_optional(plant, "annual_energy_override", c.annual_energy_override);
  root["plant"] = plant;

  ordered_json costs;
  ordered_json schedule = ordered_json::array();
  for (const auto& e : c.costs.capex_schedule) {
    ordered_json entry;
    entry["year"] = e.year;
    entry["amount"] = e.amount;
    schedule.push_back(entry);
  }
  costs["capex_schedule"] = schedule;
  costs["opex"] = c.costs.opex;
  costs["fuel_cost"] = c.costs.fuel_cost;
  costs["opex_escalation"] =
      c.costs.opex_escalation == OpexEscalation::None ? "none" : "inflation-indexed";
  root["costs"] = costs;

  ordered_json automation;
  automation["level"] = level_id(c.automation.level);
  automation["capex_reduction"] = c.automation.capex_reduction;
  automation["opex_reduction"] = c.automation.opex_reduction;
  root["automation"] = automation;

  ordered_json assumptions;
  assumptions["discount_rate"] = c.assumptions.discount_rate;
  assumptions["inflation_rate"] = c.assumptions.inflation_rate;
  assumptions["lifetime"] = c.assumptions.lifetime;
  put_optional(assumptions, "energy_tariff", c.assumptions.energy_tariff);
  root["assumptions"] = assumptions;

  ordered_json emissions;
  emissions["grid_factor"] = c.emissions.grid_factor;
  emissions["stage_emissions"] = {{"construction", c.emissions.stages.construction},
                                  {"operation", c.emissions.stages.operation},
                                  {"decommissioning", c.emissions.stages.decommissioning}};
  root["emissions"] = emissions;

  if (file.uncertainty) {
    ordered_json u;
    u["samples"] = file.uncertainty->samples;
    u["seed"] = file.uncertainty->seed;
    ordered_json params = ordered_json::object();
    for (const auto& [path, dist] : file.uncertainty->parameters) {
      params[path] = write_distribution(dist);
    }
    u["parameters"] = params;
    root["uncertainty"] = u;
  }
  return root.dump(2) + "\n";
}

std::string serialize_project(const ProjectConfig& config) {
  return serialize_project(ProjectFile{config, std::nullopt});
}

UncertaintySpec parse_calibration(std::string_view text, const UncertaintySpec& base,
                                  const std::string& source) {
  return read_uncertainty(parse_json(text, source), "", base);
}

UncertaintySpec load_calibration(const std::filesystem::path& path, const UncertaintySpec& base) {
  return parse_calibration(read_text_file(path), base, path.string());
}

std::map<std::string, ParameterRange> parse_ranges(std::string_view text,
                                                   const std::string& source) {
  const json root = parse_json(text, source);
  ObjectReader r(root, "");
  const json* ranges = r.child("ranges");
  if (!ranges) throw ConfigError("ranges", "is required");
  r.finish();
  if (!ranges->is_object()) throw ConfigError("ranges", "expected an object");

  std::map<std::string, ParameterRange> out;
  for (const auto& [key, value] : ranges->items()) {
    const std::string field = join("ranges", key);
    if (!is_parameter_path(key)) throw ConfigError(field, "not a numeric project parameter");
    ParameterRange range;
    if (value.is_array()) {
      if (value.size() != 2 || !value[0].is_number() || !value[1].is_number()) {
        throw ConfigError(field, "expected [low, high]");
      }
      range.low = value[0].get<double>();
      range.high = value[1].get<double>();
    } else {
      ObjectReader e(value, field);
      range.low = e.required_number("low");
      range.high = e.required_number("high");
      if (const auto scale = e.string("scale")) {
        if (*scale == "relative") {
          range.relative = true;
        } else if (*scale != "absolute") {
          throw ConfigError(join(field, "scale"), "expected 'absolute' or 'relative'");
        }
      }
      e.finish();
    }
    if (range.low > range.high) {
      throw ConfigError(field, fmt::format("low must not exceed high ({} > {})", range.low,
                                           range.high));
    }
    out.emplace(key, range);
  }
  return out;
}

std::map<std::string, ParameterRange> load_ranges(const std::filesystem::path& path) {
  return parse_ranges(read_text_file(path), path.string());
}

}  // namespace geoassess
