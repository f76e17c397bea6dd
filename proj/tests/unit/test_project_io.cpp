#include <doctest.h>

#include <random>

#include "geoassess/project_io.hpp"
#include "paths.hpp"

using namespace geoassess;
using doctest::Approx;

namespace {

constexpr Pathway kAll[] = {Pathway::EGS, Pathway::WellRepurposing, Pathway::GSHP};
constexpr AutomationLevel kLevels[] = {AutomationLevel::Baseline, AutomationLevel::Moderate,
                                       AutomationLevel::Full};

ProjectFile parse(std::string_view text) {
  Diagnostics diag;
  return parse_project(text, diag);
}

std::string field_of(std::string_view text) {
  try {
    parse(text);
  } catch (const ConfigError& e) {
    return e.field();
  }
  return "";
}

}  // namespace

TEST_CASE("bundled project files equal their presets") {
  Diagnostics diag;
  const char* names[] = {"egs", "wells", "gshp"};
  for (int p = 0; p < 3; ++p) {
    for (AutomationLevel l : {AutomationLevel::Baseline, AutomationLevel::Full}) {
      const auto path =
          testpaths::data(std::string("examples/") + names[p] + "_" + std::string(level_id(l)) + ".json");
      CAPTURE(path.string());
      CHECK(load_project(path, diag) == preset(kAll[p], l));
    }
  }
  CHECK(diag.empty());
}

TEST_CASE("minimal project falls back to defaults") {
  const auto f = parse(R"({"plant": {"pathway": "egs", "rated_capacity": 5, "capacity_factor": 0.8},
                           "costs": {"capex": 1000000, "opex": 50000}})");
  CHECK(f.config.plant.rated_capacity == 5.0);
  CHECK(f.config.costs.total_capex() == 1e6);
  CHECK(f.config.assumptions.discount_rate == 0.06);
  CHECK(f.config.assumptions.lifetime == 25);
  CHECK(f.config.emissions.grid_factor == 0.503);
  CHECK_FALSE(f.config.assumptions.energy_tariff);
  CHECK_FALSE(f.uncertainty);
}

TEST_CASE("parse errors carry a location") {
  Diagnostics diag;
  CHECK_THROWS_AS(parse_project("", diag), ParseError);
  try {
    parse_project("{\n  \"plant\": {,\n}", diag, "broken.json");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(std::string(e.what()).rfind("broken.json:2:", 0) == 0);
  }
  CHECK_THROWS_AS(parse_project("[1, 2]", diag), Error);
}

TEST_CASE("invariant violations name the field") {
  CHECK(field_of(R"({"plant": {"pathway": "egs", "rated_capacity": 5, "capacity_factor": 1.4},
                     "costs": {"capex": 1, "opex": 1}})") == "plant.capacity_factor");
  CHECK(field_of(R"({"plant": {"pathway": "egs", "rated_capacity": 5}, "costs": {"capex": 1, "opex": 1},
                     "sitee": {}})") == "sitee");
  CHECK(field_of(R"({"plant": {"pathway": "egs", "rated_capacity": 5, "colour": 1},
                     "costs": {"capex": 1, "opex": 1}})") == "plant.colour");
  CHECK(field_of(R"({"plant": {"pathway": "tidal", "rated_capacity": 5}, "costs": {"capex": 1, "opex": 1}})") ==
        "plant.pathway");
  CHECK(field_of(R"({"plant": {"pathway": "egs", "rated_capacity": 5}})") == "costs");
  CHECK(field_of(R"({"plant": {"pathway": "egs"}, "costs": {"capex": 1, "opex": 1}})") ==
        "plant.rated_capacity");
  CHECK(field_of(R"({"plant": {"pathway": "egs", "rated_capacity": "big"},
                     "costs": {"capex": 1, "opex": 1}})") == "plant.rated_capacity");
}

TEST_CASE("capex schedule form") {
  const auto f = parse(R"({"plant": {"pathway": "wells", "rated_capacity": 2},
                           "costs": {"capex_schedule": [{"year": 0, "amount": 4e6},
                                                        {"year": 1, "amount": 2e6}],
                                     "opex": 1e5}})");
  REQUIRE(f.config.costs.capex_schedule.size() == 2);
  CHECK(f.config.costs.total_capex() == 6e6);
}

TEST_CASE("coupled output without an efficiency uses the default with a warning") {
  Diagnostics diag;
  const auto f = parse_project(
      R"({"plant": {"pathway": "egs", "rated_capacity": 2, "temperature_coupled": true, "production_temperature": 150,
                    "injection_temperature": 70, "circulation_mass_flow": 50,
                    "fluid_specific_heat": 4200},
          "costs": {"capex": 1, "opex": 1}})",
      diag);
  CHECK(f.config.plant.conversion_efficiency == kDefaultOrcEfficiency);
  CHECK_FALSE(diag.empty());
}

TEST_CASE("out-of-band values warn without failing") {
  Diagnostics diag;
  parse_project(R"({"site": {"gradient": 45}, "plant": {"pathway": "egs", "rated_capacity": 5},
                    "costs": {"capex": 1, "opex": 1}})",
                diag);
  CHECK(diag.warnings.size() == 1);
}

TEST_CASE("serialize then parse is the identity on presets") {
  for (Pathway p : kAll) {
    for (AutomationLevel l : kLevels) {
      const ProjectConfig cfg = preset(p, l);
      CHECK(parse(serialize_project(cfg)).config == cfg);
    }
  }
}

TEST_CASE("serialize then parse is the identity on random configurations") {
  std::mt19937_64 gen(31337);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> pick(0, 2);
  for (int i = 0; i < 300; ++i) {
    ProjectFile file;
    ProjectConfig& c = file.config;
    c = preset(kAll[pick(gen)], kLevels[pick(gen)]);
    c.name = "random-" + std::to_string(i);
    c.site.gradient = 20.0 + 15.0 * u(gen);
    c.site.rock_density = 2300.0 + 400.0 * u(gen);
    c.plant.capacity_factor = u(gen);
    c.plant.lifetime = c.assumptions.lifetime = 5 + pick(gen) * 10;
    c.plant.generation_start_year = 1 + pick(gen);
    c.costs.capex_schedule = {CapexEntry{0, 1e7 * u(gen)}, CapexEntry{1, 1e6 * u(gen)}};
    c.costs.opex = 1e6 * u(gen);
    c.costs.fuel_cost = 1e4 * u(gen);
    c.costs.opex_escalation = pick(gen) == 0 ? OpexEscalation::InflationIndexed : OpexEscalation::None;
    c.assumptions.discount_rate = 0.1 * u(gen);
    c.assumptions.energy_tariff = pick(gen) == 0 ? std::nullopt : std::optional(200.0 * u(gen));
    c.emissions.stages = StageEmissions{1000.0 * u(gen), 10.0 * u(gen), 100.0 * u(gen)};
    if (pick(gen) == 1) c.annual_energy_override = 1e4 * u(gen);
    if (pick(gen) == 2) {
      UncertaintySpec spec;
      spec.samples = 1 + static_cast<std::size_t>(5000 * u(gen));
      spec.seed = gen();
      spec.parameters.emplace("costs.opex", Distribution::triangular(0.5, 1.0, 1.5).as_relative());
      spec.parameters.emplace("site.gradient", Distribution::normal(30.0, 2.0, 25.0));
      spec.parameters.emplace("assumptions.discount_rate", Distribution::uniform(0.03, 0.09));
      spec.parameters.emplace("costs.fuel_cost", Distribution::point(7.0));
      file.uncertainty = spec;
    }
    const std::string text = serialize_project(file);
    const ProjectFile back = parse(text);
    REQUIRE(back == file);
    CHECK(serialize_project(back) == text);
  }
}

TEST_CASE("calibration files merge over a base spec") {
  UncertaintySpec base;
  base.samples = 50;
  base.seed = 9;
  base.parameters.emplace("costs.opex", Distribution::point(1.0));
  const auto merged = parse_calibration(
      R"({"seed": 4, "parameters": {"costs.capex": {"kind": "triangular", "low": 0.8, "mode": 1,
                                                    "high": 1.5, "scale": "relative"}}})",
      base);
  CHECK(merged.samples == 50);
  CHECK(merged.seed == 4);
  CHECK(merged.parameters.size() == 2);
  CHECK(merged.parameters.at("costs.capex").relative());
  CHECK_THROWS_AS(parse_calibration(R"({"parameters": {"costs.capex": {"kind": "cauchy"}}})"),
                  ConfigError);
  CHECK_THROWS_AS(parse_calibration(
                      R"({"parameters": {"costs.capex": {"kind": "uniform", "low": 2, "high": 1}}})"),
                  Error);

  const auto egs = load_calibration(testpaths::data("calibration/egs.json"));
  CHECK(egs.parameters.count("plant.production_temperature") == 1);
}

TEST_CASE("range files") {
  const auto r = parse_ranges(R"({"ranges": {"assumptions.discount_rate": [0.04, 0.08],
                                              "costs.capex": {"low": 0.85, "high": 1.15,
                                                              "scale": "relative"}}})");
  CHECK(r.at("assumptions.discount_rate") == ParameterRange{0.04, 0.08, false});
  CHECK(r.at("costs.capex") == ParameterRange{0.85, 1.15, true});
  CHECK_THROWS_AS(parse_ranges(R"({"ranges": {"costs.capex": [1]}})"), Error);
  CHECK(load_ranges(testpaths::data("ranges/egs_default.json")).size() == 3);
}

TEST_CASE("missing file") {
  Diagnostics diag;
  CHECK_THROWS_AS(load_project("/nonexistent/project.json", diag), Error);
}
