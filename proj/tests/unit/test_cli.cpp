#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "geoassess/project_io.hpp"
#include "paths.hpp"

using namespace geoassess;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& rel) { return testpaths::data(rel).string(); }

std::string write_temp(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / ("geoassess_test_" + name);
  std::ofstream(path) << text;
  return path.string();
}

}  // namespace

TEST_CASE("usage errors") {
  CHECK(run({}).code == cli::kUsageError);
  CHECK(run({"frobnicate"}).code == cli::kUsageError);
  CHECK(run({"assess"}).code == cli::kUsageError);
  CHECK(run({"tornado", "-f", data("examples/egs_baseline.json"), "--metric", "irr"}).code ==
        cli::kUsageError);
  CHECK(run({"--help"}).code == cli::kSuccess);
}

TEST_CASE("assess") {
  const auto r = run({"assess", "-f", data("examples/egs_baseline.json")});
  CHECK(r.code == cli::kSuccess);
  CHECK(r.out.find("144.99 USD/MWh") != std::string::npos);
  const auto csv = run({"assess", "-f", data("examples/egs_baseline.json"), "--format", "csv"});
  CHECK(csv.out.rfind("quantity,value,unit\n", 0) == 0);
}

TEST_CASE("configuration errors exit with 2") {
  const auto empty = write_temp("empty.json", "");
  auto r = run({"assess", "-f", empty});
  CHECK(r.code == cli::kConfigError);
  CHECK(r.err.find("error:") != std::string::npos);

  const auto bad_cf = write_temp(
      "cf.json", R"({"plant": {"pathway": "egs", "rated_capacity": 5, "capacity_factor": 1.4}, "costs": {"capex": 1, "opex": 1}})");
  r = run({"assess", "-f", bad_cf});
  CHECK(r.code == cli::kConfigError);
  CHECK(r.err.find("plant.capacity_factor") != std::string::npos);

  CHECK(run({"assess", "-f", "/nonexistent.json"}).code == cli::kConfigError);
  CHECK(run({"compare", "--presets", "hydro"}).code == cli::kConfigError);
  CHECK(run({"presets", "--dump", "egs", "extreme"}).code == cli::kConfigError);
}

TEST_CASE("undefined levelized cost exits with 3") {
  const auto dark = write_temp(
      "dark.json",
      R"({"plant": {"pathway": "egs", "rated_capacity": 5, "capacity_factor": 0.0}, "costs": {"capex": 1e6, "opex": 1}})");
  const auto r = run({"assess", "-f", dark});
  CHECK(r.code == cli::kMetricUndefined);
}

TEST_CASE("compare defaults to the six presets") {
  const auto r = run({"compare", "--format", "csv"});
  REQUIRE(r.code == cli::kSuccess);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 7);

  const auto mixed =
      run({"compare", "-f", data("examples/egs_5mw_reference.json"), "--format", "csv"});
  CHECK(std::count(mixed.out.begin(), mixed.out.end(), '\n') == 2);
  const auto with_presets = run({"compare", "-f", data("examples/egs_5mw_reference.json"),
                                 "--presets", "gshp", "--levels", "full", "--format", "csv"});
  CHECK(std::count(with_presets.out.begin(), with_presets.out.end(), '\n') == 3);
}

TEST_CASE("montecarlo matches the golden csv") {
  const auto r = run({"montecarlo", "-f", data("examples/egs_baseline.json"), "--calibration",
                      data("calibration/egs.json"), "--samples", "2000", "--seed", "42",
                      "--format", "csv"});
  REQUIRE(r.code == cli::kSuccess);
  const std::string golden =
      read_text_file(std::filesystem::path(GEOASSESS_GOLDEN_DIR) / "montecarlo_egs_baseline.csv");
  CHECK(r.out == golden);

  const auto parallel = run({"montecarlo", "-f", data("examples/egs_baseline.json"),
                             "--calibration", data("calibration/egs.json"), "--samples", "2000",
                             "--seed", "42", "--workers", "5", "--format", "csv"});
  CHECK(parallel.out == golden);
}

TEST_CASE("tornado and emissions") {
  const auto t = run({"tornado", "-f", data("examples/egs_baseline.json"), "--metric", "lcoe",
                      "--ranges", data("ranges/egs_default.json"), "--format", "csv"});
  CHECK(t.code == cli::kSuccess);
  CHECK(t.out.find("\nplant.production_temperature,") != std::string::npos);

  const auto e = run({"emissions", "-f", data("examples/egs_5mw_reference.json"), "--format", "csv"});
  CHECK(e.code == cli::kSuccess);
  CHECK(e.out.find("17625.12") != std::string::npos);
}

TEST_CASE("presets") {
  const auto list = run({"presets", "--list"});
  CHECK(list.code == cli::kSuccess);
  CHECK(std::count(list.out.begin(), list.out.end(), '\n') == 9);

  const auto dump = run({"presets", "--dump", "gshp", "full"});
  REQUIRE(dump.code == cli::kSuccess);
  Diagnostics diag;
  CHECK(parse_project(dump.out, diag).config == preset(Pathway::GSHP, AutomationLevel::Full));
}
