#include <doctest.h>

#include <algorithm>

#include <json.hpp>

#include "geoassess/report.hpp"

using namespace geoassess;

namespace {

const RenderOptions kTable{ReportFormat::Table, false};
const RenderOptions kCsv{ReportFormat::Csv, false};
const RenderOptions kJson{ReportFormat::Structured, false};

ComparisonTable six_rows() {
  std::vector<ProjectConfig> configs;
  for (Pathway p : {Pathway::EGS, Pathway::WellRepurposing, Pathway::GSHP}) {
    configs.push_back(preset(p, AutomationLevel::Baseline));
    configs.push_back(preset(p, AutomationLevel::Full));
  }
  return compare_pathways(configs);
}

std::size_t count_lines(const std::string& s) {
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

}  // namespace

TEST_CASE("thousands separators") {
  CHECK(format_whole(0.0) == "0");
  CHECK(format_whole(999.4) == "999");
  CHECK(format_whole(1234567.0) == "1,234,567");
  CHECK(format_whole(-1234567.0) == "-1,234,567");
  CHECK(format_whole(21500000.0) == "21,500,000");
}

TEST_CASE("comparison table") {
  const std::string text = render_report(six_rows(), kTable);
  CHECK(text.find("LCOE (USD/MWh)") != std::string::npos);
  CHECK(text.find("21,500,000") != std::string::npos);
  CHECK(text.find("(LCOC)") != std::string::npos);
  CHECK(text.find("Levelized Cost of Cooling") != std::string::npos);
  CHECK(text.find("\x1b[") == std::string::npos);

  const std::string colored = render_report(six_rows(), RenderOptions{ReportFormat::Table, true});
  CHECK(colored.find("\x1b[1m") != std::string::npos);
}

TEST_CASE("empty comparison renders only the header") {
  const ComparisonTable empty;
  const std::string csv = render_report(empty, kCsv);
  CHECK(count_lines(csv) == 1);
  CHECK(csv.find("levelized_cost") != std::string::npos);
  const std::string table = render_report(empty, kTable);
  CHECK(table.find("LCOE (USD/MWh)") != std::string::npos);
  CHECK(table.find("LCOC") == std::string::npos);
}

TEST_CASE("undefined metrics") {
  ProjectConfig cfg = preset(Pathway::EGS, AutomationLevel::Baseline);
  cfg.assumptions.energy_tariff.reset();
  const auto table = compare_pathways(std::vector<ProjectConfig>{cfg});
  CHECK(render_report(table, kTable).find("—") != std::string::npos);
  const auto json = nlohmann::json::parse(render_report(table, kJson));
  CHECK(json.dump().find("null") != std::string::npos);
  const std::string csv = render_report(table, kCsv);
  CHECK(csv.find(",,") != std::string::npos);
}

TEST_CASE("structured output parses") {
  const auto cfg = preset(Pathway::WellRepurposing, AutomationLevel::Full);
  const auto ev = evaluate(cfg);
  const auto a = make_assessment(cfg, ev);
  const auto json = nlohmann::json::parse(render_report(a, kJson));
  CHECK(json.is_object());
  CHECK_FALSE(render_report(ev.metrics, kCsv).empty());
  CHECK(render_report(ev.emissions, kCsv).rfind("quantity,value,unit\n", 0) == 0);
}

TEST_CASE("monte carlo csv layout is stable") {
  const auto cfg = preset(Pathway::EGS, AutomationLevel::Baseline);
  auto spec = default_uncertainty(cfg);
  spec.samples = 300;
  spec.seed = 8;
  const auto a = render_report(run_monte_carlo(cfg, spec), kCsv);
  const auto b = render_report(run_monte_carlo(cfg, spec, MonteCarloOptions{3}), kCsv);
  CHECK(a == b);
  CHECK(a.rfind("metric,mean,sd,p5,p50,p95,prob_npv_positive,n_failed\nlcoe,", 0) == 0);
  CHECK(count_lines(a) == 3);
}

TEST_CASE("tornado csv") {
  const auto cfg = preset(Pathway::EGS, AutomationLevel::Baseline);
  const auto entries = tornado(cfg, default_tornado_ranges(cfg), Metric::Lcoe);
  const auto csv = render_report(entries, Metric::Lcoe, kCsv);
  CHECK(csv.rfind("parameter,low_value,high_value,output_low,output_high,swing,flagged\n", 0) == 0);
  CHECK(count_lines(csv) == 4);
}

TEST_CASE("format identifiers") {
  CHECK(parse_format("table") == ReportFormat::Table);
  CHECK(parse_format("csv") == ReportFormat::Csv);
  CHECK(parse_format("structured") == ReportFormat::Structured);
  CHECK_FALSE(parse_format("xml"));
}
