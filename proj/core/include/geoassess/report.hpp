#pragma once

// Report rendering: aligned text tables, CSV and structured JSON. CSV and JSON
// output is byte-stable for identical inputs. Undefined metrics render as empty
// CSV cells, JSON nulls, or "—" in tables.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "geoassess/emissions.hpp"
#include "geoassess/finance.hpp"
#include "geoassess/scenarios.hpp"
#include "geoassess/uncertainty.hpp"

namespace geoassess {

enum class ReportFormat { Table, Csv, Structured };

std::optional<ReportFormat> parse_format(std::string_view id) noexcept;

struct RenderOptions {
  ReportFormat format = ReportFormat::Table;
  bool color = false;  // ANSI bold headers in table output
};

/// Deterministic evaluation of one project, as printed by `assess`.
struct Assessment {
  std::string name;
  Pathway pathway = Pathway::EGS;
  AutomationLevel level = AutomationLevel::Baseline;
  double annual_energy = 0.0;
  MetricsReport metrics;
  EmissionsReport emissions;
};

Assessment make_assessment(const ProjectConfig& config, const Evaluation& evaluation);

std::string render_report(const Assessment& assessment, const RenderOptions& options);
std::string render_report(const MetricsReport& metrics, const RenderOptions& options);
std::string render_report(const EmissionsReport& emissions, const RenderOptions& options);
std::string render_report(const ComparisonTable& table, const RenderOptions& options);
std::string render_report(const MonteCarloSummary& summary, const RenderOptions& options);
std::string render_report(const std::vector<TornadoEntry>& entries, Metric metric,
                          const RenderOptions& options);

/// Whole-USD text with thousands separators, e.g. "-1,234,567".
std::string format_whole(double value);

}  // namespace geoassess
