#include "geoassess/report.hpp"

#include <cmath>

#include <fmt/format.h>
#include <json.hpp>

namespace geoassess {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr std::string_view kUndefined = "—";

// Columns counted in code points; every glyph used here is single-width.
std::size_t display_width(std::string_view s) {
  std::size_t n = 0;
  for (unsigned char c : s) n += (c & 0xC0) != 0x80;
  return n;
}

std::string pad(std::string_view s, std::size_t width, bool right) {
  const std::size_t w = display_width(s);
  const std::string fill(width > w ? width - w : 0, ' ');
  return right ? fill + std::string(s) : std::string(s) + fill;
}

class TextTable {
 public:
  TextTable(std::vector<std::string> headers, std::size_t text_columns)
      : headers_(std::move(headers)), text_columns_(text_columns) {}

  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

  std::string render(bool color) const {
    std::vector<std::size_t> widths(headers_.size());
    for (std::size_t c = 0; c < headers_.size(); ++c) {
      widths[c] = display_width(headers_[c]);
      for (const auto& row : rows_) widths[c] = std::max(widths[c], display_width(row[c]));
    }
    const auto line = [&](const std::vector<std::string>& cells) {
      std::string out;
      for (std::size_t c = 0; c < cells.size(); ++c) {
        if (c) out += "  ";
        out += pad(cells[c], widths[c], c >= text_columns_);
      }
      while (!out.empty() && out.back() == ' ') out.pop_back();
      return out + "\n";
    };
    std::string out;
    const std::string header = line(headers_);
    if (color) {
      out += "\x1b[1m" + header.substr(0, header.size() - 1) + "\x1b[0m\n";
    } else {
      out += header;
    }
    std::size_t total = 0;
    for (std::size_t c = 0; c < widths.size(); ++c) total += widths[c] + (c ? 2 : 0);
    out += std::string(total, '-') + "\n";
    for (const auto& row : rows_) out += line(row);
    return out;
  }

 private:
  std::vector<std::string> headers_;
  std::size_t text_columns_;
  std::vector<std::vector<std::string>> rows_;
};

std::string csv_number(double v) { return fmt::format("{:.10g}", v); }

std::string csv_cell(const std::optional<double>& v) { return v ? csv_number(*v) : std::string(); }

std::string csv_escape(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

ordered_json json_value(const std::optional<double>& v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

std::string fixed(const std::optional<double>& v, int decimals) {
  return v ? fmt::format("{:.{}f}", *v, decimals) : std::string(kUndefined);
}

std::string whole(const std::optional<double>& v) {
  return v ? format_whole(*v) : std::string(kUndefined);
}

std::string percent(const std::optional<double>& v) {
  return v ? fmt::format("{:.2f} %", *v * 100.0) : std::string(kUndefined);
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

// Key/value rows shared by the assessment, metrics and emissions reports.
struct Quantity {
  std::string key;
  std::string label;
  std::optional<double> value;
  std::string unit;
  std::string text;  // table rendering
};

std::vector<Quantity> metric_quantities(const MetricsReport& m, bool cooling) {
  const std::string cost_label = cooling ? "LCOC" : "LCOE";
  return {
      {"lcoe", cost_label, m.lcoe, "USD/MWh", fixed(m.lcoe, 2) + " USD/MWh"},
      {"npv", "NPV", m.npv, "USD", whole(m.npv) + " USD"},
      {"irr", m.irr_ambiguous ? "IRR (multiple roots; smallest)" : "IRR", m.irr, "fraction",
       percent(m.irr)},
      {"payback_simple", "Payback (simple)", m.payback_simple, "years",
       fixed(m.payback_simple, 1) + " years"},
      {"payback_cumulative", "Payback (cumulative)", m.payback_cumulative, "years",
       fixed(m.payback_cumulative, 1) + " years"},
  };
}

std::vector<Quantity> emission_quantities(const EmissionsReport& e) {
  return {
      {"annual_displaced_mwh", "Grid electricity displaced", e.annual_displaced_mwh, "MWh/yr",
       whole(e.annual_displaced_mwh) + " MWh/yr"},
      {"avoided_annual", "Avoided CO₂", e.avoided_annual, "t/yr",
       whole(e.avoided_annual) + " t/yr"},
      {"avoided_lifetime_net", fmt::format("Avoided CO₂ over {} years (net)", e.lifetime),
       e.avoided_lifetime_net, "t", whole(e.avoided_lifetime_net) + " t"},
      {"grid_factor", "Grid emission factor", e.grid_factor, "kg/kWh",
       fmt::format("{} kg CO₂/kWh", e.grid_factor)},
  };
}

std::string quantities_table(const std::vector<Quantity>& qs, const RenderOptions& options) {
  TextTable t({"Quantity", "Value"}, 1);
  for (const auto& q : qs) t.add({q.label, q.text});
  return t.render(options.color);
}

std::string quantities_csv(const std::vector<Quantity>& qs) {
  std::string out = "quantity,value,unit\n";
  for (const auto& q : qs) out += fmt::format("{},{},{}\n", q.key, csv_cell(q.value), q.unit);
  return out;
}

ordered_json quantities_json(const std::vector<Quantity>& qs) {
  ordered_json j = ordered_json::object();
  for (const auto& q : qs) j[q.key] = json_value(q.value);
  return j;
}

ordered_json emissions_json(const EmissionsReport& e) {
  ordered_json j = quantities_json(emission_quantities(e));
  j["lifetime"] = e.lifetime;
  j["assumptions"] = e.assumptions;
  return j;
}

ordered_json metrics_json(const MetricsReport& m) {
  ordered_json j = quantities_json(metric_quantities(m, false));
  j["irr_ambiguous"] = m.irr_ambiguous;
  return j;
}

std::string assumption_notes(const EmissionsReport& e) {
  std::string out;
  for (const auto& a : e.assumptions) out += "  assumption: " + a + "\n";
  return out;
}

ordered_json summary_json(const MetricSummary& s) {
  ordered_json j;
  j["count"] = s.count;
  j["mean"] = s.mean;
  j["sd"] = s.sd;
  j["p5"] = s.p5;
  j["p50"] = s.p50;
  j["p95"] = s.p95;
  j["histogram"] = {{"lower", s.histogram.lower},
                    {"upper", s.histogram.upper},
                    {"counts", s.histogram.counts}};
  return j;
}

}  // namespace

std::optional<ReportFormat> parse_format(std::string_view id) noexcept {
  if (id == "table") return ReportFormat::Table;
  if (id == "csv") return ReportFormat::Csv;
  if (id == "structured") return ReportFormat::Structured;
  return std::nullopt;
}

std::string format_whole(double value) {
  const double rounded = std::round(value);
  const bool negative = rounded < 0.0;
  std::string digits = fmt::format("{:.0f}", std::abs(rounded));
  std::string out;
  const std::size_t n = digits.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (i && (n - i) % 3 == 0) out += ',';
    out += digits[i];
  }
  return negative ? "-" + out : out;
}

Assessment make_assessment(const ProjectConfig& config, const Evaluation& evaluation) {
  return Assessment{config.name,          config.plant.pathway, config.automation.level,
                    evaluation.annual_energy, evaluation.metrics, evaluation.emissions};
}

std::string render_report(const Assessment& a, const RenderOptions& options) {
  const bool cooling = a.pathway == Pathway::GSHP;
  auto qs = metric_quantities(a.metrics, cooling);
  qs.insert(qs.begin(), Quantity{"annual_energy", cooling ? "Cooling delivered" : "Annual energy",
                                 a.annual_energy, "MWh/yr", whole(a.annual_energy) + " MWh/yr"});
  const auto es = emission_quantities(a.emissions);

  switch (options.format) {
    case ReportFormat::Table: {
      std::string out = fmt::format("{} ({}, {})\n\n", a.name, pathway_label(a.pathway),
                                    level_label(a.level));
      auto all = qs;
      all.insert(all.end(), es.begin(), es.end());
      out += quantities_table(all, options);
      out += assumption_notes(a.emissions);
      return out;
    }
    case ReportFormat::Csv: {
      auto all = qs;
      all.insert(all.end(), es.begin(), es.end());
      return quantities_csv(all);
    }
    case ReportFormat::Structured: {
      ordered_json j;
      j["name"] = a.name;
      j["pathway"] = pathway_id(a.pathway);
      j["level"] = level_id(a.level);
      j["annual_energy"] = a.annual_energy;
      j["metrics"] = metrics_json(a.metrics);
      j["emissions"] = emissions_json(a.emissions);
      return dump(j);
    }
  }
  return {};
}

std::string render_report(const MetricsReport& metrics, const RenderOptions& options) {
  const auto qs = metric_quantities(metrics, false);
  switch (options.format) {
    case ReportFormat::Table: return quantities_table(qs, options);
    case ReportFormat::Csv: return quantities_csv(qs);
    case ReportFormat::Structured: return dump(metrics_json(metrics));
  }
  return {};
}

std::string render_report(const EmissionsReport& emissions, const RenderOptions& options) {
  const auto qs = emission_quantities(emissions);
  switch (options.format) {
    case ReportFormat::Table: return quantities_table(qs, options) + assumption_notes(emissions);
    case ReportFormat::Csv: return quantities_csv(qs);
    case ReportFormat::Structured: return dump(emissions_json(emissions));
  }
  return {};
}

std::string render_report(const ComparisonTable& table, const RenderOptions& options) {
  switch (options.format) {
    case ReportFormat::Table: {
      TextTable t({"Pathway", "Scenario", "CAPEX (USD)", "OPEX (USD/year)", "LCOE (USD/MWh)",
                   "Payback (years)", "NPV (USD)", "Avoided CO₂ (t/yr)"},
                  2);
      bool any_cooling = false;
      std::string errors;
      for (const auto& row : table) {
        std::string cost = fixed(row.lcoe, 1);
        if (row.is_cooling() && row.lcoe) {
          cost += " (LCOC)";
          any_cooling = true;
        }
        t.add({std::string(pathway_label(row.pathway)), std::string(level_label(row.level)),
               whole(row.capex), whole(row.opex), cost, fixed(row.payback, 1), whole(row.npv),
               whole(row.avoided_co2)});
        if (!row.error.empty()) errors += fmt::format("{}: {}\n", row.name, row.error);
      }
      std::string out = t.render(options.color);
      if (any_cooling) {
        out += "\n(LCOC) Levelized Cost of Cooling: USD per MWh of cooling delivered.\n";
      }
      if (!errors.empty()) out += "\n" + errors;
      return out;
    }
    case ReportFormat::Csv: {
      std::string out = "name,pathway,scenario,capex,opex,cost_metric,levelized_cost,payback,npv,"
                        "avoided_co2\n";
      for (const auto& row : table) {
        out += fmt::format("{},{},{},{},{},{},{},{},{},{}\n", csv_escape(row.name),
                           pathway_id(row.pathway), level_id(row.level), csv_cell(row.capex),
                           csv_cell(row.opex), row.is_cooling() ? "LCOC" : "LCOE",
                           csv_cell(row.lcoe), csv_cell(row.payback), csv_cell(row.npv),
                           csv_cell(row.avoided_co2));
      }
      return out;
    }
    case ReportFormat::Structured: {
      ordered_json rows = ordered_json::array();
      for (const auto& row : table) {
        ordered_json j;
        j["name"] = row.name;
        j["pathway"] = pathway_id(row.pathway);
        j["scenario"] = level_id(row.level);
        j["capex"] = json_value(row.capex);
        j["opex"] = json_value(row.opex);
        j["cost_metric"] = row.is_cooling() ? "LCOC" : "LCOE";
        j["levelized_cost"] = json_value(row.lcoe);
        j["payback"] = json_value(row.payback);
        j["npv"] = json_value(row.npv);
        j["avoided_co2"] = json_value(row.avoided_co2);
        if (!row.error.empty()) j["error"] = row.error;
        rows.push_back(j);
      }
      return dump(ordered_json{{"rows", rows}});
    }
  }
  return {};
}

std::string render_report(const MonteCarloSummary& s, const RenderOptions& options) {
  switch (options.format) {
    case ReportFormat::Table: {
      std::string out = fmt::format("Monte Carlo: {} samples, seed {}, {} failed\n\n", s.samples,
                                    s.seed, s.n_failed);
      TextTable t({"Metric", "Mean", "SD", "P5", "P50", "P95"}, 1);
      if (s.lcoe) {
        const auto& m = *s.lcoe;
        t.add({"LCOE (USD/MWh)", fixed(m.mean, 2), fixed(m.sd, 2), fixed(m.p5, 2),
               fixed(m.p50, 2), fixed(m.p95, 2)});
      }
      if (s.npv) {
        const auto& m = *s.npv;
        t.add({"NPV (USD)", whole(m.mean), whole(m.sd), whole(m.p5), whole(m.p50), whole(m.p95)});
      }
      out += t.render(options.color);
      out += fmt::format("\nP(NPV > 0) = {}\n",
                         s.prob_npv_positive ? fmt::format("{:.4f}", *s.prob_npv_positive)
                                             : std::string(kUndefined));
      if (!s.first_failure.empty()) out += "first failure: " + s.first_failure + "\n";
      return out;
    }
    case ReportFormat::Csv: {
      std::string out = "metric,mean,sd,p5,p50,p95,prob_npv_positive,n_failed\n";
      const auto row = [&](std::string_view name, const std::optional<MetricSummary>& m,
                           const std::optional<double>& prob) {
        if (!m) return fmt::format("{},,,,,,{},{}\n", name, csv_cell(prob), s.n_failed);
        return fmt::format("{},{},{},{},{},{},{},{}\n", name, csv_number(m->mean),
                           csv_number(m->sd), csv_number(m->p5), csv_number(m->p50),
                           csv_number(m->p95), csv_cell(prob), s.n_failed);
      };
      out += row("lcoe", s.lcoe, std::nullopt);
      out += row("npv", s.npv, s.prob_npv_positive);
      return out;
    }
    case ReportFormat::Structured: {
      ordered_json j;
      j["samples"] = s.samples;
      j["seed"] = s.seed;
      j["n_failed"] = s.n_failed;
      j["prob_npv_positive"] = json_value(s.prob_npv_positive);
      j["lcoe"] = s.lcoe ? summary_json(*s.lcoe) : ordered_json(nullptr);
      j["npv"] = s.npv ? summary_json(*s.npv) : ordered_json(nullptr);
      if (!s.first_failure.empty()) j["first_failure"] = s.first_failure;
      return dump(j);
    }
  }
  return {};
}

std::string render_report(const std::vector<TornadoEntry>& entries, Metric metric,
                          const RenderOptions& options) {
  const bool cost = metric == Metric::Lcoe;
  const auto out_cell = [&](const std::optional<double>& v) {
    return cost ? fixed(v, 2) : whole(v);
  };
  switch (options.format) {
    case ReportFormat::Table: {
      TextTable t({"Parameter", "Low", "High",
                   cost ? "LCOE @ low (USD/MWh)" : "NPV @ low (USD)",
                   cost ? "LCOE @ high (USD/MWh)" : "NPV @ high (USD)", "Swing"},
                  1);
      std::string notes;
      for (const auto& e : entries) {
        t.add({e.parameter, fmt::format("{:.6g}", e.low_value), fmt::format("{:.6g}", e.high_value),
               out_cell(e.output_low), out_cell(e.output_high),
               e.flagged ? std::string(kUndefined) : out_cell(e.swing)});
        if (e.flagged) notes += fmt::format("{}: {}\n", e.parameter, e.note);
      }
      std::string out = t.render(options.color);
      if (!notes.empty()) out += "\n" + notes;
      return out;
    }
    case ReportFormat::Csv: {
      std::string out = "parameter,low_value,high_value,output_low,output_high,swing,flagged\n";
      for (const auto& e : entries) {
        out += fmt::format("{},{},{},{},{},{},{}\n", e.parameter, csv_number(e.low_value),
                           csv_number(e.high_value), csv_cell(e.output_low),
                           csv_cell(e.output_high), e.flagged ? "" : csv_number(e.swing),
                           e.flagged ? "true" : "false");
      }
      return out;
    }
    case ReportFormat::Structured: {
      ordered_json rows = ordered_json::array();
      for (const auto& e : entries) {
        ordered_json j;
        j["parameter"] = e.parameter;
        j["low_value"] = e.low_value;
        j["high_value"] = e.high_value;
        j["output_low"] = json_value(e.output_low);
        j["output_high"] = json_value(e.output_high);
        j["swing"] = e.flagged ? ordered_json(nullptr) : ordered_json(e.swing);
        j["flagged"] = e.flagged;
        if (!e.note.empty()) j["note"] = e.note;
        rows.push_back(j);
      }
      return dump(ordered_json{{"metric", metric_id(metric)}, {"entries", rows}});
    }
  }
  return {};
}

}  // namespace geoassess
