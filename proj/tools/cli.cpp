#include "cli.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "geoassess/project_io.hpp"
#include "geoassess/report.hpp"
#include "geoassess/scenarios.hpp"
#include "geoassess/uncertainty.hpp"

namespace geoassess::cli {

namespace {

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

void print_warnings(Diagnostics& diag, std::ostream& err) {
  for (const auto& w : diag.warnings) err << "warning: " << w << "\n";
  diag.warnings.clear();
}

RenderOptions render_options(const std::string& format, const Environment& env) {
  return RenderOptions{parse_format(format).value_or(ReportFormat::Table), env.color};
}

std::vector<ProjectConfig> select_presets(const std::string& presets, const std::string& levels) {
  std::vector<Pathway> pathways;
  if (presets == "all") {
    pathways = {Pathway::EGS, Pathway::WellRepurposing, Pathway::GSHP};
  } else {
    for (const auto& id : split_list(presets)) {
      const auto p = parse_pathway(id);
      if (!p) {
        throw ConfigError("--presets",
                          fmt::format("unknown pathway '{}' (expected egs, wells, gshp or all)", id));
      }
      pathways.push_back(*p);
    }
  }
  std::vector<AutomationLevel> lvls;
  for (const auto& id : split_list(levels)) {
    const auto l = parse_level(id);
    if (!l) {
      throw ConfigError("--levels",
                        fmt::format("unknown level '{}' (expected baseline, moderate or full)", id));
    }
    lvls.push_back(*l);
  }
  std::vector<ProjectConfig> configs;
  for (Pathway p : pathways) {
    for (AutomationLevel l : lvls) configs.push_back(preset(p, l));
  }
  return configs;
}

const auto kFormats = CLI::IsMember({"table", "csv", "structured"});

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const Environment& env) {
  CLI::App app{"Techno-economic and emissions assessment of geothermal projects", "geoassess"};
  app.require_subcommand(1);

  std::string file;
  std::string format = "table";

  auto* assess = app.add_subcommand("assess", "LCOE, NPV, IRR, payback and avoided CO2 of a project");
  assess->add_option("-f,--file", file, "Project file")->required();
  assess->add_option("--format", format, "table, csv or structured")->check(kFormats);

  std::vector<std::string> compare_files;
  std::string presets_arg = "all";
  std::string levels_arg = "baseline,full";
  auto* compare = app.add_subcommand("compare", "Side-by-side metrics for projects and presets");
  compare->add_option("-f,--file", compare_files, "Project file (repeatable)");
  auto* presets_opt =
      compare->add_option("--presets", presets_arg, "all, or a list from egs,wells,gshp");
  compare->add_option("--levels", levels_arg, "List from baseline,moderate,full");
  compare->add_option("--format", format, "table, csv or structured")->check(kFormats);

  std::optional<std::size_t> samples;
  std::optional<std::uint64_t> seed;
  std::string calibration;
  unsigned workers = 1;
  auto* mc = app.add_subcommand("montecarlo", "Monte Carlo distribution of LCOE and NPV");
  mc->add_option("-f,--file", file, "Project file")->required();
  mc->add_option("--samples", samples, "Number of samples")->check(CLI::PositiveNumber);
  mc->add_option("--seed", seed, "64-bit seed");
  mc->add_option("--calibration", calibration, "Distribution file")->check(CLI::ExistingFile);
  mc->add_option("--workers", workers, "Worker threads (0 = all cores)");
  mc->add_option("--format", format, "table, csv or structured")->check(kFormats);

  std::string metric_arg;
  std::string ranges_file;
  auto* tor = app.add_subcommand("tornado", "One-at-a-time sensitivity ranking");
  tor->add_option("-f,--file", file, "Project file")->required();
  tor->add_option("--metric", metric_arg, "lcoe or npv")
      ->required()
      ->check(CLI::IsMember({"lcoe", "npv"}));
  tor->add_option("--ranges", ranges_file, "Ranges file")->check(CLI::ExistingFile);
  tor->add_option("--format", format, "table, csv or structured")->check(kFormats);

  auto* emi = app.add_subcommand("emissions", "Avoided CO2 against the grid emission factor");
  emi->add_option("-f,--file", file, "Project file")->required();
  emi->add_option("--format", format, "table, csv or structured")->check(kFormats);

  bool list = false;
  std::vector<std::string> dump;
  auto* pre = app.add_subcommand("presets", "List presets or print one as a project file");
  auto* list_opt = pre->add_flag("--list", list, "List preset identifiers");
  pre->add_option("--dump", dump, "Print <pathway> <level> as a project file")
      ->expected(2)
      ->excludes(list_opt);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageError;
  }

  const RenderOptions options = render_options(format, env);
  Diagnostics diag;
  try {
    if (assess->parsed()) {
      const ProjectConfig config = load_project(file, diag);
      print_warnings(diag, err);
      const Evaluation ev = evaluate(config);
      out << render_report(make_assessment(config, ev), options);
      if (!ev.metrics.lcoe) {
        err << "error: levelized cost undefined: discounted energy is zero\n";
        return kMetricUndefined;
      }
      return kSuccess;
    }

    if (compare->parsed()) {
      std::vector<ProjectConfig> configs;
      for (const auto& f : compare_files) {
        configs.push_back(load_project(f, diag));
      }
      if (compare_files.empty() || presets_opt->count() > 0) {
        auto more = select_presets(presets_arg, levels_arg);
        configs.insert(configs.end(), more.begin(), more.end());
      }
      print_warnings(diag, err);
      out << render_report(compare_pathways(configs), options);
      return kSuccess;
    }

    if (mc->parsed()) {
      const ProjectFile project = load_project_file(file, diag);
      print_warnings(diag, err);
      UncertaintySpec spec = project.uncertainty.value_or(default_uncertainty(project.config));
      if (!calibration.empty()) spec = load_calibration(calibration, spec);
      if (samples) spec.samples = *samples;
      if (seed) spec.seed = *seed;
      const MonteCarloSummary summary =
          run_monte_carlo(project.config, spec, MonteCarloOptions{workers});
      out << render_report(summary, options);
      if (summary.n_failed > 0) err << "warning: " << summary.first_failure << "\n";
      return kSuccess;
    }

    if (tor->parsed()) {
      const ProjectConfig config = load_project(file, diag);
      print_warnings(diag, err);
      const Metric metric = *parse_metric(metric_arg);
      const auto ranges =
          ranges_file.empty() ? default_tornado_ranges(config) : load_ranges(ranges_file);
      const auto entries = tornado(config, ranges, metric);
      out << render_report(entries, metric, options);
      const bool all_flagged = !entries.empty() && std::all_of(entries.begin(), entries.end(),
                                                               [](const auto& e) { return e.flagged; });
      return all_flagged ? kMetricUndefined : kSuccess;
    }

    if (emi->parsed()) {
      const ProjectConfig config = load_project(file, diag);
      print_warnings(diag, err);
      out << render_report(evaluate(config).emissions, options);
      return kSuccess;
    }

    if (pre->parsed()) {
      if (!dump.empty()) {
        out << serialize_project(preset(dump[0], dump[1]));
        return kSuccess;
      }
      for (Pathway p : {Pathway::EGS, Pathway::WellRepurposing, Pathway::GSHP}) {
        for (AutomationLevel l :
             {AutomationLevel::Baseline, AutomationLevel::Moderate, AutomationLevel::Full}) {
          out << fmt::format("{} {}\t{}, {}\n", pathway_id(p), level_id(l), pathway_label(p),
                             level_label(l));
        }
      }
      return kSuccess;
    }
  } catch (const UndefinedMetricError& e) {
    print_warnings(diag, err);
    err << "error: " << e.what() << "\n";
    return kMetricUndefined;
  } catch (const Error& e) {
    print_warnings(diag, err);
    err << "error: " << e.what() << "\n";
    return kConfigError;
  }
  return kUsageError;
}

}  // namespace geoassess::cli
