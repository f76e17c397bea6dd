#include "geoassess/uncertainty.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <thread>

#include <boost/math/distributions/normal.hpp>
#include <fmt/format.h>

namespace geoassess {

// Distribution ------------------------------------------------------------------

Distribution Distribution::point(double value) {
  if (!std::isfinite(value)) throw DomainError("point distribution value must be finite");
  Distribution d;
  d.kind_ = Kind::Point;
  d.params_[0] = value;
  return d;
}

Distribution Distribution::uniform(double low, double high) {
  if (!(low < high)) {
    throw DomainError(fmt::format("uniform distribution needs low < high (got {}, {})", low, high));
  }
  Distribution d;
  d.kind_ = Kind::Uniform;
  d.params_[0] = low;
  d.params_[1] = high;
  return d;
}

Distribution Distribution::triangular(double low, double mode, double high) {
  if (!(low <= mode && mode <= high)) {
    throw DomainError(fmt::format(
        "triangular distribution needs low <= mode <= high (got {}, {}, {})", low, mode, high));
  }
  Distribution d;
  d.kind_ = Kind::Triangular;
  d.params_[0] = low;
  d.params_[1] = mode;
  d.params_[2] = high;
  return d;
}

Distribution Distribution::normal(double mean, double sd, std::optional<double> low,
                                  std::optional<double> high) {
  if (!(sd > 0.0)) {
    throw DomainError(fmt::format("normal distribution needs sd > 0 (got {})", sd));
  }
  if (low && high && !(*low < *high)) {
    throw DomainError(
        fmt::format("truncated normal needs low < high (got {}, {})", *low, *high));
  }
  Distribution d;
  d.kind_ = Kind::Normal;
  d.params_[0] = mean;
  d.params_[1] = sd;
  d.lower_ = low;
  d.upper_ = high;
  return d;
}

Distribution Distribution::as_relative() const {
  Distribution d = *this;
  d.relative_ = true;
  return d;
}

double Distribution::sample(double u) const {
  switch (kind_) {
    case Kind::Point:
      return params_[0];
    case Kind::Uniform:
      return params_[0] + u * (params_[1] - params_[0]);
    case Kind::Triangular: {
      const double lo = params_[0];
      const double mode = params_[1];
      const double hi = params_[2];
      const double width = hi - lo;
      if (width == 0.0) return lo;
      const double split = (mode - lo) / width;
      if (u < split) return lo + std::sqrt(u * width * (mode - lo));
      return hi - std::sqrt((1.0 - u) * width * (hi - mode));
    }
    case Kind::Normal: {
      const boost::math::normal_distribution<double> n(params_[0], params_[1]);
      const double f_lo = lower_ ? boost::math::cdf(n, *lower_) : 0.0;
      const double f_hi = upper_ ? boost::math::cdf(n, *upper_) : 1.0;
      double p = f_lo + u * (f_hi - f_lo);
      constexpr double tiny = std::numeric_limits<double>::min();
      p = std::clamp(p, tiny, std::nextafter(1.0, 0.0));
      double x = boost::math::quantile(n, p);
      if (lower_) x = std::max(x, *lower_);
      if (upper_) x = std::min(x, *upper_);
      return x;
    }
  }
  return params_[0];
}

std::string_view kind_id(Distribution::Kind kind) noexcept {
  switch (kind) {
    case Distribution::Kind::Point: return "point";
    case Distribution::Kind::Uniform: return "uniform";
    case Distribution::Kind::Triangular: return "triangular";
    case Distribution::Kind::Normal: return "normal";
  }
  return "point";
}

// Parameter paths -------------------------------------------------------------------

namespace {

struct ParameterAccess {
  std::string_view path;
  std::function<std::optional<double>(const ProjectConfig&)> get;
  std::function<void(ProjectConfig&, double)> set;
};

template <auto Member1, auto Member2>
ParameterAccess plain(std::string_view path) {
  return {path, [](const ProjectConfig& c) -> std::optional<double> { return c.*Member1.*Member2; },
          [](ProjectConfig& c, double v) { c.*Member1.*Member2 = v; }};
}

template <auto Member1, auto Member2>
ParameterAccess optional_field(std::string_view path) {
  return {path, [](const ProjectConfig& c) { return c.*Member1.*Member2; },
          [](ProjectConfig& c, double v) { c.*Member1.*Member2 = v; }};
}

const std::vector<ParameterAccess>& access_table() {
  static const std::vector<ParameterAccess> table = [] {
    using C = ProjectConfig;
    std::vector<ParameterAccess> t;
    t.push_back(plain<&C::site, &SiteProfile::surface_temperature>("site.surface_temperature"));
    t.push_back(plain<&C::site, &SiteProfile::gradient>("site.gradient"));
    t.push_back(plain<&C::site, &SiteProfile::rock_density>("site.rock_density"));
    t.push_back(plain<&C::site, &SiteProfile::specific_heat>("site.specific_heat"));
    t.push_back(plain<&C::site, &SiteProfile::reservoir_volume>("site.reservoir_volume"));
    t.push_back(plain<&C::site, &SiteProfile::recovery_factor>("site.recovery_factor"));
    t.push_back(plain<&C::plant, &PlantSpec::rated_capacity>("plant.rated_capacity"));
    t.push_back(plain<&C::plant, &PlantSpec::capacity_factor>("plant.capacity_factor"));
    t.push_back(optional_field<&C::plant, &PlantSpec::production_temperature>(
        "plant.production_temperature"));
    t.push_back(optional_field<&C::plant, &PlantSpec::injection_temperature>(
        "plant.injection_temperature"));
    t.push_back(optional_field<&C::plant, &PlantSpec::conversion_efficiency>(
        "plant.conversion_efficiency"));
    t.push_back(optional_field<&C::plant, &PlantSpec::circulation_mass_flow>(
        "plant.circulation_mass_flow"));
    t.push_back(optional_field<&C::plant, &PlantSpec::fluid_specific_heat>(
        "plant.fluid_specific_heat"));
    t.push_back(plain<&C::plant, &PlantSpec::cop>("plant.cop"));
    t.push_back(plain<&C::plant, &PlantSpec::baseline_cop>("plant.baseline_cop"));
    t.push_back(plain<&C::plant, &PlantSpec::utilization>("plant.utilization"));
    t.push_back({"costs.capex",
                 [](const C& c) -> std::optional<double> { return c.costs.total_capex(); },
                 [](C& c, double v) {
                   const double total = c.costs.total_capex();
                   if (total == 0.0 || c.costs.capex_schedule.empty()) {
                     c.costs.capex_schedule = {CapexEntry{0, v}};
                     return;
                   }
                   const double scale = v / total;
                   for (auto& e : c.costs.capex_schedule) e.amount *= scale;
                 }});
    t.push_back(plain<&C::costs, &CostModel::opex>("costs.opex"));
    t.push_back(plain<&C::costs, &CostModel::fuel_cost>("costs.fuel_cost"));
    t.push_back(
        plain<&C::automation, &AutomationScenario::capex_reduction>("automation.capex_reduction"));
    t.push_back(
        plain<&C::automation, &AutomationScenario::opex_reduction>("automation.opex_reduction"));
    t.push_back(
        plain<&C::assumptions, &FinancialAssumptions::discount_rate>("assumptions.discount_rate"));
    t.push_back(plain<&C::assumptions, &FinancialAssumptions::inflation_rate>(
        "assumptions.inflation_rate"));
    t.push_back(optional_field<&C::assumptions, &FinancialAssumptions::energy_tariff>(
        "assumptions.energy_tariff"));
    t.push_back(plain<&C::emissions, &EmissionsContext::grid_factor>("emissions.grid_factor"));
    t.push_back({"annual_energy_override",
                 [](const C& c) { return c.annual_energy_override; },
                 [](C& c, double v) { c.annual_energy_override = v; }});
    return t;
  }();
  return table;
}

const ParameterAccess& find_access(std::string_view path) {
  for (const auto& a : access_table()) {
    if (a.path == path) return a;
  }
  throw ConfigError(std::string(path), "not a numeric project parameter");
}

}  // namespace

std::span<const std::string_view> parameter_paths() noexcept {
  static const std::vector<std::string_view> paths = [] {
    std::vector<std::string_view> out;
    for (const auto& a : access_table()) out.push_back(a.path);
    return out;
  }();
  return paths;
}

bool is_parameter_path(std::string_view path) noexcept {
  const auto paths = parameter_paths();
  return std::find(paths.begin(), paths.end(), path) != paths.end();
}

double get_parameter(const ProjectConfig& config, std::string_view path) {
  const auto value = find_access(path).get(config);
  if (!value) throw ConfigError(std::string(path), "is not set in this project");
  return *value;
}

void set_parameter(ProjectConfig& config, std::string_view path, double value) {
  find_access(path).set(config, value);
}

// Monte Carlo ---------------------------------------------------------------------------

UncertaintySpec default_uncertainty(const ProjectConfig& config) {
  UncertaintySpec spec;
  const auto cost = Distribution::triangular(0.8, 1.0, 1.2).as_relative();
  spec.parameters.emplace("costs.capex", cost);
  spec.parameters.emplace("costs.opex", cost);
  spec.parameters.emplace("assumptions.discount_rate", Distribution::uniform(0.04, 0.08));
  if (config.plant.temperature_coupled && config.plant.production_temperature) {
    const double t = *config.plant.production_temperature;
    spec.parameters.emplace("plant.production_temperature",
                            Distribution::normal(t, 10.0, t - 30.0, t + 30.0));
  }
  return spec;
}

void validate(const UncertaintySpec& spec, const ProjectConfig& config) {
  if (spec.samples < 1) throw ConfigError("uncertainty.samples", "must be >= 1");
  for (const auto& [path, dist] : spec.parameters) {
    if (!is_parameter_path(path)) {
      throw ConfigError("uncertainty.parameters." + path, "not a numeric project parameter");
    }
    if (dist.relative()) {
      get_parameter(config, path);  // relative draws need a base value
    }
  }
}

namespace {

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

double counter_uniform(std::uint64_t seed, std::uint64_t sample, std::uint64_t slot) noexcept {
  const std::uint64_t key = splitmix64(splitmix64(seed) ^ splitmix64(sample + 0x632BE59BD9B4E019ULL));
  const std::uint64_t bits = splitmix64(key + splitmix64(slot ^ 0xD1B54A32D192ED03ULL));
  return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

ProjectConfig draw_sample(const ProjectConfig& config, const UncertaintySpec& spec,
                          std::uint64_t index) {
  ProjectConfig drawn = config;
  std::uint64_t slot = 0;
  for (const auto& [path, dist] : spec.parameters) {
    const double u = counter_uniform(spec.seed, index, slot++);
    const double base = dist.relative() ? get_parameter(config, path) : 0.0;
    set_parameter(drawn, path, dist.draw(base, u));
  }
  return drawn;
}

namespace {

SampleOutcome evaluate_sample(const ProjectConfig& config, const UncertaintySpec& spec,
                              std::uint64_t index) {
  SampleOutcome out;
  try {
    const ProjectConfig drawn = draw_sample(config, spec, index);
    Diagnostics ignored;
    validate(drawn, ignored);
    const CashFlowSeries series =
        build_cash_flows(project_annual_energy(drawn), drawn.plant.generation_start_year,
                         apply_automation(drawn.costs, drawn.automation), drawn.assumptions);
    out.lcoe = lcoe(series, drawn.assumptions.discount_rate);
    if (series.revenue_defined) out.npv = npv(series, drawn.assumptions.discount_rate);
  } catch (const Error& e) {
    out.lcoe.reset();
    out.npv.reset();
    out.error = e.what();
  }
  return out;
}

double percentile(std::span<const double> sorted, double p) {
  const double pos = p * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  if (frac == 0.0) return sorted[lo];
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

}  // namespace

std::vector<SampleOutcome> simulate(const ProjectConfig& config, const UncertaintySpec& spec,
                                    const MonteCarloOptions& options) {
  validate(spec, config);
  std::vector<SampleOutcome> outcomes(spec.samples);

  unsigned workers = options.workers == 0 ? std::thread::hardware_concurrency() : options.workers;
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(spec.samples)));

  const auto run_range = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) outcomes[i] = evaluate_sample(config, spec, i);
  };
  if (workers == 1) {
    run_range(0, spec.samples);
    return outcomes;
  }
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (spec.samples + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const std::size_t begin = w * chunk;
      const std::size_t end = std::min(spec.samples, begin + chunk);
      if (begin >= end) break;
      pool.emplace_back(run_range, begin, end);
    }
  }
  return outcomes;
}

MetricSummary summarize_metric(std::span<const double> values) {
  if (values.empty()) throw DomainError("cannot summarise an empty sample");
  MetricSummary s;
  s.count = values.size();

  // Shifted accumulation keeps degenerate samples exact.
  const double shift = values.front();
  double sum = 0.0;
  for (double v : values) sum += v - shift;
  s.mean = shift + sum / static_cast<double>(s.count);
  double sq = 0.0;
  for (double v : values) sq += (v - s.mean) * (v - s.mean);
  s.sd = s.count > 1 ? std::sqrt(sq / static_cast<double>(s.count - 1)) : 0.0;

  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  s.p5 = percentile(sorted, 0.05);
  s.p50 = percentile(sorted, 0.50);
  s.p95 = percentile(sorted, 0.95);

  s.histogram.lower = percentile(sorted, 0.01);
  s.histogram.upper = percentile(sorted, 0.99);
  s.histogram.counts.assign(kHistogramBins, 0);
  const double width = (s.histogram.upper - s.histogram.lower) / kHistogramBins;
  for (double v : values) {
    std::size_t bin = 0;
    if (width > 0.0) {
      const double pos = std::floor((v - s.histogram.lower) / width);
      bin = static_cast<std::size_t>(std::clamp(pos, 0.0, double(kHistogramBins - 1)));
    }
    ++s.histogram.counts[bin];
  }
  return s;
}

double prob_positive(std::span<const double> values) {
  if (values.empty()) throw DomainError("probability of a positive value needs a non-empty sample");
  const auto positive = std::count_if(values.begin(), values.end(), [](double v) { return v > 0.0; });
  return static_cast<double>(positive) / static_cast<double>(values.size());
}

MonteCarloSummary run_monte_carlo(const ProjectConfig& config, const UncertaintySpec& spec,
                                  const MonteCarloOptions& options) {
  const auto outcomes = simulate(config, spec, options);

  MonteCarloSummary summary;
  summary.samples = spec.samples;
  summary.seed = spec.seed;

  std::vector<double> lcoes;
  std::vector<double> npvs;
  lcoes.reserve(outcomes.size());
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const auto& o = outcomes[i];
    if (o.failed()) {
      if (summary.n_failed++ == 0) {
        std::string draws;
        const ProjectConfig drawn = draw_sample(config, spec, i);
        for (const auto& [path, dist] : spec.parameters) {
          if (!draws.empty()) draws += ", ";
          draws += fmt::format("{}={}", path, get_parameter(drawn, path));
        }
        summary.first_failure = fmt::format("sample {} failed ({}); draws: {}", i, o.error, draws);
      }
      continue;
    }
    lcoes.push_back(*o.lcoe);
    if (o.npv) npvs.push_back(*o.npv);
  }

  if (2 * summary.n_failed > summary.samples) {
    throw MonteCarloAbort(fmt::format("{} of {} samples failed; first failure: {}",
                                      summary.n_failed, summary.samples, summary.first_failure));
  }
  summary.lcoe = summarize_metric(lcoes);
  if (!npvs.empty()) {
    summary.npv = summarize_metric(npvs);
    summary.prob_npv_positive = prob_positive(npvs);
  }
  return summary;
}

// Tornado ----------------------------------------------------------------------------------

std::string_view metric_id(Metric m) noexcept { return m == Metric::Lcoe ? "lcoe" : "npv"; }

std::optional<Metric> parse_metric(std::string_view id) noexcept {
  if (id == "lcoe") return Metric::Lcoe;
  if (id == "npv") return Metric::Npv;
  return std::nullopt;
}

double evaluate_metric(const ProjectConfig& config, Metric metric) {
  return metric == Metric::Lcoe ? evaluate_lcoe(config) : evaluate_npv(config);
}

std::map<std::string, ParameterRange> default_tornado_ranges(const ProjectConfig& config) {
  std::map<std::string, ParameterRange> ranges;
  const double r = config.assumptions.discount_rate;
  ranges.emplace("assumptions.discount_rate", ParameterRange{r - 0.02, r + 0.02, false});
  ranges.emplace("costs.capex", ParameterRange{0.85, 1.15, true});
  if (config.plant.temperature_coupled && config.plant.production_temperature) {
    const double t = *config.plant.production_temperature;
    ranges.emplace("plant.production_temperature", ParameterRange{t - 20.0, t + 20.0, false});
  }
  return ranges;
}

std::vector<TornadoEntry> tornado(const ProjectConfig& config,
                                  const std::map<std::string, ParameterRange>& ranges,
                                  Metric metric) {
  std::vector<TornadoEntry> entries;
  entries.reserve(ranges.size());
  for (const auto& [path, range] : ranges) {
    if (range.low > range.high) {
      throw ConfigError("ranges." + path,
                        fmt::format("low must not exceed high ({} > {})", range.low, range.high));
    }
    TornadoEntry e;
    e.parameter = path;
    const double base = get_parameter(config, path);
    e.low_value = range.relative ? base * range.low : range.low;
    e.high_value = range.relative ? base * range.high : range.high;

    const auto at = [&](double value, std::optional<double>& out) {
      ProjectConfig varied = config;
      set_parameter(varied, path, value);
      try {
        out = evaluate_metric(varied, metric);
      } catch (const Error& err) {
        if (!e.note.empty()) e.note += "; ";
        e.note += err.what();
      }
    };
    at(e.low_value, e.output_low);
    at(e.high_value, e.output_high);
    if (e.output_low && e.output_high) {
      e.swing = std::abs(*e.output_high - *e.output_low);
    } else {
      e.flagged = true;
    }
    entries.push_back(std::move(e));
  }
  std::stable_sort(entries.begin(), entries.end(), [](const TornadoEntry& a, const TornadoEntry& b) {
    if (a.flagged != b.flagged) return !a.flagged;
    return a.swing > b.swing;
  });
  return entries;
}

}  // namespace geoassess
