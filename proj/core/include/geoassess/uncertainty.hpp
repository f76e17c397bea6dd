#pragma once

// Seed-deterministic Monte Carlo over project parameters and one-at-a-time
// (tornado) sensitivity.
//
// Parameters are addressed by dotted paths into ProjectConfig, e.g.
// `costs.capex`, `assumptions.discount_rate`, `plant.production_temperature`.
// Every sample draws its variates from a counter-based stream keyed by
// (seed, sample index, parameter ordinal), so results do not depend on the
// order in which samples are evaluated or on the number of worker threads.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "geoassess/scenarios.hpp"

namespace geoassess {

class Distribution {
 public:
  enum class Kind { Point, Uniform, Triangular, Normal };

  static Distribution point(double value);
  static Distribution uniform(double low, double high);
  static Distribution triangular(double low, double mode, double high);
  /// Normal, truncated to [low, high] when bounds are given.
  static Distribution normal(double mean, double sd, std::optional<double> low = std::nullopt,
                             std::optional<double> high = std::nullopt);

  /// Copy whose values are multipliers of the parameter's base value.
  Distribution as_relative() const;

  Kind kind() const noexcept { return kind_; }
  bool relative() const noexcept { return relative_; }
  // Point: value. Uniform: low, high. Triangular: low, mode, high. Normal: mean, sd.
  double param(int i) const noexcept { return params_[i]; }
  std::optional<double> lower_bound() const noexcept { return lower_; }
  std::optional<double> upper_bound() const noexcept { return upper_; }

  /// Inverse-CDF draw for a uniform variate u in [0, 1). The truncated normal
  /// maps u onto [F(low), F(high)] before inverting, so it never rejects.
  double sample(double u) const;

  /// `sample(u)`, scaled by `base` for relative distributions.
  double draw(double base, double u) const { return relative_ ? base * sample(u) : sample(u); }

  bool operator==(const Distribution&) const = default;

 private:
  Distribution() = default;

  Kind kind_ = Kind::Point;
  double params_[3] = {0.0, 0.0, 0.0};
  std::optional<double> lower_;
  std::optional<double> upper_;
  bool relative_ = false;
};

std::string_view kind_id(Distribution::Kind kind) noexcept;

// Parameter-path access ------------------------------------------------------

/// All paths accepted by get_parameter / set_parameter.
std::span<const std::string_view> parameter_paths() noexcept;
bool is_parameter_path(std::string_view path) noexcept;

/// Throws ConfigError when the path is unknown or names an unset optional field.
double get_parameter(const ProjectConfig& config, std::string_view path);
/// `costs.capex` rescales the whole investment schedule to the new total.
void set_parameter(ProjectConfig& config, std::string_view path, double value);

// Monte Carlo -----------------------------------------------------------------

struct UncertaintySpec {
  std::map<std::string, Distribution> parameters;
  std::size_t samples = 10'000;
  std::uint64_t seed = 0;

  bool operator==(const UncertaintySpec&) const = default;
};

/// Cost triangular(−20 %, base, +20 %), discount rate uniform(4 %, 8 %), and
/// production temperature normal(base, 10 °C) truncated to ±30 °C for
/// temperature-coupled plants.
UncertaintySpec default_uncertainty(const ProjectConfig& config);

void validate(const UncertaintySpec& spec, const ProjectConfig& config);

/// Uniform variate in (0, 1) for one (seed, sample, slot) triple.
double counter_uniform(std::uint64_t seed, std::uint64_t sample, std::uint64_t slot) noexcept;

/// Configuration for sample `index`: every parameter drawn in path order.
ProjectConfig draw_sample(const ProjectConfig& config, const UncertaintySpec& spec,
                          std::uint64_t index);

struct SampleOutcome {
  std::optional<double> lcoe;
  std::optional<double> npv;
  std::string error;  // empty when the sample succeeded

  bool failed() const noexcept { return !error.empty(); }
};

struct MonteCarloOptions {
  unsigned workers = 1;  // 0 = hardware concurrency
};

/// Per-sample outcomes in index order. A sample fails when the drawn
/// configuration is invalid or a required metric is undefined (NPV is only
/// required when the project has a tariff).
std::vector<SampleOutcome> simulate(const ProjectConfig& config, const UncertaintySpec& spec,
                                    const MonteCarloOptions& options = {});

struct Histogram {
  double lower = 0.0;
  double upper = 0.0;
  std::vector<std::size_t> counts;
};

inline constexpr std::size_t kHistogramBins = 50;

struct MetricSummary {
  std::size_t count = 0;
  double mean = 0.0;
  double sd = 0.0;
  double p5 = 0.0;
  double p50 = 0.0;
  double p95 = 0.0;
  Histogram histogram;  // kHistogramBins equal-width bins over [p1, p99]; tails clamp
};

struct MonteCarloSummary {
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::optional<MetricSummary> lcoe;
  std::optional<MetricSummary> npv;
  std::optional<double> prob_npv_positive;
  std::size_t n_failed = 0;
  std::string first_failure;
};

/// Thrown when more than half the samples fail.
class MonteCarloAbort : public UndefinedMetricError {
 public:
  using UndefinedMetricError::UndefinedMetricError;
};

/// Sample mean, sample standard deviation and linearly interpolated
/// percentiles. Summation runs in index order.
MetricSummary summarize_metric(std::span<const double> values);

/// Fraction of values strictly above zero. Throws DomainError when empty.
double prob_positive(std::span<const double> values);

MonteCarloSummary run_monte_carlo(const ProjectConfig& config, const UncertaintySpec& spec,
                                  const MonteCarloOptions& options = {});

// Tornado -----------------------------------------------------------------------

enum class Metric { Lcoe, Npv };

std::string_view metric_id(Metric m) noexcept;
std::optional<Metric> parse_metric(std::string_view id) noexcept;

double evaluate_metric(const ProjectConfig& config, Metric metric);

struct ParameterRange {
  double low = 0.0;
  double high = 0.0;
  bool relative = false;  // low/high multiply the base value

  bool operator==(const ParameterRange&) const = default;
};

struct TornadoEntry {
  std::string parameter;
  double low_value = 0.0;   // parameter value at the low end
  double high_value = 0.0;
  std::optional<double> output_low;
  std::optional<double> output_high;
  double swing = 0.0;
  bool flagged = false;  // metric undefined at one endpoint
  std::string note;
};

/// Discount rate ±2 pp, CAPEX ±15 %, and production temperature ±20 °C for
/// temperature-coupled plants.
std::map<std::string, ParameterRange> default_tornado_ranges(const ProjectConfig& config);

/// Varies each parameter to its low and high value with the others at base and
/// returns the entries sorted by descending swing. Flagged entries sort last.
std::vector<TornadoEntry> tornado(const ProjectConfig& config,
                                  const std::map<std::string, ParameterRange>& ranges,
                                  Metric metric);

}  // namespace geoassess
