#include "geoassess/finance.hpp"

#include <cmath>

#include <fmt/format.h>

namespace geoassess {

namespace {

void check_rate(double r) {
  if (!(r > -1.0)) {
    throw DomainError(fmt::format("discount rate must be > -1 (got {})", r));
  }
}

// Grid resolution for the IRR sign-change scan, uniform in log(1 + r).
constexpr int kIrrGridPoints = 4000;
constexpr int kIrrBisectionSteps = 200;

double net_present_value(std::span<const CashFlowRecord> records, double r) {
  double df = 1.0;
  double total = 0.0;
  const double step = 1.0 / (1.0 + r);
  for (const auto& rec : records) {
    total += rec.net * df;
    df *= step;
  }
  return total;
}

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

}  // namespace

double CostModel::total_capex() const noexcept {
  double total = 0.0;
  for (const auto& entry : capex_schedule) total += entry.amount;
  return total;
}

CashFlowSeries build_cash_flows(double annual_energy_mwh, int generation_start_year,
                                const CostModel& costs, const FinancialAssumptions& assumptions) {
  const int n = assumptions.lifetime;
  if (n < 1) {
    throw ConfigError("assumptions.lifetime", fmt::format("must be >= 1 (got {})", n));
  }
  if (generation_start_year < 1 || generation_start_year > n) {
    throw ConfigError("plant.generation_start_year",
                      fmt::format("must lie in [1, {}] (got {})", n, generation_start_year));
  }
  if (annual_energy_mwh < 0.0) {
    throw DomainError(fmt::format("annual energy must be >= 0 MWh (got {})", annual_energy_mwh));
  }
  if (costs.opex < 0.0) {
    throw ConfigError("costs.opex", fmt::format("must be >= 0 (got {})", costs.opex));
  }
  if (costs.fuel_cost < 0.0) {
    throw ConfigError("costs.fuel_cost", fmt::format("must be >= 0 (got {})", costs.fuel_cost));
  }
  if (assumptions.energy_tariff && *assumptions.energy_tariff < 0.0) {
    throw ConfigError("assumptions.energy_tariff",
                      fmt::format("must be >= 0 (got {})", *assumptions.energy_tariff));
  }

  CashFlowSeries series;
  series.revenue_defined = assumptions.energy_tariff.has_value();
  series.generation_start_year = generation_start_year;
  series.records.resize(static_cast<std::size_t>(n) + 1);
  for (int t = 0; t <= n; ++t) series.records[t].year = t;

  for (const auto& entry : costs.capex_schedule) {
    if (entry.year < 0 || entry.year > n) {
      throw ConfigError("costs.capex_schedule",
                        fmt::format("investment year {} lies outside [0, {}]", entry.year, n));
    }
    if (entry.amount < 0.0) {
      throw ConfigError("costs.capex_schedule",
                        fmt::format("investment amount must be >= 0 (got {})", entry.amount));
    }
    series.records[entry.year].investment += entry.amount;
  }

  const double tariff = assumptions.energy_tariff.value_or(0.0);
  for (int t = generation_start_year; t <= n; ++t) {
    auto& rec = series.records[t];
    rec.om = costs.opex;
    if (costs.opex_escalation == OpexEscalation::InflationIndexed) {
      rec.om *= std::pow(1.0 + assumptions.inflation_rate, t);
    }
    rec.fuel = costs.fuel_cost;
    rec.energy = annual_energy_mwh;
    rec.revenue = tariff * annual_energy_mwh;
  }
  for (auto& rec : series.records) {
    rec.net = rec.revenue - rec.investment - rec.om - rec.fuel;
  }
  return series;
}

CashFlowSeries build_cash_flows(const PlantSpec& plant, const CostModel& costs,
                                const FinancialAssumptions& assumptions) {
  return build_cash_flows(delivered_annual_energy(plant), plant.generation_start_year, costs,
                          assumptions);
}

CashFlowSeries series_from_net_flows(std::span<const double> net) {
  CashFlowSeries series;
  series.revenue_defined = true;
  series.records.reserve(net.size());
  for (std::size_t t = 0; t < net.size(); ++t) {
    CashFlowRecord rec;
    rec.year = static_cast<int>(t);
    if (net[t] >= 0.0) {
      rec.revenue = net[t];
    } else {
      rec.investment = -net[t];
    }
    rec.net = net[t];
    series.records.push_back(rec);
  }
  return series;
}

double lcoe(const CashFlowSeries& series, double discount_rate) {
  check_rate(discount_rate);
  const double step = 1.0 / (1.0 + discount_rate);
  double df = 1.0;
  double cost = 0.0;
  double energy = 0.0;
  for (const auto& rec : series.records) {
    cost += (rec.investment + rec.om + rec.fuel) * df;
    energy += rec.energy * df;
    df *= step;
  }
  if (!(energy > 0.0)) {
    throw UndefinedMetricError("levelized cost undefined: discounted energy is zero");
  }
  return cost / energy;
}

double npv(const CashFlowSeries& series, double discount_rate) {
  check_rate(discount_rate);
  if (!series.revenue_defined) {
    throw UndefinedMetricError("NPV undefined: no energy tariff, revenue unknown");
  }
  return net_present_value(series.records, discount_rate);
}

IrrResult irr(const CashFlowSeries& series) {
  IrrResult result;
  bool has_negative = false;
  bool has_positive = false;
  double scale = 0.0;
  for (const auto& rec : series.records) {
    has_negative = has_negative || rec.net < 0.0;
    has_positive = has_positive || rec.net > 0.0;
    scale += std::abs(rec.net);
  }
  if (!has_negative || !has_positive) return result;

  const auto f = [&](double r) { return net_present_value(series.records, r); };
  const double lo_log = std::log1p(kIrrLowerBound);
  const double hi_log = std::log1p(kIrrUpperBound);
  const auto grid = [&](int i) {
    if (i == kIrrGridPoints) return kIrrUpperBound;
    return std::expm1(lo_log + (hi_log - lo_log) * i / kIrrGridPoints);
  };

  std::optional<double> root;
  int sign_changes = 0;
  double prev_r = grid(0);
  double prev_f = f(prev_r);
  if (prev_f == 0.0) root = prev_r;
  int prev_sign = sign_of(prev_f);

  for (int i = 1; i <= kIrrGridPoints; ++i) {
    const double r = grid(i);
    const double fr = f(r);
    const int s = sign_of(fr);
    if (s == 0) {
      if (!root) root = r;
      continue;
    }
    if (prev_sign != 0 && s != prev_sign) {
      ++sign_changes;
      if (!root) {
        double a = prev_r;
        double b = r;
        double fa = prev_f;
        for (int k = 0; k < kIrrBisectionSteps; ++k) {
          const double mid = 0.5 * (a + b);
          if (mid <= a || mid >= b) break;
          const double fm = f(mid);
          if (fm == 0.0) {
            a = b = mid;
            break;
          }
          if (sign_of(fm) == sign_of(fa)) {
            a = mid;
            fa = fm;
          } else {
            b = mid;
          }
        }
        root = 0.5 * (a + b);
      }
    }
    prev_sign = s;
    prev_r = r;
    prev_f = fr;
  }

  if (root && std::abs(f(*root)) <= 1e-6 * scale) {
    result.rate = root;
    result.ambiguous = sign_changes > 1;
  }
  return result;
}

double payback_simple(double initial_investment, double annual_net_inflow) {
  if (!(annual_net_inflow > 0.0)) {
    throw NoPaybackError(
        fmt::format("no payback: annual net inflow is {} (must be > 0)", annual_net_inflow));
  }
  return initial_investment / annual_net_inflow;
}

std::optional<double> payback_cumulative(const CashFlowSeries& series) {
  if (!series.revenue_defined) {
    throw UndefinedMetricError("payback undefined: no energy tariff, revenue unknown");
  }
  if (series.records.empty()) return std::nullopt;
  double running = series.records.front().net;
  if (running >= 0.0) return 0.0;
  for (std::size_t t = 1; t < series.records.size(); ++t) {
    const double flow = series.records[t].net;
    const double next = running + flow;
    if (next >= 0.0) {
      return static_cast<double>(t - 1) + (-running) / flow;
    }
    running = next;
  }
  return std::nullopt;
}

MetricsReport compute_metrics(const CashFlowSeries& series, double discount_rate) {
  MetricsReport report;
  try {
    report.lcoe = lcoe(series, discount_rate);
  } catch (const UndefinedMetricError&) {
  }
  if (!series.revenue_defined) return report;

  report.npv = npv(series, discount_rate);
  const IrrResult r = irr(series);
  report.irr = r.rate;
  report.irr_ambiguous = r.ambiguous;

  double investment = 0.0;
  for (const auto& rec : series.records) investment += rec.investment;
  const auto alpha = static_cast<std::size_t>(series.generation_start_year);
  if (alpha < series.records.size()) {
    const auto& rec = series.records[alpha];
    try {
      report.payback_simple = payback_simple(investment, rec.revenue - rec.om - rec.fuel);
    } catch (const NoPaybackError&) {
    }
  }
  report.payback_cumulative = payback_cumulative(series);
  return report;
}

}  // namespace geoassess
