#pragma once

// Discounted cash-flow construction and the four project indicators:
// levelized cost, net present value, internal rate of return and payback.
// All amounts are constant (real) 2024 USD.

#include <optional>
#include <span>
#include <vector>

#include "geoassess/resource.hpp"

namespace geoassess {

enum class OpexEscalation { None, InflationIndexed };

struct FinancialAssumptions {
  double discount_rate = 0.06;  // real
  double inflation_rate = 0.02;
  int lifetime = 25;
  std::optional<double> energy_tariff;  // USD/MWh; NPV, IRR and payback need it

  bool operator==(const FinancialAssumptions&) const = default;
};

struct CapexEntry {
  int year = 0;
  double amount = 0.0;

  bool operator==(const CapexEntry&) const = default;
};

struct CostModel {
  std::vector<CapexEntry> capex_schedule{CapexEntry{}};
  double opex = 0.0;       // USD/yr
  double fuel_cost = 0.0;  // USD/yr
  OpexEscalation opex_escalation = OpexEscalation::None;

  double total_capex() const noexcept;

  bool operator==(const CostModel&) const = default;
};

struct CashFlowRecord {
  int year = 0;
  double investment = 0.0;
  double om = 0.0;
  double fuel = 0.0;
  double energy = 0.0;  // MWh
  double revenue = 0.0;
  double net = 0.0;  // revenue − investment − om − fuel
};

struct CashFlowSeries {
  std::vector<CashFlowRecord> records;  // years 0..n
  bool revenue_defined = false;
  int generation_start_year = 1;

  int lifetime() const noexcept { return static_cast<int>(records.size()) - 1; }
};

/// Year-by-year cash flows for a plant producing `annual_energy_mwh` from
/// `generation_start_year` to the end of `assumptions.lifetime`. O&M and fuel
/// are incurred over the same years. Without a tariff revenue stays zero and
/// `revenue_defined` is false.
CashFlowSeries build_cash_flows(double annual_energy_mwh, int generation_start_year,
                                const CostModel& costs, const FinancialAssumptions& assumptions);

CashFlowSeries build_cash_flows(const PlantSpec& plant, const CostModel& costs,
                                const FinancialAssumptions& assumptions);

/// Series carrying only net flows C_0..C_n (positive entries as revenue,
/// negative entries as investment).
CashFlowSeries series_from_net_flows(std::span<const double> net);

/// Discounted cost over discounted energy. Year-0 spending enters undiscounted.
/// Never reads revenue. Throws UndefinedMetricError when discounted energy is zero.
double lcoe(const CashFlowSeries& series, double discount_rate);

double npv(const CashFlowSeries& series, double discount_rate);

struct IrrResult {
  std::optional<double> rate;
  bool ambiguous = false;  // more than one sign change of NPV on the search bracket
};

inline constexpr double kIrrLowerBound = -0.99;
inline constexpr double kIrrUpperBound = 10.0;

/// Smallest root of NPV(r) on (−0.99, 10], located by a grid scan for sign
/// changes followed by bisection. Absent when NPV never changes sign.
IrrResult irr(const CashFlowSeries& series);

/// Initial investment over a constant annual net inflow. Throws
/// NoPaybackError when the inflow is not positive.
double payback_simple(double initial_investment, double annual_net_inflow);

/// First time the running sum of net flows reaches zero, interpolating
/// linearly within the crossing year.
std::optional<double> payback_cumulative(const CashFlowSeries& series);

struct MetricsReport {
  std::optional<double> lcoe;
  std::optional<double> npv;
  std::optional<double> irr;
  bool irr_ambiguous = false;
  std::optional<double> payback_simple;
  std::optional<double> payback_cumulative;
};

/// Evaluates every indicator, leaving undefined ones empty instead of throwing.
MetricsReport compute_metrics(const CashFlowSeries& series, double discount_rate);

}  // namespace geoassess
