/* SPDX-License-Identifier: Apache-2.0 */

#include "ucdr/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "ucdr/stochastics.hpp"

namespace ucdr {

namespace {

constexpr double kTol = 1e-6;

double row_tol(double rhs) { return kTol * std::max(1.0, std::abs(rhs)); }

}  // namespace

int Schedule::selected_level(int t) const {
  for (int l = 1; l <= num_levels; ++l)
    if (w(t, l) != 0) return l;
  return 0;
}

int Schedule::committed_count(int t) const {
  int count = 0;
  for (int i = 1; i <= num_units; ++i) count += u(t, i);
  return count;
}

Schedule schedule_from_point(const VarLayout& layout, const std::vector<double>& x,
                             double objective) {
  if (static_cast<int>(x.size()) != layout.total_vars())
    throw std::invalid_argument("point size does not match layout");
  Schedule s;
  s.num_units = layout.num_units;
  s.horizon = layout.horizon;
  s.num_levels = layout.num_levels;
  s.objective = objective;
  const int nt = layout.num_units * layout.horizon;
  s.power.resize(static_cast<size_t>(nt));
  s.committed.resize(static_cast<size_t>(nt));
  s.startup.resize(static_cast<size_t>(nt));
  s.level.resize(static_cast<size_t>(layout.num_levels * layout.horizon));
  for (int t = 1; t <= layout.horizon; ++t) {
    for (int i = 1; i <= layout.num_units; ++i) {
      const size_t k = static_cast<size_t>((t - 1) * layout.num_units + i - 1);
      s.power[k] = x[static_cast<size_t>(layout.p_index(t, i))];
      s.committed[k] = static_cast<int>(std::lround(x[static_cast<size_t>(layout.u_index(t, i))]));
      s.startup[k] = static_cast<int>(std::lround(x[static_cast<size_t>(layout.z_index(t, i))]));
    }
    for (int l = 1; l <= layout.num_levels; ++l)
      s.level[static_cast<size_t>((t - 1) * layout.num_levels + l - 1)] =
          static_cast<int>(std::lround(x[static_cast<size_t>(layout.w_index(t, l))]));
  }
  return s;
}

std::vector<std::optional<double>> marginal_cost(const Schedule& schedule, const Fleet& fleet) {
  if (schedule.num_units != fleet.size())
    throw std::invalid_argument("schedule and fleet disagree on unit count");
  std::vector<std::optional<double>> out(static_cast<size_t>(schedule.horizon));
  for (int t = 1; t <= schedule.horizon; ++t) {
    std::optional<double> cost;
    for (int i = 1; i <= schedule.num_units; ++i)
      if (schedule.u(t, i) != 0) {
        const double b = fleet.unit(i - 1).fuel_cost;
        if (!cost || b > *cost) cost = b;
      }
    out[static_cast<size_t>(t - 1)] = cost;
  }
  return out;
}

std::vector<double> spinning_reserve(const Schedule& stochastic, const Schedule& deterministic) {
  if (stochastic.horizon != deterministic.horizon ||
      stochastic.num_units != deterministic.num_units)
    throw std::invalid_argument("schedules disagree on dimensions");
  std::vector<double> out(static_cast<size_t>(stochastic.horizon), 0.0);
  for (int t = 1; t <= stochastic.horizon; ++t) {
    double total = 0.0;
    for (int i = 1; i <= stochastic.num_units; ++i)
      total += stochastic.p(t, i) - deterministic.p(t, i);
    out[static_cast<size_t>(t - 1)] = total;
  }
  return out;
}

std::vector<double> lfc_margin(const Schedule& schedule, const Fleet& fleet) {
  if (schedule.num_units != fleet.size())
    throw std::invalid_argument("schedule and fleet disagree on unit count");
  std::vector<double> out(static_cast<size_t>(schedule.horizon), 0.0);
  for (int t = 1; t <= schedule.horizon; ++t) {
    double margin = 0.0;
    for (int i = 1; i <= schedule.num_units; ++i)
      if (schedule.u(t, i) != 0) {
        const double p_max = fleet.unit(i - 1).p_max;
        margin += std::min(p_max - schedule.p(t, i), 0.05 * p_max);
      }
    out[static_cast<size_t>(t - 1)] = margin;
  }
  return out;
}

std::vector<double> realized_demand(const Schedule& schedule, const Tariff& tariff,
                                    const Scenario& scenario) {
  if (schedule.horizon != scenario.horizon || schedule.num_levels != tariff.num_levels())
    throw std::invalid_argument("schedule, tariff and scenario disagree on dimensions");
  std::vector<double> out(static_cast<size_t>(schedule.horizon), 0.0);
  for (int t = 1; t <= schedule.horizon; ++t) {
    double factor = 0.0;
    for (int l = 1; l <= schedule.num_levels; ++l)
      if (schedule.w(t, l) != 0) factor += demand_factor(l, tariff);
    out[static_cast<size_t>(t - 1)] = scenario.demand[static_cast<size_t>(t - 1)] * factor;
  }
  return out;
}

ScheduleReport profit_breakdown(const Schedule& schedule, const Fleet& fleet,
                                const Tariff& tariff, const Scenario& scenario) {
  if (schedule.horizon != scenario.horizon || schedule.num_levels != tariff.num_levels() ||
      schedule.num_units != fleet.size())
    throw std::invalid_argument("schedule, fleet, tariff and scenario disagree on dimensions");
  ScheduleReport report;
  const int T = schedule.horizon;
  report.revenue.resize(static_cast<size_t>(T));
  report.fuel_cost.resize(static_cast<size_t>(T));
  report.startup_cost.resize(static_cast<size_t>(T));
  report.selected_price.resize(static_cast<size_t>(T));
  for (int t = 1; t <= T; ++t) {
    double revenue = 0.0;
    double price = 0.0;
    for (int l = 1; l <= schedule.num_levels; ++l)
      if (schedule.w(t, l) != 0) {
        const double r = tariff.levels[static_cast<size_t>(l - 1)];
        revenue += scenario.demand[static_cast<size_t>(t - 1)] * r * demand_factor(l, tariff);
        price += r;
      }
    double fuel = 0.0;
    double startup = 0.0;
    for (int i = 1; i <= schedule.num_units; ++i) {
      fuel += fleet.unit(i - 1).fuel_cost * schedule.p(t, i);
      startup += fleet.unit(i - 1).startup_cost * static_cast<double>(schedule.z(t, i));
    }
    report.revenue[static_cast<size_t>(t - 1)] = revenue;
    report.selected_price[static_cast<size_t>(t - 1)] = price;
    report.fuel_cost[static_cast<size_t>(t - 1)] = fuel;
    report.startup_cost[static_cast<size_t>(t - 1)] = startup;
    report.total_revenue += revenue;
    report.total_fuel_cost += fuel;
    report.total_startup_cost += startup;
  }
  report.total_profit =
      report.total_revenue - report.total_fuel_cost - report.total_startup_cost;
  return report;
}

ScheduleReport make_report(const Schedule& schedule, const Fleet& fleet, const Tariff& tariff,
                           const Scenario& scenario, const Schedule* deterministic) {
  ScheduleReport report = profit_breakdown(schedule, fleet, tariff, scenario);
  report.marginal_cost = marginal_cost(schedule, fleet);
  report.lfc_margin = lfc_margin(schedule, fleet);
  report.realized_demand = realized_demand(schedule, tariff, scenario);
  if (deterministic != nullptr)
    report.spinning_reserve = spinning_reserve(schedule, *deterministic);
  return report;
}

namespace {

struct Checker {
  std::vector<Violation>& out;

  void report(ConstraintKind kind, int t, int index, int window, double residual,
              const std::string& detail) {
    Violation v;
    v.kind = kind;
    v.t = t;
    v.index = index;
    v.window = window;
    v.residual = residual;
    std::ostringstream os;
    os << constraint_kind_name(kind);
    if (t > 0) os << " t=" << t;
    if (index > 0) os << " i=" << index;
    if (window > 0) os << " s=" << window;
    os << ": " << detail << " (residual " << residual << ")";
    v.message = os.str();
    out.push_back(std::move(v));
  }

  // sense 'G': lhs >= rhs, 'L': lhs <= rhs, 'E': equality
  void check(ConstraintKind kind, char sense, double lhs, double rhs, int t, int index,
             int window, const std::string& detail) {
    double residual = 0.0;
    switch (sense) {
      case 'G': residual = rhs - lhs; break;
      case 'L': residual = lhs - rhs; break;
      default: residual = std::abs(lhs - rhs); break;
    }
    if (residual > row_tol(rhs)) report(kind, t, index, window, residual, detail);
  }
};

}  // namespace

std::vector<Violation> validate_schedule(const Schedule& schedule, const Fleet& fleet,
                                         const Scenario& scenario, const Tariff& tariff,
                                         const ChanceSpec& chance, const InitialState& init) {
  if (schedule.num_units != fleet.size() || schedule.horizon != scenario.horizon ||
      schedule.num_levels != tariff.num_levels() ||
      static_cast<int>(init.units.size()) != fleet.size())
    throw std::invalid_argument("schedule dimensions disagree with the case inputs");

  std::vector<Violation> violations;
  Checker checker{violations};
  const int T = schedule.horizon;
  const int N = schedule.num_units;
  const int L = schedule.num_levels;
  const double offset = reserve_offset(chance, scenario);

  // One price level per step.
  for (int t = 1; t <= T; ++t) {
    int selected = 0;
    for (int l = 1; l <= L; ++l) selected += schedule.w(t, l);
    checker.check(ConstraintKind::PriceSelection, 'E', static_cast<double>(selected), 1.0, t, 0, 0,
                  "exactly one price level must be selected");
  }

  // Mean selected price capped at the reference price.
  {
    double price_sum = 0.0;
    for (int t = 1; t <= T; ++t)
      for (int l = 1; l <= L; ++l)
        if (schedule.w(t, l) != 0) price_sum += tariff.levels[static_cast<size_t>(l - 1)];
    checker.check(ConstraintKind::MeanPriceCap, 'L', price_sum,
                  static_cast<double>(T) * tariff.mean_price, 0, 0, 0,
                  "mean selected price above the reference price");
  }

  // Total responsive demand conserved.
  {
    double realized = 0.0;
    double forecast = 0.0;
    for (int t = 1; t <= T; ++t) {
      forecast += scenario.demand[static_cast<size_t>(t - 1)];
      for (int l = 1; l <= L; ++l)
        if (schedule.w(t, l) != 0)
          realized += scenario.demand[static_cast<size_t>(t - 1)] * demand_factor(l, tariff);
    }
    checker.check(ConstraintKind::DemandConservation, 'G', realized, forecast, 0, 0, 0,
                  "responsive demand must not fall below the forecast total");
  }

  // Balance with the reserve offset.
  for (int t = 1; t <= T; ++t) {
    double supply = scenario.wind[static_cast<size_t>(t - 1)] + scenario.pv[static_cast<size_t>(t - 1)];
    for (int i = 1; i <= N; ++i) supply += schedule.p(t, i);
    double load = 0.0;
    for (int l = 1; l <= L; ++l)
      if (schedule.w(t, l) != 0)
        load += scenario.demand[static_cast<size_t>(t - 1)] * demand_factor(l, tariff);
    checker.check(ConstraintKind::Balance, 'G', supply - load, offset, t, 0, 0,
                  "supply below responsive demand plus reserve offset");
  }

  for (int i = 1; i <= N; ++i) {
    const ThermalUnit& unit = fleet.unit(i - 1);
    const auto& state = init.units[static_cast<size_t>(i - 1)];
    const double u0 = state.committed ? 1.0 : 0.0;
    const double p0 = state.output;

    for (int t = 1; t <= T; ++t) {
      const double p = schedule.p(t, i);
      const double u = static_cast<double>(schedule.u(t, i));
      const double z = static_cast<double>(schedule.z(t, i));

      if (schedule.u(t, i) != 0 && schedule.u(t, i) != 1)
        checker.report(ConstraintKind::VariableBound, t, i, 0, 1.0, "commitment is not 0/1");
      checker.check(ConstraintKind::VariableBound, 'G', z, 0.0, t, i, 0, "startup below 0");
      checker.check(ConstraintKind::VariableBound, 'L', z, 1.0, t, i, 0, "startup above 1");

      checker.check(ConstraintKind::CapacityLower, 'G', p, unit.p_min * u, t, i, 0,
                    "output below the committed minimum");
      checker.check(ConstraintKind::CapacityUpper, 'L', p, unit.p_max * u, t, i, 0,
                    "output above the committed maximum");

      const double p_prev = t == 1 ? p0 : schedule.p(t - 1, i);
      const double u_prev = t == 1 ? u0 : static_cast<double>(schedule.u(t - 1, i));
      checker.check(ConstraintKind::RampUp, 'L', p - p_prev,
                    u_prev * unit.ramp_up + (1.0 - u_prev) * unit.p_min, t, i, 0,
                    "output rise beyond the ramp-up limit");
      checker.check(ConstraintKind::RampDown, 'G', p - p_prev,
                    -u * unit.ramp_down - (1.0 - u) * unit.p_max, t, i, 0,
                    "output drop beyond the ramp-down limit");

      for (int s = std::max(1, t - unit.min_up); s <= t - 1; ++s) {
        const double us = static_cast<double>(schedule.u(s, i));
        const double us_prev = s == 1 ? u0 : static_cast<double>(schedule.u(s - 1, i));
        checker.check(ConstraintKind::MinUp, 'G', u, us - us_prev, t, i, s,
                      "unit shut down before serving its minimum up time");
      }
      for (int s = std::max(1, t - unit.min_down); s <= t - 1; ++s) {
        const double us = static_cast<double>(schedule.u(s, i));
        const double us_prev = s == 1 ? u0 : static_cast<double>(schedule.u(s - 1, i));
        checker.check(ConstraintKind::MinDown, 'L', u, 1.0 + us - us_prev, t, i, s,
                      "unit restarted before serving its minimum down time");
      }

      checker.check(ConstraintKind::StartupLink, 'G', z, u - u_prev, t, i, 0,
                    "startup indicator misses a commitment increase");
    }

    // Up or down time still owed from before the horizon.
    const int owed = (state.committed ? unit.min_up : unit.min_down) - state.run_length;
    for (int t = 1; t <= std::min(owed, T); ++t) {
      const double u = static_cast<double>(schedule.u(t, i));
      if (state.committed)
        checker.check(ConstraintKind::MinUp, 'G', u, 1.0, t, i, 0,
                      "unit must stay on to serve its initial up time");
      else
        checker.check(ConstraintKind::MinDown, 'L', u, 0.0, t, i, 0,
                      "unit must stay off to serve its initial down time");
    }
  }

  return violations;
}

CompareTable compare_cases(const std::vector<CaseResult>& results) {
  if (results.empty()) throw std::invalid_argument("nothing to compare");
  CompareTable table;
  table.horizon = static_cast<int>(results.front().committed_count.size());
  for (const CaseResult& result : results) {
    if (static_cast<int>(result.committed_count.size()) != table.horizon)
      throw std::invalid_argument("cases disagree on the horizon");
    table.labels.push_back(result.label);
    table.committed_count.push_back(result.committed_count);
    table.operation_cost.push_back(result.report.total_fuel_cost +
                                   result.report.total_startup_cost);
    table.revenue.push_back(result.report.total_revenue);
    table.profit.push_back(result.report.total_profit);
    double peak = 0.0;
    for (double d : result.report.realized_demand) peak = std::max(peak, d);
    table.peak_realized_demand.push_back(peak);
  }
  for (size_t c = 1; c < results.size(); ++c) {
    std::vector<int> delta(static_cast<size_t>(table.horizon));
    for (int t = 0; t < table.horizon; ++t)
      delta[static_cast<size_t>(t)] = table.committed_count[c][static_cast<size_t>(t)] -
                                      table.committed_count[0][static_cast<size_t>(t)];
    table.committed_delta.push_back(std::move(delta));
  }
  return table;
}

}  // namespace ucdr
