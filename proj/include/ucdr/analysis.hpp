/* SPDX-License-Identifier: Apache-2.0 */

#ifndef UCDR_ANALYSIS_HPP
#define UCDR_ANALYSIS_HPP

#include <optional>
#include <string>
#include <vector>

#include "ucdr/domain.hpp"
#include "ucdr/formulation.hpp"

namespace ucdr {

// Integral commitment decision with its dispatch: the solved time series.
struct Schedule {
  int num_units = 0;
  int horizon = 0;
  int num_levels = 0;
  std::vector<double> power;    // (t-1)*N + (i-1)
  std::vector<int> committed;   // 0/1
  std::vector<int> startup;     // 0/1
  std::vector<int> level;       // (t-1)*L + (l-1), 0/1
  double objective = 0.0;       // profit reported by the solver

  double p(int t, int i) const { return power[static_cast<size_t>((t - 1) * num_units + i - 1)]; }
  int u(int t, int i) const { return committed[static_cast<size_t>((t - 1) * num_units + i - 1)]; }
  int z(int t, int i) const { return startup[static_cast<size_t>((t - 1) * num_units + i - 1)]; }
  int w(int t, int l) const { return level[static_cast<size_t>((t - 1) * num_levels + l - 1)]; }
  // 1-based selected level at step t, 0 if none is set.
  int selected_level(int t) const;
  int committed_count(int t) const;
};

// Decode a solver point into a schedule. Binaries are rounded; the caller
// guarantees they are integral within tolerance.
Schedule schedule_from_point(const VarLayout& layout, const std::vector<double>& x,
                             double objective);

struct ScheduleReport {
  std::vector<std::optional<double>> marginal_cost;  // nullopt when nothing is committed
  std::vector<double> spinning_reserve;              // empty until the re-solve ran
  std::vector<double> lfc_margin;
  std::vector<double> revenue;
  std::vector<double> fuel_cost;
  std::vector<double> startup_cost;
  std::vector<double> realized_demand;
  std::vector<double> selected_price;
  double total_revenue = 0.0;
  double total_fuel_cost = 0.0;
  double total_startup_cost = 0.0;
  double total_profit = 0.0;
};

// Highest fuel cost among committed units per step; nullopt when none runs.
std::vector<std::optional<double>> marginal_cost(const Schedule& schedule, const Fleet& fleet);

// Per-step total output difference between the chance-constrained dispatch
// and its deterministic re-solve under the same tariff.
std::vector<double> spinning_reserve(const Schedule& stochastic, const Schedule& deterministic);

// Headroom available for load-frequency control: per committed unit the
// smaller of the remaining capacity and 5% of capacity.
std::vector<double> lfc_margin(const Schedule& schedule, const Fleet& fleet);

// Revenue, fuel and startup series plus totals; total_profit reproduces the
// solver objective.
ScheduleReport profit_breakdown(const Schedule& schedule, const Fleet& fleet,
                                const Tariff& tariff, const Scenario& scenario);

// Demand after the price response: forecast scaled by the selected level's
// demand factor.
std::vector<double> realized_demand(const Schedule& schedule, const Tariff& tariff,
                                    const Scenario& scenario);

// Full report; spinning_reserve stays empty unless `deterministic` is given.
ScheduleReport make_report(const Schedule& schedule, const Fleet& fleet, const Tariff& tariff,
                           const Scenario& scenario,
                           const Schedule* deterministic = nullptr);

struct Violation {
  ConstraintKind kind;
  int t = 0;        // step, 0 for horizon-wide constraints
  int index = 0;    // unit or level, 0 when not applicable
  int window = 0;   // lookback source step for run-length constraints
  double residual = 0.0;
  std::string message;
};

// Re-derive every model constraint from the domain objects (independently of
// any MilpProblem) and report all violations beyond 1e-6. An empty result
// certifies the schedule.
std::vector<Violation> validate_schedule(const Schedule& schedule, const Fleet& fleet,
                                         const Scenario& scenario, const Tariff& tariff,
                                         const ChanceSpec& chance, const InitialState& init);

struct CaseResult {
  std::string label;
  ScheduleReport report;
  std::vector<int> committed_count;  // per step
};

struct CompareTable {
  std::vector<std::string> labels;
  int horizon = 0;
  std::vector<std::vector<int>> committed_count;     // [case][t]
  std::vector<std::vector<int>> committed_delta;     // [case>=1][t], vs case 0
  std::vector<double> operation_cost;                // fuel + startup per case
  std::vector<double> revenue;
  std::vector<double> profit;
  std::vector<double> peak_realized_demand;
};

// Side-by-side case comparison; deltas are against the first label.
CompareTable compare_cases(const std::vector<CaseResult>& results);

}  // namespace ucdr

#endif
