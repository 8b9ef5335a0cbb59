/* SPDX-License-Identifier: Apache-2.0 */

#include "ucdr/formulation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "ucdr/stochastics.hpp"

namespace ucdr {

VarLayout::VarInfo VarLayout::decode(int index) const {
  const int nt = num_units * horizon;
  if (index < 0 || index >= total_vars()) throw std::out_of_range("variable index");
  VarClass cls;
  int base;
  if (index < nt) {
    cls = VarClass::Power;
    base = index;
  } else if (index < 2 * nt) {
    cls = VarClass::Commit;
    base = index - nt;
  } else if (index < 3 * nt) {
    cls = VarClass::Startup;
    base = index - 2 * nt;
  } else {
    const int off = index - 3 * nt;
    return VarInfo{VarClass::PriceLevel, off / num_levels + 1, off % num_levels + 1};
  }
  return VarInfo{cls, base / num_units + 1, base % num_units + 1};
}

std::string VarLayout::var_name(int index) const {
  const VarInfo info = decode(index);
  const char* prefix = "P";
  switch (info.var_class) {
    case VarClass::Power: prefix = "P"; break;
    case VarClass::Commit: prefix = "U"; break;
    case VarClass::Startup: prefix = "Z"; break;
    case VarClass::PriceLevel: prefix = "W"; break;
  }
  std::ostringstream os;
  os << prefix << "_" << info.t << "_" << info.i;
  return os.str();
}

VarLayout make_layout(int num_units, int horizon, int num_levels) {
  if (num_units < 1 || horizon < 1 || num_levels < 1)
    throw std::invalid_argument("layout dimensions must all be >= 1");
  return VarLayout{num_units, horizon, num_levels};
}

double MilpProblem::profit_of(const std::vector<double>& x) const {
  double v = objective_constant;
  for (int j = 0; j < num_vars(); ++j) v += objective[static_cast<size_t>(j)] * x[static_cast<size_t>(j)];
  return profit_from_internal(v);
}

namespace {

Row make_row(ConstraintKind kind, RowSense sense, double rhs, int t, int i, int s) {
  Row row;
  row.kind = kind;
  row.sense = sense;
  row.rhs = rhs;
  row.t = t;
  row.i = i;
  row.s = s;
  return row;
}

}  // namespace

MilpProblem build(const Fleet& fleet, const Scenario& scenario, const Tariff& tariff,
                  const ChanceSpec& chance, const InitialState& init) {
  validate_fleet(fleet);
  validate_scenario(scenario);
  validate_tariff(tariff);
  validate_chance(chance);
  validate_initial_state(init, fleet);

  const int N = fleet.size();
  const int T = scenario.horizon;
  const int L = tariff.num_levels();

  MilpProblem prob;
  prob.layout = make_layout(N, T, L);
  const VarLayout& lay = prob.layout;
  const int n = lay.total_vars();
  prob.objective.assign(static_cast<size_t>(n), 0.0);
  prob.lower.assign(static_cast<size_t>(n), 0.0);
  prob.upper.assign(static_cast<size_t>(n), 1.0);
  prob.is_binary.assign(static_cast<size_t>(n), false);
  prob.maximize = true;

  std::vector<double> factor(static_cast<size_t>(L));
  for (int l = 1; l <= L; ++l) factor[static_cast<size_t>(l - 1)] = demand_factor(l, tariff);

  const double offset = reserve_offset(chance, scenario);

  // Bounds, integrality, objective. Stored objective minimizes -profit.
  for (int t = 1; t <= T; ++t) {
    const double d_t = scenario.demand[static_cast<size_t>(t - 1)];
    for (int i = 1; i <= N; ++i) {
      const ThermalUnit& unit = fleet.unit(i - 1);
      prob.lower[static_cast<size_t>(lay.p_index(t, i))] = 0.0;
      prob.upper[static_cast<size_t>(lay.p_index(t, i))] = unit.p_max;
      prob.is_binary[static_cast<size_t>(lay.u_index(t, i))] = true;
      prob.objective[static_cast<size_t>(lay.p_index(t, i))] = unit.fuel_cost;
      prob.objective[static_cast<size_t>(lay.z_index(t, i))] = unit.startup_cost;
    }
    for (int l = 1; l <= L; ++l) {
      prob.is_binary[static_cast<size_t>(lay.w_index(t, l))] = true;
      prob.objective[static_cast<size_t>(lay.w_index(t, l))] =
          -d_t * tariff.levels[static_cast<size_t>(l - 1)] * factor[static_cast<size_t>(l - 1)];
    }
  }

  // Initial up/down time still owed forces the first commitment values.
  for (int i = 1; i <= N; ++i) {
    const ThermalUnit& unit = fleet.unit(i - 1);
    const InitialState::UnitState& state = init.units[static_cast<size_t>(i - 1)];
    const int owed = (state.committed ? unit.min_up : unit.min_down) - state.run_length;
    for (int t = 1; t <= std::min(owed, T); ++t) {
      if (state.committed)
        prob.lower[static_cast<size_t>(lay.u_index(t, i))] = 1.0;
      else
        prob.upper[static_cast<size_t>(lay.u_index(t, i))] = 0.0;
    }
  }

  // Exactly one price level per step.
  for (int t = 1; t <= T; ++t) {
    Row row = make_row(ConstraintKind::PriceSelection, RowSense::Equal, 1.0, t, 0, 0);
    for (int l = 1; l <= L; ++l) {
      row.index.push_back(lay.w_index(t, l));
      row.value.push_back(1.0);
    }
    prob.rows.push_back(std::move(row));
  }

  // Supply covers the responsive demand plus the reserve offset.
  for (int t = 1; t <= T; ++t) {
    const double d_t = scenario.demand[static_cast<size_t>(t - 1)];
    const double renewables =
        scenario.wind[static_cast<size_t>(t - 1)] + scenario.pv[static_cast<size_t>(t - 1)];
    Row row = make_row(ConstraintKind::Balance, RowSense::GreaterEqual, offset - renewables, t, 0, 0);
    for (int i = 1; i <= N; ++i) {
      row.index.push_back(lay.p_index(t, i));
      row.value.push_back(1.0);
    }
    for (int l = 1; l <= L; ++l) {
      row.index.push_back(lay.w_index(t, l));
      row.value.push_back(-d_t * factor[static_cast<size_t>(l - 1)]);
    }
    prob.rows.push_back(std::move(row));
  }

  // Horizon mean of selected prices capped at the reference price.
  {
    Row row = make_row(ConstraintKind::MeanPriceCap, RowSense::LessEqual,
                       static_cast<double>(T) * tariff.mean_price, 0, 0, 0);
    for (int t = 1; t <= T; ++t)
      for (int l = 1; l <= L; ++l) {
        row.index.push_back(lay.w_index(t, l));
        row.value.push_back(tariff.levels[static_cast<size_t>(l - 1)]);
      }
    prob.rows.push_back(std::move(row));
  }

  // Total responsive demand may not fall below the total forecast demand.
  {
    double total_demand = 0.0;
    for (int t = 1; t <= T; ++t) total_demand += scenario.demand[static_cast<size_t>(t - 1)];
    Row row = make_row(ConstraintKind::DemandConservation, RowSense::GreaterEqual, total_demand,
                       0, 0, 0);
    for (int t = 1; t <= T; ++t) {
      const double d_t = scenario.demand[static_cast<size_t>(t - 1)];
      for (int l = 1; l <= L; ++l) {
        row.index.push_back(lay.w_index(t, l));
        row.value.push_back(d_t * factor[static_cast<size_t>(l - 1)]);
      }
    }
    prob.rows.push_back(std::move(row));
  }

  // Output stays inside [p_min, p_max] while committed and at zero otherwise.
  for (int i = 1; i <= N; ++i) {
    const ThermalUnit& unit = fleet.unit(i - 1);
    for (int t = 1; t <= T; ++t) {
      Row low = make_row(ConstraintKind::CapacityLower, RowSense::GreaterEqual, 0.0, t, i, 0);
      low.index = {lay.p_index(t, i), lay.u_index(t, i)};
      low.value = {1.0, -unit.p_min};
      prob.rows.push_back(std::move(low));

      Row high = make_row(ConstraintKind::CapacityUpper, RowSense::LessEqual, 0.0, t, i, 0);
      high.index = {lay.p_index(t, i), lay.u_index(t, i)};
      high.value = {1.0, -unit.p_max};
      prob.rows.push_back(std::move(high));
    }
  }

  // Ramp-up: increase limited to ramp_up when already on, to p_min on start.
  for (int i = 1; i <= N; ++i) {
    const ThermalUnit& unit = fleet.unit(i - 1);
    const InitialState::UnitState& state = init.units[static_cast<size_t>(i - 1)];
    for (int t = 1; t <= T; ++t) {
      Row row = make_row(ConstraintKind::RampUp, RowSense::LessEqual, 0.0, t, i, 0);
      if (t == 1) {
        const double u0 = state.committed ? 1.0 : 0.0;
        row.rhs = state.output + u0 * unit.ramp_up + (1.0 - u0) * unit.p_min;
        row.index = {lay.p_index(1, i)};
        row.value = {1.0};
      } else {
        row.rhs = unit.p_min;
        row.index = {lay.p_index(t, i), lay.p_index(t - 1, i), lay.u_index(t - 1, i)};
        row.value = {1.0, -1.0, -(unit.ramp_up - unit.p_min)};
      }
      prob.rows.push_back(std::move(row));
    }
  }

  // Ramp-down: decrease limited to ramp_down while on at t, to p_max on stop.
  for (int i = 1; i <= N; ++i) {
    const ThermalUnit& unit = fleet.unit(i - 1);
    const InitialState::UnitState& state = init.units[static_cast<size_t>(i - 1)];
    for (int t = 1; t <= T; ++t) {
      Row row = make_row(ConstraintKind::RampDown, RowSense::GreaterEqual, 0.0, t, i, 0);
      if (t == 1) {
        row.rhs = state.output - unit.p_max;
        row.index = {lay.p_index(1, i), lay.u_index(1, i)};
        row.value = {1.0, -(unit.p_max - unit.ramp_down)};
      } else {
        row.rhs = -unit.p_max;
        row.index = {lay.p_index(t, i), lay.p_index(t - 1, i), lay.u_index(t, i)};
        row.value = {1.0, -1.0, -(unit.p_max - unit.ramp_down)};
      }
      prob.rows.push_back(std::move(row));
    }
  }

  // Minimum up time: a start inside the lookback window keeps the unit on.
  for (int i = 1; i <= N; ++i) {
    const ThermalUnit& unit = fleet.unit(i - 1);
    const InitialState::UnitState& state = init.units[static_cast<size_t>(i - 1)];
    const double u0 = state.committed ? 1.0 : 0.0;
    for (int t = 1; t <= T; ++t) {
      for (int s = std::max(1, t - unit.min_up); s <= t - 1; ++s) {
        Row row = make_row(ConstraintKind::MinUp, RowSense::GreaterEqual, 0.0, t, i, s);
        if (s == 1) {
          row.rhs = -u0;
          row.index = {lay.u_index(t, i), lay.u_index(1, i)};
          row.value = {1.0, -1.0};
        } else {
          row.index = {lay.u_index(t, i), lay.u_index(s, i), lay.u_index(s - 1, i)};
          row.value = {1.0, -1.0, 1.0};
        }
        prob.rows.push_back(std::move(row));
      }
    }
  }

  // Minimum down time: a stop inside the lookback window keeps the unit off.
  for (int i = 1; i <= N; ++i) {
    const ThermalUnit& unit = fleet.unit(i - 1);
    const InitialState::UnitState& state = init.units[static_cast<size_t>(i - 1)];
    const double u0 = state.committed ? 1.0 : 0.0;
    for (int t = 1; t <= T; ++t) {
      for (int s = std::max(1, t - unit.min_down); s <= t - 1; ++s) {
        Row row = make_row(ConstraintKind::MinDown, RowSense::LessEqual, 1.0, t, i, s);
        if (s == 1) {
          row.rhs = 1.0 - u0;
          row.index = {lay.u_index(t, i), lay.u_index(1, i)};
          row.value = {1.0, -1.0};
        } else {
          row.index = {lay.u_index(t, i), lay.u_index(s, i), lay.u_index(s - 1, i)};
          row.value = {1.0, -1.0, 1.0};
        }
        prob.rows.push_back(std::move(row));
      }
    }
  }

  // Startup indicator dominates the commitment increase.
  for (int i = 1; i <= N; ++i) {
    const InitialState::UnitState& state = init.units[static_cast<size_t>(i - 1)];
    const double u0 = state.committed ? 1.0 : 0.0;
    for (int t = 1; t <= T; ++t) {
      Row row = make_row(ConstraintKind::StartupLink, RowSense::GreaterEqual, 0.0, t, i, 0);
      if (t == 1) {
        row.rhs = -u0;
        row.index = {lay.z_index(1, i), lay.u_index(1, i)};
        row.value = {1.0, -1.0};
      } else {
        row.index = {lay.z_index(t, i), lay.u_index(t, i), lay.u_index(t - 1, i)};
        row.value = {1.0, -1.0, 1.0};
      }
      prob.rows.push_back(std::move(row));
    }
  }

  return prob;
}

MilpProblem deterministic_variant(const Fleet& fleet, const Scenario& scenario,
                                  const Tariff& tariff, const InitialState& init) {
  return build(fleet, scenario, tariff,
               ChanceSpec{0.5, DistributionKind::Deterministic}, init);
}

MilpProblem fix_tariff(const MilpProblem& problem,
                       const std::vector<std::vector<int>>& w_star) {
  const VarLayout& lay = problem.layout;
  if (static_cast<int>(w_star.size()) != lay.horizon)
    throw validation_error("tariff schedule must cover the full horizon");
  for (int t = 1; t <= lay.horizon; ++t) {
    const auto& step = w_star[static_cast<size_t>(t - 1)];
    if (static_cast<int>(step.size()) != lay.num_levels)
      throw validation_error("tariff schedule must cover all price levels");
    int selected = 0;
    for (int v : step) {
      if (v != 0 && v != 1) throw validation_error("tariff schedule entries must be 0 or 1");
      selected += v;
    }
    if (selected != 1) {
      std::ostringstream os;
      os << "tariff schedule must select exactly one level at step " << t << ", got " << selected;
      throw validation_error(os.str());
    }
  }

  MilpProblem clamped = problem;
  for (int t = 1; t <= lay.horizon; ++t)
    for (int l = 1; l <= lay.num_levels; ++l) {
      const double v = static_cast<double>(w_star[static_cast<size_t>(t - 1)][static_cast<size_t>(l - 1)]);
      clamped.lower[static_cast<size_t>(lay.w_index(t, l))] = v;
      clamped.upper[static_cast<size_t>(lay.w_index(t, l))] = v;
    }
  return clamped;
}

}  // namespace ucdr
