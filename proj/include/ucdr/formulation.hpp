/* SPDX-License-Identifier: Apache-2.0 */

#ifndef UCDR_FORMULATION_HPP
#define UCDR_FORMULATION_HPP

#include <string>
#include <vector>

#include "ucdr/domain.hpp"

namespace ucdr {

enum class VarClass : std::uint8_t { Power, Commit, Startup, PriceLevel };

// Deterministic variable numbering for the commitment MILP. Four contiguous
// blocks, each step-major:
//   [0, NT)        p  output power, continuous
//   [NT, 2NT)      u  commitment, binary
//   [2NT, 3NT)     z  startup indicator, continuous in [0,1]
//   [3NT, 3NT+LT)  w  tariff level selection, binary
struct VarLayout {
  int num_units = 0;   // N
  int horizon = 0;     // T
  int num_levels = 0;  // L

  int p_index(int t, int i) const { return (t - 1) * num_units + (i - 1); }
  int u_index(int t, int i) const { return num_units * horizon + p_index(t, i); }
  int z_index(int t, int i) const { return 2 * num_units * horizon + p_index(t, i); }
  int w_index(int t, int l) const {
    return 3 * num_units * horizon + (t - 1) * num_levels + (l - 1);
  }
  int total_vars() const { return 3 * num_units * horizon + num_levels * horizon; }
  int num_binaries() const { return num_units * horizon + num_levels * horizon; }

  struct VarInfo {
    VarClass var_class;
    int t;  // 1..T
    int i;  // unit 1..N or level 1..L
  };
  VarInfo decode(int index) const;
  std::string var_name(int index) const;  // P_t_i, U_t_i, Z_t_i, W_t_l
};

// Throws std::invalid_argument unless all dimensions are >= 1.
VarLayout make_layout(int num_units, int horizon, int num_levels);

enum class RowSense : char { LessEqual = 'L', GreaterEqual = 'G', Equal = 'E' };

struct Row {
  std::vector<int> index;
  std::vector<double> value;
  RowSense sense = RowSense::LessEqual;
  double rhs = 0.0;
  ConstraintKind kind = ConstraintKind::Balance;
  int t = 0;  // time step the row belongs to, 0 for horizon-wide rows
  int i = 0;  // unit (or level) index, 0 when not applicable
  int s = 0;  // window source step for min-up/min-down rows, else 0
};

// Sparse profit-maximization MILP. The stored objective vector is the
// minimization form (negated profit); `maximize` records the reported sense.
struct MilpProblem {
  VarLayout layout;
  std::vector<double> objective;  // minimize objective . x + objective_constant
  double objective_constant = 0.0;
  bool maximize = true;           // reported objective is -(internal minimum)
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<bool> is_binary;    // u and w blocks
  std::vector<Row> rows;

  int num_vars() const { return static_cast<int>(objective.size()); }
  int num_rows() const { return static_cast<int>(rows.size()); }

  // Coefficient in the reported (profit) sense.
  double profit_coefficient(int index) const {
    return maximize ? -objective[static_cast<size_t>(index)]
                    : objective[static_cast<size_t>(index)];
  }
  double profit_from_internal(double internal_objective) const {
    return maximize ? -internal_objective : internal_objective;
  }
  // Profit of an assignment, evaluated directly from the stored objective.
  double profit_of(const std::vector<double>& x) const;
};

// Assemble the full commitment problem. Rows are emitted kind-major in a
// fixed order: price selection, balance, mean price cap, demand conservation,
// capacity pairs, ramp limits, minimum up/down windows, startup links.
// First-step rows fold the initial state into their right-hand sides; initial
// up/down time still owed is folded into the commitment bounds.
MilpProblem build(const Fleet& fleet, const Scenario& scenario, const Tariff& tariff,
                  const ChanceSpec& chance, const InitialState& init);

// build() with the deterministic balance (no reserve offset).
MilpProblem deterministic_variant(const Fleet& fleet, const Scenario& scenario,
                                  const Tariff& tariff, const InitialState& init);

// Copy of `problem` with every tariff variable's bounds clamped to the given
// 0/1 schedule (indexed [t-1][l-1]). Throws validation_error unless exactly
// one level is selected per step.
MilpProblem fix_tariff(const MilpProblem& problem,
                       const std::vector<std::vector<int>>& w_star);

}  // namespace ucdr

#endif
