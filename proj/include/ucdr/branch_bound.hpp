/* SPDX-License-Identifier: Apache-2.0 */

#ifndef UCDR_BRANCH_BOUND_HPP
#define UCDR_BRANCH_BOUND_HPP

#include <optional>
#include <vector>

#include "ucdr/formulation.hpp"
#include "ucdr/simplex.hpp"

namespace ucdr {

enum class BranchRule : std::uint8_t { MostFractional, FirstFractional };

struct SearchConfig {
  double integrality_tol = 1e-6;
  double relative_gap = 1e-6;
  double absolute_gap = 1e-9;
  long node_limit = 100000;      // 0 means unlimited
  double time_limit_sec = 0.0;   // 0 means unlimited
  BranchRule branch_rule = BranchRule::MostFractional;
  SimplexConfig lp;
};

enum class MilpStatus : std::uint8_t { Optimal, FeasibleWithGap, Infeasible, LimitReached };

const char* milp_status_name(MilpStatus status);

struct MilpSolution {
  MilpStatus status = MilpStatus::Infeasible;
  VarLayout layout;
  std::vector<double> x;     // incumbent over all variables, empty if none
  double objective = 0.0;    // profit of the incumbent
  double best_bound = 0.0;   // certified profit bound
  double gap = 0.0;          // |bound - objective| / max(1, |objective|)
  long node_count = 0;
  long lp_solve_count = 0;
  long lp_iterations = 0;
  int bound_monotonicity_violations = 0;

  bool has_incumbent() const { return !x.empty(); }
};

struct IncumbentCandidate {
  std::vector<double> x;
  double profit = 0.0;
};

// Relax integrality; rows, bounds and the minimization objective carry over.
LinearProgram to_linear_program(const MilpProblem& problem);

// Index of the binary variable to branch on, or nullopt when every listed
// binary is within `tol` of an integer. MostFractional maximizes
// min(f, 1 - f) with lowest-index tie-breaking; FirstFractional returns the
// lowest fractional index.
std::optional<int> choose_branch_var(const std::vector<double>& x,
                                     const std::vector<int>& binary_indices, BranchRule rule,
                                     double tol);

// Best-bound branch-and-bound over the binary commitment and tariff
// variables. An optional initial incumbent seeds the cutoff; search
// correctness never depends on it.
MilpSolution solve_milp(const MilpProblem& problem, const SearchConfig& config = SearchConfig{},
                        const std::optional<IncumbentCandidate>& initial = std::nullopt);

// Commit units in ascending fuel cost until capacity covers net demand plus
// the reserve offset, repair minimum up/down runs, then dispatch by LP with
// the commitment fixed and the tariff pinned to the highest level not above
// the mean price. Returns nullopt when the repair is infeasible.
std::optional<IncumbentCandidate> merit_order_incumbent(const Fleet& fleet,
                                                        const Scenario& scenario,
                                                        const Tariff& tariff,
                                                        const ChanceSpec& chance,
                                                        const InitialState& init);

}  // namespace ucdr

#endif
