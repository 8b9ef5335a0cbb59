/* SPDX-License-Identifier: Apache-2.0 */

#ifndef UCDR_PIPELINE_HPP
#define UCDR_PIPELINE_HPP

#include <vector>

#include "ucdr/analysis.hpp"
#include "ucdr/branch_bound.hpp"

namespace ucdr {

// Everything one commitment case needs.
struct CaseInputs {
  Fleet fleet;
  Scenario scenario;
  Tariff tariff;
  ChanceSpec chance;
  InitialState init;
  SearchConfig search;
};

struct CaseOutcome {
  MilpProblem problem;
  MilpSolution solution;
  Schedule schedule;  // meaningful only when solution.has_incumbent()
  ScheduleReport report;
  std::vector<Violation> violations;
};

// Build, seed with the merit-order candidate, solve, post-process and run the
// independent validator over the incumbent.
CaseOutcome solve_case(const CaseInputs& inputs, bool use_heuristic = true);

struct ReserveOutcome {
  CaseOutcome stochastic;
  MilpSolution det_solution;
  Schedule det_schedule;
  std::vector<double> reserve;  // per-step output difference
};

// Chance-constrained solve, then a deterministic re-solve with the tariff
// pinned to the stochastic selection; the commitment is re-optimized. The
// stochastic incumbent stays feasible for the relaxed balance and seeds the
// second search.
ReserveOutcome reserve_pipeline(const CaseInputs& inputs);

// Identical case under sigma_w = sigma_p = s for each requested s. Member
// solves run concurrently; results come back in the given order.
std::vector<CaseOutcome> sweep_sigmas(const CaseInputs& base, const std::vector<double>& sigmas,
                                      bool use_heuristic = true);

// The twelve-unit reference fleet used across the case studies.
Fleet builtin_reference_fleet();

}  // namespace ucdr

#endif
