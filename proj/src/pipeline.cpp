/* SPDX-License-Identifier: Apache-2.0 */

#include "ucdr/pipeline.hpp"

#include <future>

namespace ucdr {

CaseOutcome solve_case(const CaseInputs& inputs, bool use_heuristic) {
  CaseOutcome out;
  out.problem = build(inputs.fleet, inputs.scenario, inputs.tariff, inputs.chance, inputs.init);
  std::optional<IncumbentCandidate> candidate;
  if (use_heuristic)
    candidate = merit_order_incumbent(inputs.fleet, inputs.scenario, inputs.tariff, inputs.chance,
                                      inputs.init);
  out.solution = solve_milp(out.problem, inputs.search, candidate);
  if (out.solution.has_incumbent()) {
    out.schedule = schedule_from_point(out.problem.layout, out.solution.x,
                                       out.solution.objective);
    out.report = make_report(out.schedule, inputs.fleet, inputs.tariff, inputs.scenario);
    out.violations = validate_schedule(out.schedule, inputs.fleet, inputs.scenario, inputs.tariff,
                                       inputs.chance, inputs.init);
  }
  return out;
}

ReserveOutcome reserve_pipeline(const CaseInputs& inputs) {
  ReserveOutcome out;
  out.stochastic = solve_case(inputs);
  if (!out.stochastic.solution.has_incumbent()) return out;

  const Schedule& schedule = out.stochastic.schedule;
  std::vector<std::vector<int>> w_star(static_cast<size_t>(schedule.horizon),
                                       std::vector<int>(static_cast<size_t>(schedule.num_levels)));
  for (int t = 1; t <= schedule.horizon; ++t)
    for (int l = 1; l <= schedule.num_levels; ++l)
      w_star[static_cast<size_t>(t - 1)][static_cast<size_t>(l - 1)] = schedule.w(t, l);

  MilpProblem det = deterministic_variant(inputs.fleet, inputs.scenario, inputs.tariff, inputs.init);
  det = fix_tariff(det, w_star);

  // The chance-constrained incumbent satisfies the relaxed balance too.
  IncumbentCandidate seed{out.stochastic.solution.x, out.stochastic.solution.objective};
  out.det_solution = solve_milp(det, inputs.search, seed);
  if (out.det_solution.has_incumbent()) {
    out.det_schedule =
        schedule_from_point(det.layout, out.det_solution.x, out.det_solution.objective);
    out.reserve = spinning_reserve(schedule, out.det_schedule);
    out.stochastic.report.spinning_reserve = out.reserve;
  }
  return out;
}

std::vector<CaseOutcome> sweep_sigmas(const CaseInputs& base, const std::vector<double>& sigmas,
                                      bool use_heuristic) {
  std::vector<std::future<CaseOutcome>> jobs;
  jobs.reserve(sigmas.size());
  for (double sigma : sigmas) {
    CaseInputs inputs = base;
    inputs.scenario.sigma_w = sigma;
    inputs.scenario.sigma_p = sigma;
    jobs.push_back(std::async(std::launch::async,
                              [inputs, use_heuristic]() { return solve_case(inputs, use_heuristic); }));
  }
  std::vector<CaseOutcome> results;
  results.reserve(sigmas.size());
  for (auto& job : jobs) results.push_back(job.get());
  return results;
}

Fleet builtin_reference_fleet() {
  Fleet fleet;
  const auto add = [&](int id, double b, double p_max, double p_min, double ramp, int updown,
                       double startup) {
    ThermalUnit u;
    u.id = id;
    u.fuel_cost = b;
    u.p_max = p_max;
    u.p_min = p_min;
    u.ramp_up = ramp;
    u.ramp_down = ramp;
    u.min_up = updown;
    u.min_down = updown;
    u.startup_cost = startup;
    fleet.units.push_back(u);
  };
  add(1, 3.0, 50.0, 25.0, 0.5, 3, 1000.0);
  add(2, 3.0, 50.0, 25.0, 0.5, 3, 1000.0);
  add(3, 3.3, 15.0, 7.5, 0.5, 3, 200.0);
  add(4, 3.3, 15.0, 7.5, 0.5, 3, 200.0);
  add(5, 4.3, 6.0, 2.0, 5.0, 3, 100.0);
  add(6, 4.3, 6.0, 2.0, 5.0, 3, 100.0);
  add(7, 4.3, 6.0, 2.0, 5.0, 3, 100.0);
  add(8, 7.1, 10.0, 4.0, 5.0, 3, 200.0);
  add(9, 7.1, 10.0, 4.0, 5.0, 3, 200.0);
  add(10, 7.1, 10.0, 4.0, 5.0, 3, 200.0);
  add(11, 9.0, 5.0, 2.5, 0.5, 3, 100.0);
  add(12, 9.0, 5.0, 2.5, 0.5, 3, 100.0);
  return fleet;
}

}  // namespace ucdr
