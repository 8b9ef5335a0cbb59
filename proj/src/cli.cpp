/* SPDX-License-Identifier: Apache-2.0 */

#include "ucdr/cli.hpp"

#include <filesystem>
#include <ostream>

#include "ucdr/io_formats.hpp"
#include "ucdr/mps.hpp"
#include "ucdr/pipeline.hpp"
#include "ucdr/stochastics.hpp"

namespace ucdr {

namespace {

namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitInfeasible = 1;
constexpr int kExitInputError = 2;
constexpr int kExitLimit = 3;

struct LoadedCase {
  CaseInputs inputs;
  CaseConfig config;
};

Fleet load_fleet_arg(const Invocation& inv) {
  if (inv.fleet_path.empty()) return builtin_reference_fleet();
  return load_fleet(read_text_file(inv.fleet_path));
}

Scenario load_scenario_arg(const std::string& path) {
  if (path.empty()) return generate_scenario(ScenarioSpec{});
  return load_scenario(read_text_file(path));
}

LoadedCase assemble_case(const Invocation& inv, const std::string& scenario_path) {
  LoadedCase out;
  if (!inv.config_path.empty()) out.config = load_case_config(read_text_file(inv.config_path));
  CaseConfig& config = out.config;
  if (inv.alpha) config.alpha = *inv.alpha;
  if (inv.dist) config.distribution = parse_distribution(*inv.dist);
  if (inv.elasticity) config.elasticity = *inv.elasticity;
  if (inv.levels) config.levels = *inv.levels;
  if (inv.mean_price) config.mean_price = *inv.mean_price;
  if (inv.node_limit) config.node_limit = *inv.node_limit;
  if (inv.time_limit_sec) config.time_limit_sec = *inv.time_limit_sec;

  Fleet fleet = load_fleet_arg(inv);
  if (config.ramp_as_fraction) fleet = ramps_as_capacity_fraction(fleet);
  validate_fleet(fleet);

  out.inputs.fleet = fleet;
  out.inputs.scenario = load_scenario_arg(scenario_path);
  out.inputs.tariff = config.tariff();
  validate_tariff(out.inputs.tariff);
  out.inputs.chance = config.chance();
  validate_chance(out.inputs.chance);
  out.inputs.init = config.initial_state(fleet);
  out.inputs.search.node_limit = config.node_limit;
  out.inputs.search.time_limit_sec = config.time_limit_sec;
  out.inputs.search.relative_gap = 1e-4;
  return out;
}

void ensure_dir(const std::string& path) {
  if (!path.empty()) fs::create_directories(path);
}

std::string join(const std::string& dir, const std::string& file) {
  return (fs::path(dir) / file).string();
}

void write_case_outputs(const std::string& dir, const CaseInputs& inputs,
                        const CaseOutcome& outcome) {
  ensure_dir(dir);
  if (outcome.solution.has_incumbent()) {
    write_text_file(join(dir, "schedule.csv"),
                    write_schedule_csv(outcome.schedule, inputs.tariff));
    write_text_file(join(dir, "metrics.csv"), write_metrics_csv(outcome.report));
  }
  write_text_file(join(dir, "summary.txt"), write_summary(outcome.solution, outcome.report));
  if (!outcome.violations.empty()) {
    std::string report;
    for (const Violation& v : outcome.violations) report += v.message + "\n";
    write_text_file(join(dir, "violations.txt"), report);
  }
}

int exit_code_for(const MilpSolution& solution) {
  switch (solution.status) {
    case MilpStatus::Optimal: return kExitOk;
    case MilpStatus::Infeasible: return kExitInfeasible;
    case MilpStatus::FeasibleWithGap:
    case MilpStatus::LimitReached: return kExitLimit;
  }
  return kExitInputError;
}

CaseResult to_case_result(const std::string& label, const CaseOutcome& outcome) {
  CaseResult result;
  result.label = label;
  result.report = outcome.report;
  result.committed_count.resize(static_cast<size_t>(outcome.schedule.horizon));
  for (int t = 1; t <= outcome.schedule.horizon; ++t)
    result.committed_count[static_cast<size_t>(t - 1)] = outcome.schedule.committed_count(t);
  return result;
}

int cmd_gen(const Invocation& inv, std::ostream& log) {
  const Scenario scenario = generate_scenario(inv.gen);
  const std::string path = inv.out_dir.empty() ? "scenario.csv" : inv.out_dir;
  write_text_file(path, write_scenario(scenario));
  log << "wrote " << path << "\n";
  return kExitOk;
}

int cmd_solve(const Invocation& inv, std::ostream& log) {
  const LoadedCase loaded = assemble_case(inv, inv.scenario_path);
  const CaseOutcome outcome = solve_case(loaded.inputs);
  const std::string dir = inv.out_dir.empty() ? "out" : inv.out_dir;
  write_case_outputs(dir, loaded.inputs, outcome);
  log << "status " << milp_status_name(outcome.solution.status) << ", objective "
      << outcome.solution.objective << ", gap " << outcome.solution.gap << ", nodes "
      << outcome.solution.node_count << ", violations " << outcome.violations.size() << "\n";
  return exit_code_for(outcome.solution);
}

int cmd_reserve(const Invocation& inv, std::ostream& log) {
  const LoadedCase loaded = assemble_case(inv, inv.scenario_path);
  const ReserveOutcome outcome = reserve_pipeline(loaded.inputs);
  const std::string dir = inv.out_dir.empty() ? "out" : inv.out_dir;
  write_case_outputs(dir, loaded.inputs, outcome.stochastic);
  if (outcome.det_solution.has_incumbent()) {
    write_text_file(join(dir, "schedule_det.csv"),
                    write_schedule_csv(outcome.det_schedule, loaded.inputs.tariff));
    ScheduleReport det_report =
        make_report(outcome.det_schedule, loaded.inputs.fleet, loaded.inputs.tariff,
                    loaded.inputs.scenario);
    write_text_file(join(dir, "summary_det.txt"),
                    write_summary(outcome.det_solution, det_report));
  }
  log << "stochastic status " << milp_status_name(outcome.stochastic.solution.status)
      << ", deterministic status " << milp_status_name(outcome.det_solution.status) << "\n";
  const int a = exit_code_for(outcome.stochastic.solution);
  const int b = exit_code_for(outcome.det_solution);
  return std::max(a, b);
}

int cmd_sweep(const Invocation& inv, std::ostream& log) {
  const LoadedCase loaded = assemble_case(inv, inv.scenario_path);
  const std::vector<double> sigmas{3.0, 6.0, 9.0};
  const std::vector<CaseOutcome> outcomes = sweep_sigmas(loaded.inputs, sigmas);
  const std::string dir = inv.out_dir.empty() ? "out" : inv.out_dir;
  ensure_dir(dir);

  std::vector<CaseResult> results;
  std::string table = "sigma,reserve_offset,operation_cost,revenue,profit,status\n";
  int exit_code = kExitOk;
  for (size_t k = 0; k < sigmas.size(); ++k) {
    const CaseOutcome& outcome = outcomes[k];
    char label[32];
    std::snprintf(label, sizeof(label), "sigma%g", sigmas[k]);
    write_case_outputs(join(dir, label), loaded.inputs, outcome);
    CaseInputs case_inputs = loaded.inputs;
    case_inputs.scenario.sigma_w = sigmas[k];
    case_inputs.scenario.sigma_p = sigmas[k];
    const double offset = reserve_offset(loaded.inputs.chance, case_inputs.scenario);
    char line[256];
    std::snprintf(line, sizeof(line), "%g,%.6f,%.6f,%.6f,%.6f,%s\n", sigmas[k], offset,
                  outcome.report.total_fuel_cost + outcome.report.total_startup_cost,
                  outcome.report.total_revenue, outcome.report.total_profit,
                  milp_status_name(outcome.solution.status));
    table += line;
    if (outcome.solution.has_incumbent()) results.push_back(to_case_result(label, outcome));
    exit_code = std::max(exit_code, exit_code_for(outcome.solution));
  }
  write_text_file(join(dir, "sweep.csv"), table);
  if (results.size() == sigmas.size())
    write_text_file(join(dir, "compare.csv"), write_compare_csv(compare_cases(results)));
  log << "sweep written to " << dir << "\n";
  return exit_code;
}

int cmd_compare(const Invocation& inv, std::ostream& log) {
  LoadedCase case_a = assemble_case(inv, inv.scenario_path);
  Invocation inv_b = inv;
  if (inv.elasticity_b) inv_b.elasticity = inv.elasticity_b;
  LoadedCase case_b = assemble_case(
      inv_b, inv.scenario_b_path.empty() ? inv.scenario_path : inv.scenario_b_path);

  const CaseOutcome outcome_a = solve_case(case_a.inputs);
  const CaseOutcome outcome_b = solve_case(case_b.inputs);
  const std::string dir = inv.out_dir.empty() ? "out" : inv.out_dir;
  write_case_outputs(join(dir, inv.label_a), case_a.inputs, outcome_a);
  write_case_outputs(join(dir, inv.label_b), case_b.inputs, outcome_b);
  int exit_code =
      std::max(exit_code_for(outcome_a.solution), exit_code_for(outcome_b.solution));
  if (outcome_a.solution.has_incumbent() && outcome_b.solution.has_incumbent()) {
    const CompareTable table = compare_cases(
        {to_case_result(inv.label_a, outcome_a), to_case_result(inv.label_b, outcome_b)});
    write_text_file(join(dir, "compare.csv"), write_compare_csv(table));
  }
  log << "compared '" << inv.label_a << "' and '" << inv.label_b << "' into " << dir << "\n";
  return exit_code;
}

int cmd_export_mps(const Invocation& inv, std::ostream& log) {
  const LoadedCase loaded = assemble_case(inv, inv.scenario_path);
  const MilpProblem problem = build(loaded.inputs.fleet, loaded.inputs.scenario,
                                    loaded.inputs.tariff, loaded.inputs.chance,
                                    loaded.inputs.init);
  const std::string path = inv.out_dir.empty() ? "problem.mps" : inv.out_dir;
  write_text_file(path, export_mps(problem));
  log << "wrote " << path << "\n";
  return kExitOk;
}

int cmd_validate(const Invocation& inv, std::ostream& log) {
  const LoadedCase loaded = assemble_case(inv, inv.scenario_path);
  const Schedule schedule =
      load_schedule_csv(read_text_file(inv.schedule_path), loaded.inputs.fleet.size(),
                        loaded.inputs.tariff.num_levels());
  const std::vector<Violation> violations =
      validate_schedule(schedule, loaded.inputs.fleet, loaded.inputs.scenario,
                        loaded.inputs.tariff, loaded.inputs.chance, loaded.inputs.init);
  if (!inv.out_dir.empty()) {
    ensure_dir(inv.out_dir);
    std::string report;
    for (const Violation& v : violations) report += v.message + "\n";
    write_text_file(join(inv.out_dir, "violations.txt"), report);
  }
  if (violations.empty()) {
    log << "schedule is feasible\n";
  } else {
    for (const Violation& v : violations) log << v.message << "\n";
    log << violations.size() << " violation(s)\n";
  }
  return kExitOk;
}

}  // namespace

int run(const Invocation& invocation, std::ostream& log) {
  try {
    if (invocation.command == "gen") return cmd_gen(invocation, log);
    if (invocation.command == "solve") return cmd_solve(invocation, log);
    if (invocation.command == "reserve") return cmd_reserve(invocation, log);
    if (invocation.command == "sweep") return cmd_sweep(invocation, log);
    if (invocation.command == "compare") return cmd_compare(invocation, log);
    if (invocation.command == "export-mps") return cmd_export_mps(invocation, log);
    if (invocation.command == "validate") return cmd_validate(invocation, log);
    log << "unknown command '" << invocation.command << "'\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << "\n";
    return kExitInputError;
  }
}

}  // namespace ucdr
