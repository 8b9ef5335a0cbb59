/* SPDX-License-Identifier: Apache-2.0 */

#include <iostream>

#include <CLI11.hpp>

#include "ucdr/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Thermal unit commitment with demand response and chance-constrained reserves"};
  app.require_subcommand(1);

  ucdr::Invocation inv;
  double alpha = 0.0, elasticity = 0.0, elasticity_b = 0.0, rbar = 0.0, time_limit = 0.0;
  long node_limit = 0;
  std::string dist;
  std::vector<double> levels;

  const auto add_case_options = [&](CLI::App* cmd) {
    cmd->add_option("--fleet", inv.fleet_path, "Fleet CSV (default: built-in reference fleet)");
    cmd->add_option("--scenario", inv.scenario_path,
                    "Scenario CSV (default: generated reference scenario)");
    cmd->add_option("--config", inv.config_path, "Case config file");
    cmd->add_option("--alpha", alpha, "Balance probability level")->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--dist", dist, "Forecast error distribution: normal|laplace|none");
    cmd->add_option("--elasticity", elasticity, "Price elasticity of demand (<= 0)");
    cmd->add_option("--levels", levels, "Tariff price levels (ascending)")->delimiter(',');
    cmd->add_option("--rbar", rbar, "Mean tariff price");
    cmd->add_option("--node-limit", node_limit, "Branch-and-bound node limit");
    cmd->add_option("--time-limit", time_limit, "Wall clock limit in seconds");
    cmd->add_option("--out", inv.out_dir, "Output directory");
  };

  auto* gen = app.add_subcommand("gen", "Generate a synthetic scenario file");
  gen->add_option("--seed", inv.gen.seed, "Random seed");
  gen->add_option("--horizon", inv.gen.horizon, "Number of time steps");
  gen->add_option("--peak", inv.gen.peak_demand, "Peak demand in MW");
  gen->add_option("--pv-cap", inv.gen.pv_capacity, "Installed PV capacity in MW");
  gen->add_option("--wind-cap", inv.gen.wind_capacity, "Installed wind capacity in MW");
  gen->add_option("--sigma-d", inv.gen.sigma_d, "Demand forecast error in MW");
  gen->add_option("--sigma-w", inv.gen.sigma_w, "Wind forecast error in MW");
  gen->add_option("--sigma-p", inv.gen.sigma_p, "PV forecast error in MW");
  int drop_start = 0, drop_end = 0;
  double drop_residual = 0.1;
  gen->add_option("--drop-start", drop_start, "Wind drop window start hour (1-based)");
  gen->add_option("--drop-end", drop_end, "Wind drop window end hour (inclusive)");
  gen->add_option("--drop-residual", drop_residual, "Remaining wind fraction inside the window");
  gen->add_option("--out", inv.out_dir, "Output scenario file");

  auto* solve = app.add_subcommand("solve", "Solve one commitment case");
  add_case_options(solve);
  auto* reserve = app.add_subcommand(
      "reserve", "Solve, then re-solve deterministically for the spinning reserve");
  add_case_options(reserve);
  auto* sweep =
      app.add_subcommand("sweep", "Solve the sigma_w = sigma_p in {3,6,9} MW case family");
  add_case_options(sweep);

  auto* compare = app.add_subcommand("compare", "Solve and compare two labeled cases");
  add_case_options(compare);
  compare->add_option("--scenario-b", inv.scenario_b_path, "Second case scenario CSV");
  compare->add_option("--elasticity-b", elasticity_b, "Second case elasticity override");
  compare->add_option("--label-a", inv.label_a, "First case label");
  compare->add_option("--label-b", inv.label_b, "Second case label");

  auto* export_mps = app.add_subcommand("export-mps", "Write the case MILP as a fixed-format MPS");
  add_case_options(export_mps);

  auto* validate = app.add_subcommand("validate", "Check a schedule file against all constraints");
  add_case_options(validate);
  validate->add_option("--schedule", inv.schedule_path, "Schedule CSV to check")->required();

  CLI11_PARSE(app, argc, argv);

  auto* cmd = app.get_subcommands().front();
  inv.command = cmd->get_name();
  if (cmd->count("--alpha")) inv.alpha = alpha;
  if (cmd->count("--dist")) inv.dist = dist;
  if (cmd->count("--elasticity")) inv.elasticity = elasticity;
  if (cmd->count("--levels")) inv.levels = levels;
  if (cmd->count("--rbar")) inv.mean_price = rbar;
  if (cmd->count("--node-limit")) inv.node_limit = node_limit;
  if (cmd->count("--time-limit")) inv.time_limit_sec = time_limit;
  if (inv.command == "compare" && cmd->count("--elasticity-b")) inv.elasticity_b = elasticity_b;
  if (inv.command == "gen" && drop_start > 0 && drop_end >= drop_start)
    inv.gen.wind_drop = ucdr::ScenarioSpec::WindDrop{drop_start, drop_end, drop_residual};

  return ucdr::run(inv, std::cout);
}
