/* SPDX-License-Identifier: Apache-2.0 */

#ifndef UCDR_CLI_HPP
#define UCDR_CLI_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ucdr/scenario_gen.hpp"

namespace ucdr {

// One parsed command invocation; the thin argv front end fills this in.
struct Invocation {
  std::string command;  // gen solve reserve sweep compare export-mps validate
  std::string fleet_path;      // empty selects the built-in reference fleet
  std::string scenario_path;   // empty generates the default reference scenario
  std::string scenario_b_path; // compare: second case, defaults to the first
  std::string config_path;
  std::string schedule_path;   // validate
  std::string out_dir;         // result directory (file path for gen/export-mps)

  std::optional<double> alpha;
  std::optional<std::string> dist;
  std::optional<double> elasticity;
  std::optional<double> elasticity_b;  // compare: second case override
  std::optional<std::vector<double>> levels;
  std::optional<double> mean_price;
  std::optional<long> node_limit;
  std::optional<double> time_limit_sec;
  std::string label_a = "a";
  std::string label_b = "b";

  ScenarioSpec gen;  // gen command parameters
};

// Exit codes: 0 ok, 1 model infeasible, 2 input error, 3 limit reached
// (incumbent files are still written when one exists).
int run(const Invocation& invocation, std::ostream& log);

}  // namespace ucdr

#endif
