/* SPDX-License-Identifier: Apache-2.0 */

#ifndef UCDR_IO_FORMATS_HPP
#define UCDR_IO_FORMATS_HPP

#include <optional>
#include <string>
#include <vector>

#include "ucdr/analysis.hpp"
#include "ucdr/branch_bound.hpp"
#include "ucdr/domain.hpp"

namespace ucdr {

// Loader failure with the first offending line and field (both 1-based).
class parse_error : public std::runtime_error {
 public:
  parse_error(int line, int column, const std::string& reason);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

// Shortest decimal form that parses back to the identical double.
std::string format_double(double value);

// Fleet table: header `id,b,p_max,p_min,ramp_up,ramp_down,min_up,min_down,S`
// followed by one unit per row.
Fleet load_fleet(const std::string& text);
std::string write_fleet(const Fleet& fleet);

// Scenario table: `key,value` sigma block (sigma_d optional, defaults 0),
// then `t,demand,wind,pv` rows with consecutive 1-based hours.
Scenario load_scenario(const std::string& text);
std::string write_scenario(const Scenario& scenario);

// Case parameters as `key = value` lines with # comments.
struct CaseConfig {
  double alpha = 0.9;
  DistributionKind distribution = DistributionKind::Normal;
  double elasticity = 0.0;
  std::vector<double> levels{7.0, 8.5, 10.0, 11.5, 13.0};
  double mean_price = 10.0;
  bool ramp_as_fraction = false;
  long node_limit = 100000;
  double time_limit_sec = 0.0;
  std::optional<std::vector<int>> init_committed;
  std::optional<std::vector<double>> init_output;
  std::optional<std::vector<int>> init_run_length;

  Tariff tariff() const;
  ChanceSpec chance() const;
  InitialState initial_state(const Fleet& fleet) const;
};

CaseConfig load_case_config(const std::string& text);

DistributionKind parse_distribution(const std::string& name);
const char* distribution_name(DistributionKind kind);

// Result files: per-step schedule table, per-step metrics table and a run
// summary. All numeric formatting is fixed so identical runs are
// byte-identical.
std::string write_schedule_csv(const Schedule& schedule, const Tariff& tariff);
std::string write_metrics_csv(const ScheduleReport& report);
std::string write_summary(const MilpSolution& solution, const ScheduleReport& report);
std::string write_compare_csv(const CompareTable& table);

Schedule load_schedule_csv(const std::string& text, int num_units, int num_levels);

// Helpers shared by the CLI: whole-file read/write with path-tagged errors.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace ucdr

#endif
