/* SPDX-License-Identifier: Apache-2.0 */

#include <cmath>
#include <cstdlib>
#include <cstdio>
#include <sstream>

#include "ucdr/io_formats.hpp"

namespace ucdr {

namespace {

std::string fixed6(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6f", value);
  return buf;
}

std::string fixed9(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9f", value);
  return buf;
}

std::vector<std::string> split_lines_local(const std::string& text) {
  std::vector<std::string> lines;
  std::string current;
  for (char c : text) {
    if (c == '\n') {
      lines.push_back(current);
      current.clear();
    } else if (c != '\r') {
      current += c;
    }
  }
  if (!current.empty()) lines.push_back(current);
  return lines;
}

std::vector<std::string> split_fields_local(const std::string& line) {
  std::vector<std::string> fields;
  std::string current;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(current);
      current.clear();
    } else {
      current += c;
    }
  }
  fields.push_back(current);
  return fields;
}

}  // namespace

std::string write_schedule_csv(const Schedule& schedule, const Tariff& tariff) {
  std::ostringstream os;
  os << "t";
  for (int i = 1; i <= schedule.num_units; ++i) os << ",p_" << i;
  for (int i = 1; i <= schedule.num_units; ++i) os << ",u_" << i;
  for (int i = 1; i <= schedule.num_units; ++i) os << ",z_" << i;
  os << ",level,price\n";
  for (int t = 1; t <= schedule.horizon; ++t) {
    os << t;
    for (int i = 1; i <= schedule.num_units; ++i) os << ',' << fixed6(schedule.p(t, i));
    for (int i = 1; i <= schedule.num_units; ++i) os << ',' << schedule.u(t, i);
    for (int i = 1; i <= schedule.num_units; ++i) os << ',' << schedule.z(t, i);
    const int level = schedule.selected_level(t);
    os << ',' << level << ','
       << (level > 0 ? fixed6(tariff.levels[static_cast<size_t>(level - 1)]) : "na") << "\n";
  }
  return os.str();
}

std::string write_metrics_csv(const ScheduleReport& report) {
  std::ostringstream os;
  os << "t,marginal_cost,spinning_reserve,lfc_margin,revenue,realized_demand\n";
  const int T = static_cast<int>(report.revenue.size());
  for (int t = 1; t <= T; ++t) {
    const size_t k = static_cast<size_t>(t - 1);
    os << t << ',';
    if (k < report.marginal_cost.size() && report.marginal_cost[k].has_value())
      os << fixed6(*report.marginal_cost[k]);
    else
      os << "none";
    os << ',';
    if (k < report.spinning_reserve.size())
      os << fixed6(report.spinning_reserve[k]);
    else
      os << "na";
    os << ',' << (k < report.lfc_margin.size() ? fixed6(report.lfc_margin[k]) : "na");
    os << ',' << fixed6(report.revenue[k]);
    os << ',' << (k < report.realized_demand.size() ? fixed6(report.realized_demand[k]) : "na");
    os << "\n";
  }
  return os.str();
}

std::string write_summary(const MilpSolution& solution, const ScheduleReport& report) {
  std::ostringstream os;
  os << "status: " << milp_status_name(solution.status) << "\n";
  os << "objective: " << fixed6(solution.objective) << "\n";
  os << "best_bound: " << fixed6(solution.best_bound) << "\n";
  os << "gap: " << fixed9(solution.gap) << "\n";
  os << "nodes: " << solution.node_count << "\n";
  os << "lp_solves: " << solution.lp_solve_count << "\n";
  os << "revenue_total: " << fixed6(report.total_revenue) << "\n";
  os << "fuel_total: " << fixed6(report.total_fuel_cost) << "\n";
  os << "startup_total: " << fixed6(report.total_startup_cost) << "\n";
  os << "profit_total: " << fixed6(report.total_profit) << "\n";
  return os.str();
}

std::string write_compare_csv(const CompareTable& table) {
  std::ostringstream os;
  os << "case,operation_cost,revenue,profit,peak_realized_demand\n";
  for (size_t c = 0; c < table.labels.size(); ++c) {
    os << table.labels[c] << ',' << fixed6(table.operation_cost[c]) << ','
       << fixed6(table.revenue[c]) << ',' << fixed6(table.profit[c]) << ','
       << fixed6(table.peak_realized_demand[c]) << "\n";
  }
  os << "\nt";
  for (const std::string& label : table.labels) os << ",committed[" << label << "]";
  for (size_t c = 1; c < table.labels.size(); ++c)
    os << ",delta[" << table.labels[c] << "]";
  os << "\n";
  for (int t = 0; t < table.horizon; ++t) {
    os << (t + 1);
    for (size_t c = 0; c < table.labels.size(); ++c)
      os << ',' << table.committed_count[c][static_cast<size_t>(t)];
    for (size_t c = 1; c < table.labels.size(); ++c)
      os << ',' << table.committed_delta[c - 1][static_cast<size_t>(t)];
    os << "\n";
  }
  return os.str();
}

Schedule load_schedule_csv(const std::string& text, int num_units, int num_levels) {
  const std::vector<std::string> lines = split_lines_local(text);
  Schedule schedule;
  schedule.num_units = num_units;
  schedule.num_levels = num_levels;
  bool header_seen = false;
  for (size_t k = 0; k < lines.size(); ++k) {
    const int line_no = static_cast<int>(k) + 1;
    const std::string& line = lines[k];
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      header_seen = true;  // header is fixed-format; shape is checked per row
      continue;
    }
    const std::vector<std::string> f = split_fields_local(line);
    const size_t expected = 1 + 3 * static_cast<size_t>(num_units) + 2;
    if (f.size() != expected)
      throw parse_error(line_no, static_cast<int>(f.size()),
                        "expected " + std::to_string(expected) + " fields");
    size_t idx = 1;
    for (int i = 0; i < num_units; ++i)
      schedule.power.push_back(std::strtod(f[idx++].c_str(), nullptr));
    for (int i = 0; i < num_units; ++i)
      schedule.committed.push_back(std::atoi(f[idx++].c_str()));
    for (int i = 0; i < num_units; ++i)
      schedule.startup.push_back(std::atoi(f[idx++].c_str()));
    const int level = std::atoi(f[idx].c_str());
    if (level < 0 || level > num_levels)
      throw parse_error(line_no, static_cast<int>(idx) + 1, "level out of range");
    for (int l = 1; l <= num_levels; ++l) schedule.level.push_back(l == level ? 1 : 0);
    schedule.horizon++;
  }
  if (!header_seen) throw parse_error(1, 1, "missing schedule header");
  return schedule;
}

}  // namespace ucdr
