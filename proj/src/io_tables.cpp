/* SPDX-License-Identifier: Apache-2.0 */

#include <charconv>
#include <cstdlib>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "ucdr/io_formats.hpp"

namespace ucdr {

parse_error::parse_error(int line, int column, const std::string& reason)
    : std::runtime_error("line " + std::to_string(line) + ", field " + std::to_string(column) +
                         ": " + reason),
      line_(line),
      column_(column) {}

std::string format_double(double value) {
  char buf[40];
  for (int precision = 15; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof(buf), "%.*g", precision, value);
    if (std::strtod(buf, nullptr) == value) return buf;
  }
  return buf;
}

namespace {

std::vector<std::string> split_lines(const std::string& text) {
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

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string current;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(trim(current));
      current.clear();
    } else {
      current += c;
    }
  }
  fields.push_back(trim(current));
  return fields;
}

double parse_double_field(const std::string& field, int line, int column) {
  const std::string s = trim(field);
  if (s.empty()) throw parse_error(line, column, "empty numeric field");
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw parse_error(line, column, "not a number: '" + s + "'");
  return value;
}

int parse_int_field(const std::string& field, int line, int column) {
  const std::string s = trim(field);
  if (s.empty()) throw parse_error(line, column, "empty integer field");
  int value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw parse_error(line, column, "not an integer: '" + s + "'");
  return value;
}

constexpr const char* kFleetHeader = "id,b,p_max,p_min,ramp_up,ramp_down,min_up,min_down,S";
constexpr const char* kScenarioHeader = "t,demand,wind,pv";

}  // namespace

Fleet load_fleet(const std::string& text) {
  const std::vector<std::string> lines = split_lines(text);
  Fleet fleet;
  bool header_seen = false;
  for (size_t k = 0; k < lines.size(); ++k) {
    const int line_no = static_cast<int>(k) + 1;
    const std::string line = trim(lines[k]);
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      if (line != kFleetHeader)
        throw parse_error(line_no, 1,
                          std::string("expected header '") + kFleetHeader + "', got '" + line + "'");
      header_seen = true;
      continue;
    }
    const std::vector<std::string> f = split_fields(line);
    if (f.size() != 9)
      throw parse_error(line_no, static_cast<int>(f.size()),
                        "expected 9 fields (id,b,p_max,p_min,ramp_up,ramp_down,min_up,min_down,S)");
    ThermalUnit unit;
    unit.id = parse_int_field(f[0], line_no, 1);
    unit.fuel_cost = parse_double_field(f[1], line_no, 2);
    unit.p_max = parse_double_field(f[2], line_no, 3);
    unit.p_min = parse_double_field(f[3], line_no, 4);
    unit.ramp_up = parse_double_field(f[4], line_no, 5);
    unit.ramp_down = parse_double_field(f[5], line_no, 6);
    unit.min_up = parse_int_field(f[6], line_no, 7);
    unit.min_down = parse_int_field(f[7], line_no, 8);
    unit.startup_cost = parse_double_field(f[8], line_no, 9);
    fleet.units.push_back(unit);
  }
  if (!header_seen) throw parse_error(1, 1, "missing fleet header");
  validate_fleet(fleet);
  return fleet;
}

std::string write_fleet(const Fleet& fleet) {
  std::ostringstream os;
  os << kFleetHeader << "\n";
  for (const ThermalUnit& u : fleet.units) {
    os << u.id << ',' << format_double(u.fuel_cost) << ',' << format_double(u.p_max) << ','
       << format_double(u.p_min) << ',' << format_double(u.ramp_up) << ','
       << format_double(u.ramp_down) << ',' << u.min_up << ',' << u.min_down << ','
       << format_double(u.startup_cost) << "\n";
  }
  return os.str();
}

Scenario load_scenario(const std::string& text) {
  const std::vector<std::string> lines = split_lines(text);
  Scenario scenario;
  bool table_started = false;
  int expected_hour = 1;
  for (size_t k = 0; k < lines.size(); ++k) {
    const int line_no = static_cast<int>(k) + 1;
    const std::string line = trim(lines[k]);
    if (line.empty() || line[0] == '#') continue;
    if (!table_started) {
      if (line == kScenarioHeader) {
        table_started = true;
        continue;
      }
      const std::vector<std::string> f = split_fields(line);
      if (f.size() != 2)
        throw parse_error(line_no, static_cast<int>(f.size()),
                          "expected 'key,value' before the series header");
      const std::string key = f[0];
      const double value = parse_double_field(f[1], line_no, 2);
      if (key == "sigma_d") scenario.sigma_d = value;
      else if (key == "sigma_w") scenario.sigma_w = value;
      else if (key == "sigma_p") scenario.sigma_p = value;
      else if (key == "step_hours") scenario.step_hours = value;
      else throw parse_error(line_no, 1, "unknown scenario key '" + key + "'");
      continue;
    }
    const std::vector<std::string> f = split_fields(line);
    if (f.size() != 4)
      throw parse_error(line_no, static_cast<int>(f.size()), "expected 4 fields (t,demand,wind,pv)");
    const int hour = parse_int_field(f[0], line_no, 1);
    if (hour != expected_hour)
      throw parse_error(line_no, 1,
                        "hour index " + std::to_string(hour) + " out of order, expected " +
                            std::to_string(expected_hour));
    expected_hour++;
    scenario.demand.push_back(parse_double_field(f[1], line_no, 2));
    scenario.wind.push_back(parse_double_field(f[2], line_no, 3));
    scenario.pv.push_back(parse_double_field(f[3], line_no, 4));
  }
  if (!table_started) throw parse_error(1, 1, "missing scenario series header");
  scenario.horizon = static_cast<int>(scenario.demand.size());
  validate_scenario(scenario);
  return scenario;
}

std::string write_scenario(const Scenario& scenario) {
  std::ostringstream os;
  os << "sigma_d," << format_double(scenario.sigma_d) << "\n";
  os << "sigma_w," << format_double(scenario.sigma_w) << "\n";
  os << "sigma_p," << format_double(scenario.sigma_p) << "\n";
  os << "step_hours," << format_double(scenario.step_hours) << "\n";
  os << kScenarioHeader << "\n";
  for (int t = 1; t <= scenario.horizon; ++t)
    os << t << ',' << format_double(scenario.demand[static_cast<size_t>(t - 1)]) << ','
       << format_double(scenario.wind[static_cast<size_t>(t - 1)]) << ','
       << format_double(scenario.pv[static_cast<size_t>(t - 1)]) << "\n";
  return os.str();
}

DistributionKind parse_distribution(const std::string& name) {
  if (name == "normal") return DistributionKind::Normal;
  if (name == "laplace") return DistributionKind::Laplace;
  if (name == "none" || name == "deterministic") return DistributionKind::Deterministic;
  throw validation_error("unknown distribution '" + name + "' (use normal, laplace or none)");
}

const char* distribution_name(DistributionKind kind) {
  switch (kind) {
    case DistributionKind::Normal: return "normal";
    case DistributionKind::Laplace: return "laplace";
    case DistributionKind::Deterministic: return "none";
  }
  return "unknown";
}

Tariff CaseConfig::tariff() const { return Tariff{mean_price, levels, elasticity}; }

ChanceSpec CaseConfig::chance() const { return ChanceSpec{alpha, distribution}; }

InitialState CaseConfig::initial_state(const Fleet& fleet) const {
  InitialState init = InitialState::all_off(fleet);
  const size_t n = static_cast<size_t>(fleet.size());
  if (init_committed) {
    if (init_committed->size() != n)
      throw validation_error("init_committed must list one value per unit");
    for (size_t i = 0; i < n; ++i) {
      init.units[i].committed = (*init_committed)[i] != 0;
      if (init.units[i].committed) {
        init.units[i].output = fleet.units[i].p_min;
        init.units[i].run_length = fleet.units[i].min_up;
      }
    }
  }
  if (init_output) {
    if (init_output->size() != n) throw validation_error("init_output must list one value per unit");
    for (size_t i = 0; i < n; ++i)
      if (init.units[i].committed) init.units[i].output = (*init_output)[i];
  }
  if (init_run_length) {
    if (init_run_length->size() != n)
      throw validation_error("init_run_length must list one value per unit");
    for (size_t i = 0; i < n; ++i) init.units[i].run_length = (*init_run_length)[i];
  }
  validate_initial_state(init, fleet);
  return init;
}

namespace {

std::vector<double> parse_double_list(const std::string& value, int line_no) {
  std::vector<double> out;
  const std::vector<std::string> fields = split_fields(value);
  for (size_t k = 0; k < fields.size(); ++k)
    out.push_back(parse_double_field(fields[k], line_no, static_cast<int>(k) + 1));
  return out;
}

std::vector<int> parse_int_list(const std::string& value, int line_no) {
  std::vector<int> out;
  const std::vector<std::string> fields = split_fields(value);
  for (size_t k = 0; k < fields.size(); ++k)
    out.push_back(parse_int_field(fields[k], line_no, static_cast<int>(k) + 1));
  return out;
}

}  // namespace

CaseConfig load_case_config(const std::string& text) {
  CaseConfig config;
  const std::vector<std::string> lines = split_lines(text);
  for (size_t k = 0; k < lines.size(); ++k) {
    const int line_no = static_cast<int>(k) + 1;
    std::string line = lines[k];
    const size_t comment = line.find('#');
    if (comment != std::string::npos) line = line.substr(0, comment);
    line = trim(line);
    if (line.empty()) continue;
    const size_t eq = line.find('=');
    if (eq == std::string::npos) throw parse_error(line_no, 1, "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (value.empty()) throw parse_error(line_no, 2, "missing value for '" + key + "'");
    if (key == "alpha") config.alpha = parse_double_field(value, line_no, 2);
    else if (key == "dist") config.distribution = parse_distribution(value);
    else if (key == "elasticity") config.elasticity = parse_double_field(value, line_no, 2);
    else if (key == "levels") config.levels = parse_double_list(value, line_no);
    else if (key == "rbar") config.mean_price = parse_double_field(value, line_no, 2);
    else if (key == "ramp_as_fraction")
      config.ramp_as_fraction = parse_int_field(value, line_no, 2) != 0;
    else if (key == "node_limit") config.node_limit = parse_int_field(value, line_no, 2);
    else if (key == "time_limit_sec") config.time_limit_sec = parse_double_field(value, line_no, 2);
    else if (key == "init_committed") config.init_committed = parse_int_list(value, line_no);
    else if (key == "init_output") config.init_output = parse_double_list(value, line_no);
    else if (key == "init_run_length") config.init_run_length = parse_int_list(value, line_no);
    else throw parse_error(line_no, 1, "unknown config key '" + key + "'");
  }
  return config;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

}  // namespace ucdr
