/* SPDX-License-Identifier: Apache-2.0 */

#include "ucdr/mps.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <sstream>
#include <stdexcept>

#include "ucdr/simplex.hpp"

namespace ucdr {

namespace {

const char* row_code(ConstraintKind kind) {
  switch (kind) {
    case ConstraintKind::PriceSelection: return "PS";
    case ConstraintKind::MeanPriceCap: return "MP";
    case ConstraintKind::DemandConservation: return "DC";
    case ConstraintKind::Balance: return "BA";
    case ConstraintKind::CapacityLower: return "CL";
    case ConstraintKind::CapacityUpper: return "CU";
    case ConstraintKind::RampUp: return "RU";
    case ConstraintKind::RampDown: return "RD";
    case ConstraintKind::MinUp: return "MU";
    case ConstraintKind::MinDown: return "MD";
    case ConstraintKind::StartupLink: return "SU";
    default: return "RW";
  }
}

std::string row_name(const Row& row, int index) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%s%06d", row_code(row.kind), index);
  return buf;
}

std::string number(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  return buf;
}

void pad_to(std::string& line, size_t column) {
  if (line.size() < column) line.append(column - line.size(), ' ');
}

// Classic fixed-format fields: indicator at 2, names at 5/15/40, values at
// 25/50.
void emit_pair(std::ostringstream& os, const std::string& col, const std::string& row1,
               double v1, const std::string* row2, double v2) {
  std::string line = "    " + col;
  pad_to(line, 14);
  line += " " + row1;
  pad_to(line, 24);
  line += " " + number(v1);
  if (row2 != nullptr) {
    pad_to(line, 39);
    line += " " + *row2;
    pad_to(line, 49);
    line += " " + number(v2);
  }
  os << line << "\n";
}

}  // namespace

std::string export_mps(const MilpProblem& problem, const std::string& name) {
  const VarLayout& lay = problem.layout;
  const int n = problem.num_vars();
  std::ostringstream os;
  os << "NAME          " << name << "\n";

  os << "ROWS\n";
  os << " N  COST\n";
  std::vector<std::string> row_names(static_cast<size_t>(problem.num_rows()));
  for (int r = 0; r < problem.num_rows(); ++r) {
    const Row& row = problem.rows[static_cast<size_t>(r)];
    row_names[static_cast<size_t>(r)] = row_name(row, r);
    os << ' ' << static_cast<char>(row.sense) << "  " << row_names[static_cast<size_t>(r)] << "\n";
  }

  // Per-column entries: objective first, then rows in emission order.
  std::vector<std::vector<std::pair<int, double>>> col_entries(static_cast<size_t>(n));
  for (int r = 0; r < problem.num_rows(); ++r) {
    const Row& row = problem.rows[static_cast<size_t>(r)];
    for (size_t k = 0; k < row.index.size(); ++k)
      if (row.value[k] != 0.0)
        col_entries[static_cast<size_t>(row.index[k])].emplace_back(r, row.value[k]);
  }

  os << "COLUMNS\n";
  for (int j = 0; j < n; ++j) {
    const std::string col = lay.var_name(j);
    std::vector<std::pair<std::string, double>> items;
    if (problem.objective[static_cast<size_t>(j)] != 0.0)
      items.emplace_back("COST", problem.objective[static_cast<size_t>(j)]);
    for (const auto& [r, v] : col_entries[static_cast<size_t>(j)])
      items.emplace_back(row_names[static_cast<size_t>(r)], v);
    for (size_t k = 0; k < items.size(); k += 2) {
      if (k + 1 < items.size())
        emit_pair(os, col, items[k].first, items[k].second, &items[k + 1].first,
                  items[k + 1].second);
      else
        emit_pair(os, col, items[k].first, items[k].second, nullptr, 0.0);
    }
    if (items.empty()) continue;
  }

  os << "RHS\n";
  for (int r = 0; r < problem.num_rows(); ++r) {
    const double b = problem.rows[static_cast<size_t>(r)].rhs;
    if (b != 0.0) emit_pair(os, "RHS", row_names[static_cast<size_t>(r)], b, nullptr, 0.0);
  }
  if (problem.objective_constant != 0.0)
    emit_pair(os, "RHS", "COST", -problem.objective_constant, nullptr, 0.0);

  os << "BOUNDS\n";
  for (int j = 0; j < n; ++j) {
    const std::string col = lay.var_name(j);
    const double lo = problem.lower[static_cast<size_t>(j)];
    const double hi = problem.upper[static_cast<size_t>(j)];
    if (problem.is_binary[static_cast<size_t>(j)]) {
      std::string line = " BV BND";
      pad_to(line, 14);
      line += " " + col;
      os << line << "\n";
      if (lo == hi) {
        std::string fx = " FX BND";
        pad_to(fx, 14);
        fx += " " + col;
        pad_to(fx, 24);
        fx += " " + number(lo);
        os << fx << "\n";
      }
      continue;
    }
    if (lo == hi) {
      std::string fx = " FX BND";
      pad_to(fx, 14);
      fx += " " + col;
      pad_to(fx, 24);
      fx += " " + number(lo);
      os << fx << "\n";
      continue;
    }
    if (lo != 0.0) {
      std::string lb = " LO BND";
      pad_to(lb, 14);
      lb += " " + col;
      pad_to(lb, 24);
      lb += " " + number(lo);
      os << lb << "\n";
    }
    if (hi < kInfinity) {
      std::string ub = " UP BND";
      pad_to(ub, 14);
      ub += " " + col;
      pad_to(ub, 24);
      ub += " " + number(hi);
      os << ub << "\n";
    }
  }
  os << "ENDATA\n";
  return os.str();
}

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> tokens;
  std::istringstream is(line);
  std::string token;
  while (is >> token) tokens.push_back(token);
  return tokens;
}

}  // namespace

ParsedMps parse_mps(const std::string& text) {
  ParsedMps out;
  std::map<std::string, int> row_of;
  std::map<std::string, int> col_of;
  enum Section { None, Rows, Columns, Rhs, Bounds, Ranges, Done } section = None;

  std::istringstream is(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(is, raw)) {
    line_no++;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    if (raw.empty() || raw[0] == '*') continue;
    const bool header = raw[0] != ' ' && raw[0] != '\t';
    const std::vector<std::string> tok = tokenize(raw);
    if (tok.empty()) continue;
    if (header) {
      const std::string& word = tok[0];
      if (word == "NAME") {
        if (tok.size() > 1) out.name = tok[1];
      } else if (word == "ROWS") section = Rows;
      else if (word == "COLUMNS") section = Columns;
      else if (word == "RHS") section = Rhs;
      else if (word == "RANGES") section = Ranges;
      else if (word == "BOUNDS") section = Bounds;
      else if (word == "ENDATA") { section = Done; break; }
      else throw std::runtime_error("mps line " + std::to_string(line_no) +
                                    ": unknown section '" + word + "'");
      continue;
    }
    switch (section) {
      case Rows: {
        if (tok.size() != 2)
          throw std::runtime_error("mps line " + std::to_string(line_no) + ": malformed row");
        const char kind = static_cast<char>(std::toupper(tok[0][0]));
        if (kind == 'N') {
          if (out.objective_name.empty()) out.objective_name = tok[1];
          break;
        }
        if (kind != 'L' && kind != 'G' && kind != 'E')
          throw std::runtime_error("mps line " + std::to_string(line_no) + ": bad row kind");
        row_of[tok[1]] = static_cast<int>(out.row_names.size());
        out.row_names.push_back(tok[1]);
        out.sense.push_back(kind);
        out.rhs.push_back(0.0);
        out.row_entries.emplace_back();
        break;
      }
      case Columns: {
        if (tok.size() != 3 && tok.size() != 5)
          throw std::runtime_error("mps line " + std::to_string(line_no) + ": malformed column");
        const std::string& col = tok[0];
        auto it = col_of.find(col);
        if (it == col_of.end()) {
          it = col_of.emplace(col, static_cast<int>(out.col_names.size())).first;
          out.col_names.push_back(col);
          out.objective.push_back(0.0);
          out.lower.push_back(0.0);
          out.upper.push_back(kInfinity);
          out.is_binary.push_back(false);
        }
        const int j = it->second;
        for (size_t k = 1; k + 1 < tok.size(); k += 2) {
          const std::string& row = tok[k];
          const double value = std::strtod(tok[k + 1].c_str(), nullptr);
          if (row == out.objective_name) {
            out.objective[static_cast<size_t>(j)] += value;
          } else {
            const auto rit = row_of.find(row);
            if (rit == row_of.end())
              throw std::runtime_error("mps line " + std::to_string(line_no) +
                                       ": unknown row '" + row + "'");
            out.row_entries[static_cast<size_t>(rit->second)].emplace_back(j, value);
          }
        }
        break;
      }
      case Rhs: {
        if (tok.size() != 3 && tok.size() != 5)
          throw std::runtime_error("mps line " + std::to_string(line_no) + ": malformed rhs");
        for (size_t k = 1; k + 1 < tok.size(); k += 2) {
          const std::string& row = tok[k];
          const double value = std::strtod(tok[k + 1].c_str(), nullptr);
          if (row == out.objective_name) {
            out.objective_constant = -value;
          } else {
            const auto rit = row_of.find(row);
            if (rit == row_of.end())
              throw std::runtime_error("mps line " + std::to_string(line_no) +
                                       ": unknown rhs row '" + row + "'");
            out.rhs[static_cast<size_t>(rit->second)] = value;
          }
        }
        break;
      }
      case Bounds: {
        if (tok.size() < 3)
          throw std::runtime_error("mps line " + std::to_string(line_no) + ": malformed bound");
        const std::string& kind = tok[0];
        const std::string& col = tok[2];
        const auto it = col_of.find(col);
        if (it == col_of.end())
          throw std::runtime_error("mps line " + std::to_string(line_no) +
                                   ": bound on unknown column '" + col + "'");
        const int j = it->second;
        const double value = tok.size() > 3 ? std::strtod(tok[3].c_str(), nullptr) : 0.0;
        if (kind == "UP") out.upper[static_cast<size_t>(j)] = value;
        else if (kind == "LO") out.lower[static_cast<size_t>(j)] = value;
        else if (kind == "FX") {
          out.lower[static_cast<size_t>(j)] = value;
          out.upper[static_cast<size_t>(j)] = value;
        } else if (kind == "BV") {
          out.is_binary[static_cast<size_t>(j)] = true;
          out.lower[static_cast<size_t>(j)] = 0.0;
          out.upper[static_cast<size_t>(j)] = 1.0;
        } else if (kind == "MI") out.lower[static_cast<size_t>(j)] = -kInfinity;
        else if (kind == "PL") out.upper[static_cast<size_t>(j)] = kInfinity;
        else
          throw std::runtime_error("mps line " + std::to_string(line_no) +
                                   ": unsupported bound kind '" + kind + "'");
        break;
      }
      case Ranges:
        throw std::runtime_error("mps RANGES section is not supported");
      case None:
      case Done:
        throw std::runtime_error("mps line " + std::to_string(line_no) + ": data outside section");
    }
  }
  if (section != Done) throw std::runtime_error("mps file missing ENDATA");
  return out;
}

}  // namespace ucdr
