/* SPDX-License-Identifier: Apache-2.0 */

#ifndef UCDR_MPS_HPP
#define UCDR_MPS_HPP

#include <string>
#include <vector>

#include "ucdr/formulation.hpp"

namespace ucdr {

// Fixed-format MPS with NAME/ROWS/COLUMNS/RHS/BOUNDS/ENDATA. The objective is
// the internal minimization form; binaries travel as BV bound lines (fixed
// binaries get an additional FX override). Column names come from the
// variable layout, row names are a kind code plus the global row index, and
// numbers carry 12 significant digits. Output is a pure function of the
// problem.
std::string export_mps(const MilpProblem& problem, const std::string& name = "UCSCHED");

// Matrix content recovered from an MPS file, variable order as first seen in
// COLUMNS, row order as listed in ROWS.
struct ParsedMps {
  std::string name;
  std::vector<std::string> col_names;
  std::vector<std::string> row_names;
  std::string objective_name;
  std::vector<double> objective;
  double objective_constant = 0.0;
  std::vector<char> sense;
  std::vector<double> rhs;
  std::vector<std::vector<std::pair<int, double>>> row_entries;  // per row, (col, coef)
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<bool> is_binary;

  int num_cols() const { return static_cast<int>(col_names.size()); }
  int num_rows() const { return static_cast<int>(row_names.size()); }
};

ParsedMps parse_mps(const std::string& text);

}  // namespace ucdr

#endif
