/* SPDX-License-Identifier: Apache-2.0 */

#ifndef UCDR_SIMPLEX_HPP
#define UCDR_SIMPLEX_HPP

#include <cstdint>
#include <limits>
#include <memory>
#include <vector>

namespace ucdr {

constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Minimization LP over bounded variables with sparse constraint rows.
struct LinearProgram {
  int num_vars = 0;
  std::vector<double> cost;
  double cost_constant = 0.0;
  std::vector<double> lower;  // -inf allowed
  std::vector<double> upper;  // +inf allowed

  std::vector<int> row_start{0};  // CSR layout, size num_rows()+1
  std::vector<int> col_index;
  std::vector<double> coef;
  std::vector<char> sense;  // 'L', 'G', 'E'
  std::vector<double> rhs;

  int num_rows() const { return static_cast<int>(rhs.size()); }
  void resize_vars(int n);
  void add_row(const std::vector<int>& cols, const std::vector<double>& vals, char row_sense,
               double row_rhs);
};

enum class LpStatus : std::uint8_t {
  Optimal,
  Infeasible,
  Unbounded,
  IterationLimit,
  NumericalFailure,
};

const char* lp_status_name(LpStatus status);

// Column status over structural variables followed by one slack per row.
struct BasisDescriptor {
  std::vector<std::uint8_t> status;  // VarStatus values
  bool empty() const { return status.empty(); }
};

struct SimplexConfig {
  double feasibility_tol = 1e-7;
  double optimality_tol = 1e-7;
  double pivot_tol = 1e-9;
  int degenerate_streak_limit = 50;  // switch to lowest-index pricing beyond this
  long max_iterations = 0;           // 0 selects 50 * (rows + cols)
  int refactor_interval = 64;
};

struct LpSolution {
  LpStatus status = LpStatus::NumericalFailure;
  std::vector<double> x;  // structural variables only
  double objective = 0.0;
  long iterations = 0;
  BasisDescriptor basis;
  double max_primal_violation = 0.0;  // over rows and bounds, absolute
};

// Reusable engine: builds the column geometry once, then supports repeated
// solves under modified bounds with warm-started bases. A solver instance is
// single-threaded; distinct instances may run concurrently on the same
// immutable LinearProgram.
class SimplexSolver {
 public:
  explicit SimplexSolver(const LinearProgram& lp, SimplexConfig config = SimplexConfig{});
  ~SimplexSolver();
  SimplexSolver(const SimplexSolver&) = delete;
  SimplexSolver& operator=(const SimplexSolver&) = delete;

  void set_bounds(int var, double lo, double hi);
  void reset_bounds();

  LpSolution solve();
  LpSolution solve_warm(const BasisDescriptor& basis);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

LpSolution solve_lp(const LinearProgram& lp, const SimplexConfig& config = SimplexConfig{});

// Re-solve after replacing one variable's bounds, warm-starting from a basis
// produced by a previous solve of the same lp shape.
LpSolution resolve_with_bound(const LinearProgram& lp, const BasisDescriptor& basis,
                              int var_index, double new_lower, double new_upper,
                              const SimplexConfig& config = SimplexConfig{});

// Largest absolute row or bound violation of a candidate point.
double lp_violation(const LinearProgram& lp, const std::vector<double>& x);

}  // namespace ucdr

#endif
