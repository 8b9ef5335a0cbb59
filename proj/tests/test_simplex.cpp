/* SPDX-License-Identifier: Apache-2.0 */

#include <random>

#include <doctest.h>

#include "oracle_lp.hpp"
#include "ucdr/branch_bound.hpp"
#include "ucdr/pipeline.hpp"
#include "ucdr/scenario_gen.hpp"
#include "ucdr/simplex.hpp"

using namespace ucdr;

namespace {

double draw(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
}

LinearProgram random_lp(std::uint64_t seed, int n = 6, int m = 4) {
  std::mt19937_64 rng(seed);
  LinearProgram lp;
  lp.resize_vars(n);
  for (int j = 0; j < n; ++j) {
    lp.cost[static_cast<size_t>(j)] = draw(rng, -10.0, 10.0);
    const double a = draw(rng, -5.0, 1.0);
    const double b = draw(rng, 0.0, 5.0);
    lp.lower[static_cast<size_t>(j)] = std::min(a, b);
    lp.upper[static_cast<size_t>(j)] = std::max(a, b);
  }
  for (int r = 0; r < m; ++r) {
    std::vector<int> cols;
    std::vector<double> vals;
    for (int j = 0; j < n; ++j) {
      if (rng() % 3 == 0) continue;  // sparsify
      cols.push_back(j);
      vals.push_back(draw(rng, -3.0, 3.0));
    }
    if (cols.empty()) {
      cols.push_back(static_cast<int>(rng() % n));
      vals.push_back(1.0);
    }
    const int s = static_cast<int>(rng() % 3);
    lp.add_row(cols, vals, s == 0 ? 'L' : s == 1 ? 'G' : 'E', draw(rng, -4.0, 4.0));
  }
  return lp;
}

oracle::DenseLp to_dense(const LinearProgram& lp) {
  oracle::DenseLp d;
  d.n = lp.num_vars;
  d.c = lp.cost;
  d.c0 = lp.cost_constant;
  d.lo = lp.lower;
  d.hi = lp.upper;
  for (int r = 0; r < lp.num_rows(); ++r) {
    std::vector<double> a(static_cast<size_t>(lp.num_vars), 0.0);
    for (int k = lp.row_start[static_cast<size_t>(r)]; k < lp.row_start[static_cast<size_t>(r) + 1]; ++k)
      a[static_cast<size_t>(lp.col_index[static_cast<size_t>(k)])] = lp.coef[static_cast<size_t>(k)];
    d.add_row(a, lp.sense[static_cast<size_t>(r)], lp.rhs[static_cast<size_t>(r)]);
  }
  return d;
}

// Paper-shaped relaxation small enough for quick warm-start experiments.
LinearProgram desk_scale_uc_relaxation(MilpProblem& problem_out) {
  Fleet fleet = builtin_reference_fleet();
  fleet.units.resize(4);
  ScenarioSpec spec;
  spec.seed = 7;
  spec.horizon = 8;
  spec.peak_demand = 60.0;
  const Scenario sc = generate_scenario(spec);
  const Tariff tariff{10.0, {8.0, 12.0}, 0.0};
  problem_out = build(fleet, sc, tariff, ChanceSpec{0.9, DistributionKind::Normal},
                      InitialState::all_off(fleet));
  return to_linear_program(problem_out);
}

}  // namespace

TEST_CASE("single binding row") {
  LinearProgram lp;
  lp.resize_vars(1);
  lp.cost[0] = -1.0;
  lp.lower[0] = 0.0;
  lp.upper[0] = 10.0;
  lp.add_row({0}, {1.0}, 'L', 5.0);
  const LpSolution sol = solve_lp(lp);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.x[0] == doctest::Approx(5.0).epsilon(1e-9));
  CHECK(sol.objective == doctest::Approx(-5.0).epsilon(1e-9));
}

TEST_CASE("empty feasible set") {
  LinearProgram lp;
  lp.resize_vars(1);
  lp.lower[0] = 0.0;
  lp.upper[0] = 10.0;
  lp.add_row({0}, {1.0}, 'G', 3.0);
  lp.add_row({0}, {1.0}, 'L', 2.0);
  CHECK(solve_lp(lp).status == LpStatus::Infeasible);
}

TEST_CASE("unbounded ray is detected") {
  LinearProgram lp;
  lp.resize_vars(2);
  lp.cost[0] = -1.0;
  lp.lower[0] = 0.0;
  lp.upper[0] = kInfinity;
  lp.lower[1] = 0.0;
  lp.upper[1] = 1.0;
  lp.add_row({0, 1}, {-1.0, 1.0}, 'L', 4.0);
  CHECK(solve_lp(lp).status == LpStatus::Unbounded);
}

TEST_CASE("random bounded LPs match vertex enumeration and the dense oracle") {
  int optimal_cases = 0;
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    CAPTURE(seed);
    const LinearProgram lp = random_lp(seed);
    const oracle::DenseLp dense = to_dense(lp);
    const oracle::DenseResult vertex = oracle::enumerate_vertices(dense);
    const oracle::DenseResult tableau = oracle::solve_dense(dense);
    const LpSolution sol = solve_lp(lp);

    REQUIRE(vertex.feasible == tableau.feasible);
    if (vertex.feasible) {
      REQUIRE(sol.status == LpStatus::Optimal);
      CHECK(sol.objective == doctest::Approx(vertex.objective).epsilon(1e-6));
      CHECK(sol.objective == doctest::Approx(tableau.objective).epsilon(1e-6));
      CHECK(sol.max_primal_violation <= 1e-7);
      optimal_cases++;
    } else {
      CHECK(sol.status == LpStatus::Infeasible);
    }
  }
  CHECK(optimal_cases >= 10);  // the family is not degenerate
}

TEST_CASE("objective recomputation and feasibility audit on optimal results") {
  for (std::uint64_t seed = 30; seed <= 40; ++seed) {
    CAPTURE(seed);
    const LinearProgram lp = random_lp(seed, 8, 5);
    const LpSolution sol = solve_lp(lp);
    if (sol.status != LpStatus::Optimal) continue;
    double recomputed = lp.cost_constant;
    for (int j = 0; j < lp.num_vars; ++j)
      recomputed += lp.cost[static_cast<size_t>(j)] * sol.x[static_cast<size_t>(j)];
    CHECK(std::abs(recomputed - sol.objective) <=
          1e-9 * std::max(1.0, std::abs(sol.objective)));
    CHECK(lp_violation(lp, sol.x) <= 1e-7);
  }
}

TEST_CASE("identical inputs give bit-identical solutions") {
  const LinearProgram lp = random_lp(99, 10, 6);
  const LpSolution a = solve_lp(lp);
  const LpSolution b = solve_lp(lp);
  REQUIRE(a.status == b.status);
  CHECK(a.iterations == b.iterations);
  CHECK(a.x == b.x);  // exact equality
  CHECK(a.objective == b.objective);
}

TEST_CASE("tightening a nonbasic bound to its value costs zero pivots") {
  MilpProblem problem;
  const LinearProgram lp = desk_scale_uc_relaxation(problem);
  const LpSolution root = solve_lp(lp);
  REQUIRE(root.status == LpStatus::Optimal);

  // pick a variable sitting at its lower bound
  int pinned = -1;
  for (int j = 0; j < lp.num_vars; ++j)
    if (root.basis.status[static_cast<size_t>(j)] == 0) {  // nonbasic at lower
      pinned = j;
      break;
    }
  REQUIRE(pinned >= 0);
  const double v = lp.lower[static_cast<size_t>(pinned)];
  const LpSolution warm = resolve_with_bound(lp, root.basis, pinned, v, v);
  REQUIRE(warm.status == LpStatus::Optimal);
  CHECK(warm.iterations == 0);
  CHECK(warm.objective == doctest::Approx(root.objective).epsilon(1e-12));
  CHECK(warm.x == root.x);
}

TEST_CASE("warm restarts match cold solves across random branchings") {
  MilpProblem problem;
  const LinearProgram lp = desk_scale_uc_relaxation(problem);
  const LpSolution root = solve_lp(lp);
  REQUIRE(root.status == LpStatus::Optimal);

  std::vector<int> binaries;
  for (int j = 0; j < problem.num_vars(); ++j)
    if (problem.is_binary[static_cast<size_t>(j)]) binaries.push_back(j);

  std::mt19937_64 rng(4242);
  int agreements = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int var = binaries[static_cast<size_t>(rng() % binaries.size())];
    const double fix = static_cast<double>(rng() % 2);
    const LpSolution warm = resolve_with_bound(lp, root.basis, var, fix, fix);

    LinearProgram cold_lp = lp;
    cold_lp.lower[static_cast<size_t>(var)] = fix;
    cold_lp.upper[static_cast<size_t>(var)] = fix;
    const LpSolution cold = solve_lp(cold_lp);

    CAPTURE(trial);
    CAPTURE(var);
    REQUIRE(warm.status == cold.status);
    if (warm.status == LpStatus::Optimal) {
      CHECK(std::abs(warm.objective - cold.objective) <=
            1e-7 * std::max(1.0, std::abs(cold.objective)));
      CHECK(warm.max_primal_violation <= 1e-7);
      agreements++;
    }
    // branching a relaxation can only hurt the optimum (minimization)
    if (warm.status == LpStatus::Optimal)
      CHECK(warm.objective >= root.objective - 1e-7 * std::max(1.0, std::abs(root.objective)));
  }
  CHECK(agreements >= 50);
}

TEST_CASE("equality rows are honored") {
  LinearProgram lp;
  lp.resize_vars(2);
  lp.cost = {1.0, 2.0};
  lp.lower = {0.0, 0.0};
  lp.upper = {10.0, 10.0};
  lp.add_row({0, 1}, {1.0, 1.0}, 'E', 4.0);
  const LpSolution sol = solve_lp(lp);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.x[0] + sol.x[1] == doctest::Approx(4.0).epsilon(1e-9));
  CHECK(sol.objective == doctest::Approx(4.0).epsilon(1e-9));  // all weight on x0
}

TEST_CASE("iteration limit reports without crashing") {
  SimplexConfig config;
  config.max_iterations = 1;
  const LinearProgram lp = random_lp(5, 8, 5);
  const LpSolution sol = solve_lp(lp, config);
  CHECK((sol.status == LpStatus::IterationLimit || sol.status == LpStatus::Optimal ||
         sol.status == LpStatus::Infeasible));
}

TEST_CASE("paper-scale relaxation solves cleanly") {
  const Fleet fleet = builtin_reference_fleet();
  const Scenario sc = generate_scenario(ScenarioSpec{});
  const Tariff tariff{10.0, {7.0, 8.5, 10.0, 11.5, 13.0}, 0.0};
  const MilpProblem problem = build(fleet, sc, tariff, ChanceSpec{0.9, DistributionKind::Normal},
                                    InitialState::all_off(fleet));
  const LinearProgram lp = to_linear_program(problem);
  const LpSolution sol = solve_lp(lp);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.max_primal_violation <= 1e-7);
  CHECK(problem.profit_from_internal(sol.objective) > 0.0);
}
