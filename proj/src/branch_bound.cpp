/* SPDX-License-Identifier: Apache-2.0 */

#include "ucdr/branch_bound.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <memory>
#include <queue>

#include "ucdr/stochastics.hpp"

namespace ucdr {

const char* milp_status_name(MilpStatus status) {
  switch (status) {
    case MilpStatus::Optimal: return "optimal";
    case MilpStatus::FeasibleWithGap: return "feasible_with_gap";
    case MilpStatus::Infeasible: return "infeasible";
    case MilpStatus::LimitReached: return "limit_reached";
  }
  return "unknown";
}

LinearProgram to_linear_program(const MilpProblem& problem) {
  LinearProgram lp;
  lp.resize_vars(problem.num_vars());
  lp.cost = problem.objective;
  lp.cost_constant = problem.objective_constant;
  lp.lower = problem.lower;
  lp.upper = problem.upper;
  for (const Row& row : problem.rows)
    lp.add_row(row.index, row.value, static_cast<char>(row.sense), row.rhs);
  return lp;
}

std::optional<int> choose_branch_var(const std::vector<double>& x,
                                     const std::vector<int>& binary_indices, BranchRule rule,
                                     double tol) {
  int best = -1;
  double best_frac = 0.0;
  for (int j : binary_indices) {
    const double v = x[static_cast<size_t>(j)];
    const double f = v - std::floor(v);
    const double dist = std::min(f, 1.0 - f);
    if (dist <= tol) continue;
    if (rule == BranchRule::FirstFractional) return j;
    if (dist > best_frac) {
      best_frac = dist;
      best = j;
    }
  }
  if (best < 0) return std::nullopt;
  return best;
}

namespace {

struct BoundChange {
  int var;
  double lo, hi;
  std::shared_ptr<const BoundChange> parent;
};

struct Node {
  double bound_min;  // LP objective of the parent, minimization sense
  int depth;
  long seq;
  std::shared_ptr<const BoundChange> changes;
  std::shared_ptr<const BasisDescriptor> basis;
};

struct NodeOrder {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound_min != b.bound_min) return a.bound_min > b.bound_min;  // smallest first
    if (a.depth != b.depth) return a.depth < b.depth;                  // deepest first
    return a.seq < b.seq;                                              // newest first
  }
};

// Initial commitment values folded into the startup rows at t = 1; needed to
// recover the startup indicators from an integral commitment.
std::vector<double> initial_commitment_from_rows(const MilpProblem& problem) {
  std::vector<double> u0(static_cast<size_t>(problem.layout.num_units), 0.0);
  for (const Row& row : problem.rows)
    if (row.kind == ConstraintKind::StartupLink && row.t == 1)
      u0[static_cast<size_t>(row.i - 1)] = -row.rhs;
  return u0;
}

void snap_integral_point(const MilpProblem& problem, const std::vector<double>& u0,
                         std::vector<double>& x) {
  const VarLayout& lay = problem.layout;
  for (int j = 0; j < problem.num_vars(); ++j)
    if (problem.is_binary[static_cast<size_t>(j)])
      x[static_cast<size_t>(j)] = std::round(x[static_cast<size_t>(j)]);
  for (int i = 1; i <= lay.num_units; ++i)
    for (int t = 1; t <= lay.horizon; ++t) {
      const double u_prev = t == 1 ? u0[static_cast<size_t>(i - 1)]
                                   : x[static_cast<size_t>(lay.u_index(t - 1, i))];
      const double du = x[static_cast<size_t>(lay.u_index(t, i))] - u_prev;
      x[static_cast<size_t>(lay.z_index(t, i))] = std::max(0.0, du);
    }
}

double internal_objective(const MilpProblem& problem, const std::vector<double>& x) {
  double v = problem.objective_constant;
  for (int j = 0; j < problem.num_vars(); ++j)
    v += problem.objective[static_cast<size_t>(j)] * x[static_cast<size_t>(j)];
  return v;
}

}  // namespace

MilpSolution solve_milp(const MilpProblem& problem, const SearchConfig& config,
                        const std::optional<IncumbentCandidate>& initial) {
  using clock = std::chrono::steady_clock;
  const auto t_start = clock::now();
  const auto out_of_time = [&]() {
    if (config.time_limit_sec <= 0.0) return false;
    return std::chrono::duration<double>(clock::now() - t_start).count() >= config.time_limit_sec;
  };

  MilpSolution sol;
  sol.layout = problem.layout;

  std::vector<int> binaries;
  for (int j = 0; j < problem.num_vars(); ++j)
    if (problem.is_binary[static_cast<size_t>(j)]) binaries.push_back(j);

  const std::vector<double> u0 = initial_commitment_from_rows(problem);
  LinearProgram lp = to_linear_program(problem);
  SimplexSolver solver(lp, config.lp);

  double incumbent_min = kInfinity;
  std::vector<double> incumbent_x;
  if (initial.has_value()) {
    incumbent_x = initial->x;
    incumbent_min = internal_objective(problem, incumbent_x);
  }

  std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
  long seq = 0;
  double pruned_bound_min = kInfinity;  // tightest bound discarded by the cutoff

  const auto solve_node = [&](const Node& node) {
    solver.reset_bounds();
    for (const BoundChange* c = node.changes.get(); c != nullptr; c = c->parent.get())
      solver.set_bounds(c->var, c->lo, c->hi);
    sol.lp_solve_count++;
    LpSolution lp_sol = node.basis ? solver.solve_warm(*node.basis) : solver.solve();
    if (lp_sol.status == LpStatus::IterationLimit || lp_sol.status == LpStatus::NumericalFailure) {
      sol.lp_solve_count++;
      lp_sol = solver.solve();  // cold retry
    }
    sol.lp_iterations += lp_sol.iterations;
    return lp_sol;
  };

  // Try to turn an integer-feasible relaxation point into an exact incumbent:
  // re-dispatch the continuous variables with every binary pinned.
  const auto accept_incumbent = [&](const Node& node, const LpSolution& lp_sol) {
    std::vector<double> point = lp_sol.x;
    double worst = 0.0;
    for (int j : binaries) {
      const double v = point[static_cast<size_t>(j)];
      worst = std::max(worst, std::abs(v - std::round(v)));
    }
    if (worst > 1e-9) {
      solver.reset_bounds();
      for (const BoundChange* c = node.changes.get(); c != nullptr; c = c->parent.get())
        solver.set_bounds(c->var, c->lo, c->hi);
      for (int j : binaries) {
        const double r = std::round(point[static_cast<size_t>(j)]);
        solver.set_bounds(j, r, r);
      }
      sol.lp_solve_count++;
      const LpSolution fixed = solver.solve_warm(lp_sol.basis);
      sol.lp_iterations += fixed.iterations;
      if (fixed.status != LpStatus::Optimal) return;
      point = fixed.x;
    }
    snap_integral_point(problem, u0, point);
    const double obj = internal_objective(problem, point);
    if (obj < incumbent_min - 1e-12) {
      incumbent_min = obj;
      incumbent_x = std::move(point);
    }
  };

  // Root node.
  {
    Node root{-kInfinity, 0, seq++, nullptr, nullptr};
    sol.node_count++;
    const LpSolution lp_sol = solve_node(root);
    if (lp_sol.status == LpStatus::Infeasible) {
      sol.status = MilpStatus::Infeasible;
      if (initial.has_value()) {
        // The caller-supplied incumbent contradicts an infeasible root.
        sol.status = MilpStatus::Optimal;
        sol.x = incumbent_x;
        sol.objective = problem.profit_from_internal(incumbent_min);
        sol.best_bound = sol.objective;
      }
      return sol;
    }
    if (lp_sol.status != LpStatus::Optimal) {
      sol.status = MilpStatus::LimitReached;
      return sol;
    }
    const auto frac = choose_branch_var(lp_sol.x, binaries, config.branch_rule,
                                        config.integrality_tol);
    if (!frac.has_value()) {
      accept_incumbent(root, lp_sol);
      sol.status = MilpStatus::Optimal;
      sol.x = incumbent_x;
      sol.objective = problem.profit_from_internal(incumbent_min);
      sol.best_bound = sol.objective;
      sol.gap = 0.0;
      return sol;
    }
    auto basis = std::make_shared<BasisDescriptor>(lp_sol.basis);
    for (int side = 0; side < 2; ++side) {
      auto change = std::make_shared<BoundChange>();
      change->var = *frac;
      change->lo = side == 0 ? 0.0 : 1.0;
      change->hi = side == 0 ? 0.0 : 1.0;
      open.push(Node{lp_sol.objective, 1, seq++, change, basis});
    }
  }

  bool limit_hit = false;
  while (!open.empty()) {
    // Certified global bound: everything still open or discarded is no
    // better than this.
    const double open_bound = std::min(open.top().bound_min, pruned_bound_min);
    if (incumbent_min < kInfinity) {
      const double profit = problem.profit_from_internal(incumbent_min);
      const double bound = problem.profit_from_internal(open_bound);
      const double gap = std::abs(bound - profit) / std::max(1.0, std::abs(profit));
      if (gap <= config.relative_gap || std::abs(bound - profit) <= config.absolute_gap) break;
    }
    if ((config.node_limit > 0 && sol.node_count >= config.node_limit) || out_of_time()) {
      limit_hit = true;
      break;
    }

    Node node = open.top();
    open.pop();
    if (node.bound_min >= incumbent_min - config.absolute_gap) {
      pruned_bound_min = std::min(pruned_bound_min, node.bound_min);
      continue;
    }
    sol.node_count++;
    const LpSolution lp_sol = solve_node(node);
    if (lp_sol.status == LpStatus::Infeasible) continue;
    if (lp_sol.status != LpStatus::Optimal) {
      limit_hit = true;  // cannot certify this subtree
      pruned_bound_min = std::min(pruned_bound_min, node.bound_min);
      continue;
    }
    if (lp_sol.objective < node.bound_min - 1e-6 * std::max(1.0, std::abs(node.bound_min)))
      sol.bound_monotonicity_violations++;
    if (lp_sol.objective >= incumbent_min - config.absolute_gap) {
      pruned_bound_min = std::min(pruned_bound_min, lp_sol.objective);
      continue;
    }
    const auto frac = choose_branch_var(lp_sol.x, binaries, config.branch_rule,
                                        config.integrality_tol);
    if (!frac.has_value()) {
      accept_incumbent(node, lp_sol);
      continue;
    }
    auto basis = std::make_shared<BasisDescriptor>(lp_sol.basis);
    for (int side = 0; side < 2; ++side) {
      auto change = std::make_shared<BoundChange>();
      change->var = *frac;
      change->lo = side == 0 ? 0.0 : 1.0;
      change->hi = side == 0 ? 0.0 : 1.0;
      change->parent = node.changes;
      open.push(Node{lp_sol.objective, node.depth + 1, seq++, change, basis});
    }
  }

  const bool exhausted = open.empty() && !limit_hit;
  double final_bound_min;
  if (exhausted) {
    final_bound_min = std::min(incumbent_min, pruned_bound_min);
  } else {
    final_bound_min = pruned_bound_min;
    if (!open.empty()) final_bound_min = std::min(final_bound_min, open.top().bound_min);
  }

  if (incumbent_min < kInfinity) {
    sol.x = incumbent_x;
    sol.objective = problem.profit_from_internal(incumbent_min);
    sol.best_bound = problem.profit_from_internal(final_bound_min);
    if (exhausted) sol.best_bound = sol.objective;
    sol.gap = std::abs(sol.best_bound - sol.objective) / std::max(1.0, std::abs(sol.objective));
    const bool closed = exhausted || sol.gap <= config.relative_gap ||
                        std::abs(sol.best_bound - sol.objective) <= config.absolute_gap;
    sol.status = closed ? MilpStatus::Optimal : MilpStatus::FeasibleWithGap;
  } else if (exhausted) {
    sol.status = MilpStatus::Infeasible;
  } else {
    sol.status = MilpStatus::LimitReached;
    if (final_bound_min < kInfinity) sol.best_bound = problem.profit_from_internal(final_bound_min);
  }
  return sol;
}

std::optional<IncumbentCandidate> merit_order_incumbent(const Fleet& fleet,
                                                        const Scenario& scenario,
                                                        const Tariff& tariff,
                                                        const ChanceSpec& chance,
                                                        const InitialState& init) {
  MilpProblem problem = build(fleet, scenario, tariff, chance, init);
  const VarLayout& lay = problem.layout;
  const int N = lay.num_units;
  const int T = lay.horizon;

  // Flat tariff at the highest level not above the mean price: keeps the
  // price-cap and demand-conservation rows feasible for any elasticity <= 0.
  int flat_level = 1;
  for (int l = 1; l <= tariff.num_levels(); ++l)
    if (tariff.levels[static_cast<size_t>(l - 1)] <= tariff.mean_price) flat_level = l;
  const double flat_factor = demand_factor(flat_level, tariff);
  const double offset = reserve_offset(chance, scenario);

  std::vector<int> merit(static_cast<size_t>(N));
  for (int i = 0; i < N; ++i) merit[static_cast<size_t>(i)] = i;
  std::sort(merit.begin(), merit.end(), [&](int a, int b) {
    if (fleet.unit(a).fuel_cost != fleet.unit(b).fuel_cost)
      return fleet.unit(a).fuel_cost < fleet.unit(b).fuel_cost;
    return fleet.unit(a).id < fleet.unit(b).id;
  });

  std::vector<std::vector<char>> on(static_cast<size_t>(N),
                                    std::vector<char>(static_cast<size_t>(T), 0));
  for (int t = 0; t < T; ++t) {
    const double net = scenario.demand[static_cast<size_t>(t)] * flat_factor + offset -
                       scenario.wind[static_cast<size_t>(t)] - scenario.pv[static_cast<size_t>(t)];
    if (net <= 0.0) continue;
    double cap = 0.0;
    bool covered = false;
    for (int i : merit) {
      on[static_cast<size_t>(i)][static_cast<size_t>(t)] = 1;
      cap += fleet.unit(i).p_max;
      if (cap >= net) {
        covered = true;
        break;
      }
    }
    if (!covered) return std::nullopt;
  }

  // Initial up/down time still owed overrides the merit choice.
  for (int i = 0; i < N; ++i) {
    const auto& state = init.units[static_cast<size_t>(i)];
    const int owed =
        (state.committed ? fleet.unit(i).min_up : fleet.unit(i).min_down) - state.run_length;
    for (int t = 0; t < std::min(owed, T); ++t)
      on[static_cast<size_t>(i)][static_cast<size_t>(t)] = state.committed ? 1 : 0;
  }

  // Repair run lengths: fill short off-gaps, then stretch short on-runs.
  // In-horizon rows force a started run to hold for min_up + 1 steps and a
  // stopped unit to rest for min_down + 1 steps unless the horizon ends first.
  for (int i = 0; i < N; ++i) {
    auto& row = on[static_cast<size_t>(i)];
    const bool init_on = init.units[static_cast<size_t>(i)].committed;
    const int need_off = fleet.unit(i).min_down + 1;
    const int need_on = fleet.unit(i).min_up + 1;
    bool changed = true;
    int guard = 0;
    while (changed && guard++ <= T + 2) {
      changed = false;
      // off-gaps preceded by an on step (or by an initially-on unit)
      int t = 0;
      while (t < T) {
        if (row[static_cast<size_t>(t)]) { t++; continue; }
        const int a = t;
        while (t < T && !row[static_cast<size_t>(t)]) t++;
        const int b = t;  // gap is [a, b)
        const bool preceded_on = a == 0 ? init_on : row[static_cast<size_t>(a - 1)] != 0;
        const bool interior = b < T;
        if (preceded_on && interior && b - a < need_off) {
          for (int s = a; s < b; ++s) row[static_cast<size_t>(s)] = 1;
          changed = true;
        }
      }
      // on-runs that start in-horizon and end before the horizon does
      t = 0;
      while (t < T) {
        if (!row[static_cast<size_t>(t)]) { t++; continue; }
        const int a = t;
        while (t < T && row[static_cast<size_t>(t)]) t++;
        const int b = t;  // run is [a, b)
        const bool starts_here = a > 0 || !init_on;
        if (starts_here && b < T && b - a < need_on) {
          const int extend_to = std::min(T, a + need_on);
          for (int s = b; s < extend_to; ++s) row[static_cast<size_t>(s)] = 1;
          changed = true;
        }
      }
    }
  }

  // Dispatch with the commitment and tariff pinned.
  for (int i = 1; i <= N; ++i)
    for (int t = 1; t <= T; ++t) {
      const double v = on[static_cast<size_t>(i - 1)][static_cast<size_t>(t - 1)] ? 1.0 : 0.0;
      const int j = lay.u_index(t, i);
      problem.lower[static_cast<size_t>(j)] = v;
      problem.upper[static_cast<size_t>(j)] = v;
    }
  for (int t = 1; t <= T; ++t)
    for (int l = 1; l <= lay.num_levels; ++l) {
      const double v = l == flat_level ? 1.0 : 0.0;
      const int j = lay.w_index(t, l);
      problem.lower[static_cast<size_t>(j)] = v;
      problem.upper[static_cast<size_t>(j)] = v;
    }

  const LinearProgram lp = to_linear_program(problem);
  const LpSolution lp_sol = solve_lp(lp);
  if (lp_sol.status != LpStatus::Optimal) return std::nullopt;

  std::vector<double> x = lp_sol.x;
  std::vector<double> u0(static_cast<size_t>(N), 0.0);
  for (int i = 0; i < N; ++i) u0[static_cast<size_t>(i)] = init.units[static_cast<size_t>(i)].committed ? 1.0 : 0.0;
  snap_integral_point(problem, u0, x);
  const double profit = problem.profit_of(x);
  return IncumbentCandidate{std::move(x), profit};
}

}  // namespace ucdr
