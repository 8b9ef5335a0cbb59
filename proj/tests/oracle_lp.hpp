/* SPDX-License-Identifier: Apache-2.0 */

// Test-only LP oracles, deliberately independent of the production solver:
// a dense two-phase tableau simplex under Bland's rule, and brute-force
// vertex enumeration for small instances.

#ifndef UCDR_TESTS_ORACLE_LP_HPP
#define UCDR_TESTS_ORACLE_LP_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace oracle {

struct DenseLp {
  int n = 0;
  std::vector<double> c;
  double c0 = 0.0;
  std::vector<std::vector<double>> rows;  // dense coefficients
  std::vector<char> sense;                // 'L','G','E'
  std::vector<double> rhs;
  std::vector<double> lo, hi;             // finite bounds required

  void add_row(const std::vector<double>& a, char s, double b) {
    rows.push_back(a);
    sense.push_back(s);
    rhs.push_back(b);
  }
};

struct DenseResult {
  bool feasible = false;
  double objective = 0.0;
  std::vector<double> x;
};

// Minimize c.x over the rows and bounds. Dense tableau, two phases, Bland's
// entering rule, lowest-index leaving ties: slow, simple, terminating.
inline DenseResult solve_dense(const DenseLp& in) {
  const int n = in.n;
  for (int j = 0; j < n; ++j)
    if (!std::isfinite(in.lo[j]) || !std::isfinite(in.hi[j]) || in.lo[j] > in.hi[j])
      throw std::invalid_argument("oracle needs finite consistent bounds");

  // Shift to y = x - lo >= 0 and add the upper bounds as rows.
  struct StdRow {
    std::vector<double> a;
    char s;
    double b;
  };
  std::vector<StdRow> std_rows;
  for (size_t r = 0; r < in.rows.size(); ++r) {
    double b = in.rhs[r];
    for (int j = 0; j < n; ++j) b -= in.rows[r][j] * in.lo[j];
    std_rows.push_back({in.rows[r], in.sense[r], b});
  }
  for (int j = 0; j < n; ++j) {
    std::vector<double> a(n, 0.0);
    a[j] = 1.0;
    std_rows.push_back({a, 'L', in.hi[j] - in.lo[j]});
  }
  // Normalize to nonnegative rhs.
  for (StdRow& row : std_rows) {
    if (row.b < 0.0) {
      for (double& v : row.a) v = -v;
      row.b = -row.b;
      row.s = row.s == 'L' ? 'G' : row.s == 'G' ? 'L' : 'E';
    }
  }

  const int m = static_cast<int>(std_rows.size());
  int ncols = n;
  std::vector<int> slack_col(m, -1), art_col(m, -1);
  for (int r = 0; r < m; ++r) {
    if (std_rows[r].s == 'L') slack_col[r] = ncols++;
    else if (std_rows[r].s == 'G') slack_col[r] = ncols++;  // surplus, coefficient -1
  }
  for (int r = 0; r < m; ++r)
    if (std_rows[r].s != 'L') art_col[r] = ncols++;

  std::vector<std::vector<double>> tab(m, std::vector<double>(ncols + 1, 0.0));
  std::vector<int> basis(m, -1);
  for (int r = 0; r < m; ++r) {
    for (int j = 0; j < n; ++j) tab[r][j] = std_rows[r].a[j];
    tab[r][ncols] = std_rows[r].b;
    if (std_rows[r].s == 'L') {
      tab[r][slack_col[r]] = 1.0;
      basis[r] = slack_col[r];
    } else {
      if (std_rows[r].s == 'G') tab[r][slack_col[r]] = -1.0;
      tab[r][art_col[r]] = 1.0;
      basis[r] = art_col[r];
    }
  }

  const auto pivot = [&](int r, int j) {
    const double d = tab[r][j];
    for (int k = 0; k <= ncols; ++k) tab[r][k] /= d;
    for (int i = 0; i < m; ++i) {
      if (i == r || tab[i][j] == 0.0) continue;
      const double f = tab[i][j];
      for (int k = 0; k <= ncols; ++k) tab[i][k] -= f * tab[r][k];
    }
    basis[r] = j;
  };

  const auto run_phase = [&](const std::vector<double>& cost, bool allow_art) -> double {
    std::vector<double> red(cost);
    red.resize(static_cast<size_t>(ncols) + 1, 0.0);
    for (int r = 0; r < m; ++r) {
      const double cb = cost[static_cast<size_t>(basis[r])];
      if (cb == 0.0) continue;
      for (int k = 0; k <= ncols; ++k) red[static_cast<size_t>(k)] -= cb * tab[r][k];
    }
    while (true) {
      int enter = -1;
      for (int j = 0; j < ncols; ++j) {
        if (!allow_art && j >= n && std::find(art_col.begin(), art_col.end(), j) != art_col.end())
          continue;
        if (red[static_cast<size_t>(j)] < -1e-9) {
          enter = j;
          break;  // Bland: lowest index
        }
      }
      if (enter < 0) return -red[static_cast<size_t>(ncols)];
      int leave = -1;
      double best = std::numeric_limits<double>::infinity();
      for (int r = 0; r < m; ++r) {
        if (tab[r][enter] > 1e-9) {
          const double ratio = tab[r][ncols] / tab[r][enter];
          if (ratio < best - 1e-12 ||
              (ratio < best + 1e-12 && (leave < 0 || basis[r] < basis[leave]))) {
            best = ratio;
            leave = r;
          }
        }
      }
      if (leave < 0) throw std::runtime_error("oracle LP unbounded");
      const double f = red[static_cast<size_t>(enter)];
      pivot(leave, enter);
      for (int k = 0; k <= ncols; ++k) red[static_cast<size_t>(k)] -= f * tab[leave][k];
    }
  };

  // Phase 1.
  std::vector<double> cost1(static_cast<size_t>(ncols), 0.0);
  for (int r = 0; r < m; ++r)
    if (art_col[r] >= 0) cost1[static_cast<size_t>(art_col[r])] = 1.0;
  const double inf_sum = run_phase(cost1, true);
  DenseResult result;
  if (inf_sum > 1e-7) return result;  // infeasible

  // Phase 2: artificials barred from entering; basic artificials sit at zero.
  std::vector<double> cost2(static_cast<size_t>(ncols), 0.0);
  for (int j = 0; j < n; ++j) cost2[static_cast<size_t>(j)] = in.c[static_cast<size_t>(j)];
  const double obj_shifted = run_phase(cost2, false);

  result.feasible = true;
  result.x.assign(static_cast<size_t>(n), 0.0);
  for (int r = 0; r < m; ++r)
    if (basis[r] < n) result.x[static_cast<size_t>(basis[r])] = tab[r][ncols];
  for (int j = 0; j < n; ++j) result.x[static_cast<size_t>(j)] += in.lo[static_cast<size_t>(j)];
  result.objective = obj_shifted + in.c0;
  for (int j = 0; j < n; ++j) result.objective += in.c[static_cast<size_t>(j)] * in.lo[static_cast<size_t>(j)];
  return result;
}

// Exhaustive vertex enumeration: treat every row and bound as a halfspace,
// intersect each n-subset, keep feasible points, minimize the objective.
inline DenseResult enumerate_vertices(const DenseLp& in) {
  const int n = in.n;
  struct Plane {
    std::vector<double> a;
    double b;
  };
  std::vector<Plane> planes;
  for (size_t r = 0; r < in.rows.size(); ++r) planes.push_back({in.rows[r], in.rhs[r]});
  for (int j = 0; j < n; ++j) {
    std::vector<double> a(static_cast<size_t>(n), 0.0);
    a[static_cast<size_t>(j)] = 1.0;
    planes.push_back({a, in.lo[static_cast<size_t>(j)]});
    planes.push_back({a, in.hi[static_cast<size_t>(j)]});
  }
  const int p = static_cast<int>(planes.size());

  const auto feasible_point = [&](const std::vector<double>& x) {
    for (int j = 0; j < n; ++j)
      if (x[static_cast<size_t>(j)] < in.lo[static_cast<size_t>(j)] - 1e-7 ||
          x[static_cast<size_t>(j)] > in.hi[static_cast<size_t>(j)] + 1e-7)
        return false;
    for (size_t r = 0; r < in.rows.size(); ++r) {
      double lhs = 0.0;
      for (int j = 0; j < n; ++j) lhs += in.rows[r][j] * x[static_cast<size_t>(j)];
      if (in.sense[r] == 'L' && lhs > in.rhs[r] + 1e-7) return false;
      if (in.sense[r] == 'G' && lhs < in.rhs[r] - 1e-7) return false;
      if (in.sense[r] == 'E' && std::abs(lhs - in.rhs[r]) > 1e-7) return false;
    }
    return true;
  };

  DenseResult result;
  std::vector<int> pick(static_cast<size_t>(n));
  std::vector<std::vector<double>> a(static_cast<size_t>(n));
  std::vector<double> b(static_cast<size_t>(n)), x(static_cast<size_t>(n));

  const auto solve_square = [&]() -> bool {
    std::vector<std::vector<double>> mat = a;
    std::vector<double> rhs = b;
    for (int col = 0; col < n; ++col) {
      int piv = -1;
      double best = 1e-9;
      for (int r = col; r < n; ++r)
        if (std::abs(mat[static_cast<size_t>(r)][static_cast<size_t>(col)]) > best) {
          best = std::abs(mat[static_cast<size_t>(r)][static_cast<size_t>(col)]);
          piv = r;
        }
      if (piv < 0) return false;
      std::swap(mat[static_cast<size_t>(col)], mat[static_cast<size_t>(piv)]);
      std::swap(rhs[static_cast<size_t>(col)], rhs[static_cast<size_t>(piv)]);
      for (int r = 0; r < n; ++r) {
        if (r == col) continue;
        const double f = mat[static_cast<size_t>(r)][static_cast<size_t>(col)] /
                         mat[static_cast<size_t>(col)][static_cast<size_t>(col)];
        if (f == 0.0) continue;
        for (int k = col; k < n; ++k)
          mat[static_cast<size_t>(r)][static_cast<size_t>(k)] -=
              f * mat[static_cast<size_t>(col)][static_cast<size_t>(k)];
        rhs[static_cast<size_t>(r)] -= f * rhs[static_cast<size_t>(col)];
      }
    }
    for (int j = 0; j < n; ++j)
      x[static_cast<size_t>(j)] = rhs[static_cast<size_t>(j)] /
                                  mat[static_cast<size_t>(j)][static_cast<size_t>(j)];
    return true;
  };

  const auto consider = [&]() {
    if (!solve_square()) return;
    if (!feasible_point(x)) return;
    double obj = in.c0;
    for (int j = 0; j < n; ++j) obj += in.c[static_cast<size_t>(j)] * x[static_cast<size_t>(j)];
    if (!result.feasible || obj < result.objective) {
      result.feasible = true;
      result.objective = obj;
      result.x = x;
    }
  };

  // Iterate all n-subsets of planes.
  std::vector<int> idx(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) idx[static_cast<size_t>(j)] = j;
  while (true) {
    for (int j = 0; j < n; ++j) {
      a[static_cast<size_t>(j)] = planes[static_cast<size_t>(idx[static_cast<size_t>(j)])].a;
      b[static_cast<size_t>(j)] = planes[static_cast<size_t>(idx[static_cast<size_t>(j)])].b;
    }
    consider();
    int pos = n - 1;
    while (pos >= 0 && idx[static_cast<size_t>(pos)] == p - n + pos) pos--;
    if (pos < 0) break;
    idx[static_cast<size_t>(pos)]++;
    for (int j = pos + 1; j < n; ++j) idx[static_cast<size_t>(j)] = idx[static_cast<size_t>(j - 1)] + 1;
  }
  return result;
}

}  // namespace oracle

#endif
