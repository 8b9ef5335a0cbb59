/* SPDX-License-Identifier: Apache-2.0 */

#include "ucdr/simplex.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstring>
#include <stdexcept>

namespace ucdr {

void LinearProgram::resize_vars(int n) {
  num_vars = n;
  cost.assign(static_cast<size_t>(n), 0.0);
  lower.assign(static_cast<size_t>(n), 0.0);
  upper.assign(static_cast<size_t>(n), kInfinity);
}

void LinearProgram::add_row(const std::vector<int>& cols, const std::vector<double>& vals,
                            char row_sense, double row_rhs) {
  if (cols.size() != vals.size()) throw std::invalid_argument("row index/value size mismatch");
  for (int c : cols)
    if (c < 0 || c >= num_vars) throw std::invalid_argument("row references unknown variable");
  if (row_sense != 'L' && row_sense != 'G' && row_sense != 'E')
    throw std::invalid_argument("row sense must be one of L, G, E");
  for (size_t k = 0; k < cols.size(); ++k) {
    if (vals[k] == 0.0) continue;
    if (!std::isfinite(vals[k])) throw std::invalid_argument("row coefficient not finite");
    col_index.push_back(cols[k]);
    coef.push_back(vals[k]);
  }
  row_start.push_back(static_cast<int>(col_index.size()));
  sense.push_back(row_sense);
  rhs.push_back(row_rhs);
}

const char* lp_status_name(LpStatus status) {
  switch (status) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
    case LpStatus::IterationLimit: return "iteration_limit";
    case LpStatus::NumericalFailure: return "numerical_failure";
  }
  return "unknown";
}

double lp_violation(const LinearProgram& lp, const std::vector<double>& x) {
  double worst = 0.0;
  for (int j = 0; j < lp.num_vars; ++j) {
    worst = std::max(worst, lp.lower[static_cast<size_t>(j)] - x[static_cast<size_t>(j)]);
    worst = std::max(worst, x[static_cast<size_t>(j)] - lp.upper[static_cast<size_t>(j)]);
  }
  for (int r = 0; r < lp.num_rows(); ++r) {
    double lhs = 0.0;
    for (int k = lp.row_start[static_cast<size_t>(r)]; k < lp.row_start[static_cast<size_t>(r) + 1]; ++k)
      lhs += lp.coef[static_cast<size_t>(k)] * x[static_cast<size_t>(lp.col_index[static_cast<size_t>(k)])];
    const double b = lp.rhs[static_cast<size_t>(r)];
    switch (lp.sense[static_cast<size_t>(r)]) {
      case 'L': worst = std::max(worst, lhs - b); break;
      case 'G': worst = std::max(worst, b - lhs); break;
      case 'E': worst = std::max(worst, std::abs(lhs - b)); break;
      default: break;
    }
  }
  return worst;
}

namespace {

enum VarStatus : std::uint8_t {
  kNonbasicLower = 0,
  kNonbasicUpper = 1,
  kNonbasicFree = 2,
  kBasic = 3,
};

// Column geometry of [A | I]: structural columns then one +1 slack per row.
struct ColumnMatrix {
  int m = 0;
  int n_struct = 0;
  std::vector<int> start;
  std::vector<int> row;
  std::vector<double> val;

  int total_cols() const { return n_struct + m; }
  int nnz(int col) const { return start[static_cast<size_t>(col) + 1] - start[static_cast<size_t>(col)]; }
};

ColumnMatrix build_columns(const LinearProgram& lp) {
  ColumnMatrix mat;
  mat.m = lp.num_rows();
  mat.n_struct = lp.num_vars;
  std::vector<int> counts(static_cast<size_t>(mat.total_cols()), 0);
  for (size_t k = 0; k < lp.col_index.size(); ++k) counts[static_cast<size_t>(lp.col_index[k])]++;
  for (int r = 0; r < mat.m; ++r) counts[static_cast<size_t>(mat.n_struct + r)] = 1;
  mat.start.assign(static_cast<size_t>(mat.total_cols()) + 1, 0);
  for (int c = 0; c < mat.total_cols(); ++c)
    mat.start[static_cast<size_t>(c) + 1] = mat.start[static_cast<size_t>(c)] + counts[static_cast<size_t>(c)];
  mat.row.resize(static_cast<size_t>(mat.start.back()));
  mat.val.resize(static_cast<size_t>(mat.start.back()));
  std::vector<int> fill(mat.start.begin(), mat.start.end() - 1);
  for (int r = 0; r < mat.m; ++r)
    for (int k = lp.row_start[static_cast<size_t>(r)]; k < lp.row_start[static_cast<size_t>(r) + 1]; ++k) {
      const int c = lp.col_index[static_cast<size_t>(k)];
      mat.row[static_cast<size_t>(fill[static_cast<size_t>(c)])] = r;
      mat.val[static_cast<size_t>(fill[static_cast<size_t>(c)])] = lp.coef[static_cast<size_t>(k)];
      fill[static_cast<size_t>(c)]++;
    }
  for (int r = 0; r < mat.m; ++r) {
    const int c = mat.n_struct + r;
    mat.row[static_cast<size_t>(fill[static_cast<size_t>(c)])] = r;
    mat.val[static_cast<size_t>(fill[static_cast<size_t>(c)])] = 1.0;
  }
  return mat;
}

// Exact basis factorization. Basic columns with a single nonzero map their
// row directly; the remaining "kernel" columns get a dense LU over the rows
// no singleton covers. UC bases are dominated by slack and startup-link
// columns, so the kernel stays small.
class BasisFactor {
 public:
  bool build(const ColumnMatrix& mat, const std::vector<int>& basic_cols) {
    const int m = mat.m;
    mat_ = &mat;
    m_ = m;
    singleton_row_.assign(static_cast<size_t>(m), -1);
    singleton_coef_.assign(static_cast<size_t>(m), 0.0);
    row_owner_.assign(static_cast<size_t>(m), -1);
    kernel_slots_.clear();
    kernel_rows_.clear();
    row_to_kernel_.assign(static_cast<size_t>(m), -1);

    for (int slot = 0; slot < m; ++slot) {
      const int col = basic_cols[static_cast<size_t>(slot)];
      if (mat.nnz(col) == 1) {
        const int k = mat.start[static_cast<size_t>(col)];
        const int r = mat.row[static_cast<size_t>(k)];
        const double v = mat.val[static_cast<size_t>(k)];
        if (row_owner_[static_cast<size_t>(r)] != -1 || std::abs(v) < 1e-12) return false;
        row_owner_[static_cast<size_t>(r)] = slot;
        singleton_row_[static_cast<size_t>(slot)] = r;
        singleton_coef_[static_cast<size_t>(slot)] = v;
      } else {
        kernel_slots_.push_back(slot);
      }
    }
    for (int r = 0; r < m; ++r)
      if (row_owner_[static_cast<size_t>(r)] == -1) {
        row_to_kernel_[static_cast<size_t>(r)] = static_cast<int>(kernel_rows_.size());
        kernel_rows_.push_back(r);
      }
    k_ = static_cast<int>(kernel_slots_.size());
    if (static_cast<int>(kernel_rows_.size()) != k_) return false;

    lu_.assign(static_cast<size_t>(k_) * static_cast<size_t>(k_), 0.0);
    perm_.resize(static_cast<size_t>(k_));
    for (int p = 0; p < k_; ++p) {
      const int col = basic_cols[static_cast<size_t>(kernel_slots_[static_cast<size_t>(p)])];
      for (int k = mat.start[static_cast<size_t>(col)]; k < mat.start[static_cast<size_t>(col) + 1]; ++k) {
        const int kr = row_to_kernel_[static_cast<size_t>(mat.row[static_cast<size_t>(k)])];
        if (kr >= 0) lu_[static_cast<size_t>(p) * static_cast<size_t>(k_) + static_cast<size_t>(kr)] = mat.val[static_cast<size_t>(k)];
      }
    }
    return factor_lu();
  }

  // Solve B x = b. `rhs_by_row` has length m; result is written per basis
  // slot into `out_by_slot`. `work` is caller scratch of length m.
  void ftran(const double* rhs_by_row, double* out_by_slot, double* work) const {
    kb_.assign(static_cast<size_t>(k_), 0.0);
    for (int p = 0; p < k_; ++p) kb_[static_cast<size_t>(p)] = rhs_by_row[kernel_rows_[static_cast<size_t>(p)]];
    lu_solve(kb_.data());
    std::memset(work, 0, sizeof(double) * static_cast<size_t>(m_));
    for (int p = 0; p < k_; ++p) {
      const double xv = kb_[static_cast<size_t>(p)];
      out_by_slot[kernel_slots_[static_cast<size_t>(p)]] = xv;
      if (xv == 0.0) continue;
      const int col = basic_col_of_kernel_[static_cast<size_t>(p)];
      for (int k = mat_->start[static_cast<size_t>(col)]; k < mat_->start[static_cast<size_t>(col) + 1]; ++k)
        work[mat_->row[static_cast<size_t>(k)]] += mat_->val[static_cast<size_t>(k)] * xv;
    }
    for (int slot = 0; slot < m_; ++slot) {
      const int r = singleton_row_[static_cast<size_t>(slot)];
      if (r >= 0)
        out_by_slot[slot] = (rhs_by_row[r] - work[r]) / singleton_coef_[static_cast<size_t>(slot)];
    }
  }

  // Solve B^T y = c. `c_by_slot` has length m; result indexed by row.
  void btran(const double* c_by_slot, double* y_by_row) const {
    for (int slot = 0; slot < m_; ++slot) {
      const int r = singleton_row_[static_cast<size_t>(slot)];
      if (r >= 0) y_by_row[r] = c_by_slot[slot] / singleton_coef_[static_cast<size_t>(slot)];
    }
    kb_.assign(static_cast<size_t>(k_), 0.0);
    for (int p = 0; p < k_; ++p) {
      const int col = basic_col_of_kernel_[static_cast<size_t>(p)];
      double acc = c_by_slot[kernel_slots_[static_cast<size_t>(p)]];
      for (int k = mat_->start[static_cast<size_t>(col)]; k < mat_->start[static_cast<size_t>(col) + 1]; ++k) {
        const int r = mat_->row[static_cast<size_t>(k)];
        if (row_to_kernel_[static_cast<size_t>(r)] < 0) acc -= mat_->val[static_cast<size_t>(k)] * y_by_row[r];
      }
      kb_[static_cast<size_t>(p)] = acc;
    }
    lu_solve_transpose(kb_.data());
    for (int p = 0; p < k_; ++p) y_by_row[kernel_rows_[static_cast<size_t>(p)]] = kb_[static_cast<size_t>(p)];
  }

  void bind_columns(const std::vector<int>& basic_cols) {
    basic_col_of_kernel_.resize(static_cast<size_t>(k_));
    for (int p = 0; p < k_; ++p)
      basic_col_of_kernel_[static_cast<size_t>(p)] = basic_cols[static_cast<size_t>(kernel_slots_[static_cast<size_t>(p)])];
  }

  int kernel_size() const { return k_; }

 private:
  bool factor_lu() {
    // Column-major dense LU with partial pivoting over kernel rows.
    for (int j = 0; j < k_; ++j) {
      int piv = -1;
      double best = 0.0;
      for (int i = j; i < k_; ++i) {
        const double v = std::abs(lu_at(i, j));
        if (v > best) {
          best = v;
          piv = i;
        }
      }
      if (piv < 0 || best < 1e-11) return false;
      perm_[static_cast<size_t>(j)] = piv;
      if (piv != j)
        for (int c = 0; c < k_; ++c) std::swap(lu_ref(j, c), lu_ref(piv, c));
      const double d = lu_at(j, j);
      for (int i = j + 1; i < k_; ++i) lu_ref(i, j) /= d;
      for (int c = j + 1; c < k_; ++c) {
        const double ujc = lu_at(j, c);
        if (ujc == 0.0) continue;
        double* colc = &lu_[static_cast<size_t>(c) * static_cast<size_t>(k_)];
        const double* colj = &lu_[static_cast<size_t>(j) * static_cast<size_t>(k_)];
        for (int i = j + 1; i < k_; ++i) colc[i] -= colj[i] * ujc;
      }
    }
    return true;
  }

  double lu_at(int i, int j) const { return lu_[static_cast<size_t>(j) * static_cast<size_t>(k_) + static_cast<size_t>(i)]; }
  double& lu_ref(int i, int j) { return lu_[static_cast<size_t>(j) * static_cast<size_t>(k_) + static_cast<size_t>(i)]; }

  void lu_solve(double* b) const {
    for (int j = 0; j < k_; ++j) {
      std::swap(b[j], b[perm_[static_cast<size_t>(j)]]);
      const double bj = b[j];
      if (bj == 0.0) continue;
      const double* colj = &lu_[static_cast<size_t>(j) * static_cast<size_t>(k_)];
      for (int i = j + 1; i < k_; ++i) b[i] -= colj[i] * bj;
    }
    for (int j = k_ - 1; j >= 0; --j) {
      b[j] /= lu_at(j, j);
      const double bj = b[j];
      if (bj == 0.0) continue;
      const double* colj = &lu_[static_cast<size_t>(j) * static_cast<size_t>(k_)];
      for (int i = 0; i < j; ++i) b[i] -= colj[i] * bj;
    }
  }

  void lu_solve_transpose(double* b) const {
    // Solve (P^T L U)^T y = b: first U^T, then L^T, then unpermute.
    for (int j = 0; j < k_; ++j) {
      double acc = b[j];
      const double* colj = &lu_[static_cast<size_t>(j) * static_cast<size_t>(k_)];
      for (int i = 0; i < j; ++i) acc -= colj[i] * b[i];
      b[j] = acc / colj[j];
    }
    for (int j = k_ - 1; j >= 0; --j) {
      double acc = b[j];
      const double* colj = &lu_[static_cast<size_t>(j) * static_cast<size_t>(k_)];
      for (int i = j + 1; i < k_; ++i) acc -= colj[i] * b[i];
      b[j] = acc;
      std::swap(b[j], b[perm_[static_cast<size_t>(j)]]);
    }
  }

  const ColumnMatrix* mat_ = nullptr;
  int m_ = 0;
  int k_ = 0;
  std::vector<int> singleton_row_;     // slot -> covered row, -1 for kernel slots
  std::vector<double> singleton_coef_;
  std::vector<int> row_owner_;
  std::vector<int> kernel_slots_;
  std::vector<int> kernel_rows_;
  std::vector<int> row_to_kernel_;
  std::vector<int> basic_col_of_kernel_;
  std::vector<double> lu_;
  std::vector<int> perm_;
  mutable std::vector<double> kb_;
};

struct Eta {
  int slot;
  double pivot;
  std::vector<std::pair<int, double>> other;  // (slot, alpha)
};

}  // namespace

struct SimplexSolver::Impl {
  const LinearProgram& lp;
  SimplexConfig cfg;
  ColumnMatrix mat;
  int m;
  int n_struct;
  int n_total;

  std::vector<double> lo, hi;        // working bounds over all columns
  std::vector<double> root_lo, root_hi;
  std::vector<double> cost2;         // phase-2 costs over all columns
  std::vector<std::uint8_t> status;
  std::vector<int> basic_cols;       // slot -> column
  std::vector<int> slot_of_col;      // column -> slot or -1
  std::vector<double> x;             // all columns

  BasisFactor factor;
  std::vector<Eta> etas;

  // scratch
  std::vector<double> work_m, alpha, ybuf, cslot, rhs_work;

  long iterations = 0;
  bool bland = false;
  int degen_streak = 0;

  explicit Impl(const LinearProgram& lp_in, SimplexConfig config)
      : lp(lp_in), cfg(config), mat(build_columns(lp_in)) {
    m = mat.m;
    n_struct = mat.n_struct;
    n_total = mat.total_cols();
    lo.resize(static_cast<size_t>(n_total));
    hi.resize(static_cast<size_t>(n_total));
    cost2.assign(static_cast<size_t>(n_total), 0.0);
    for (int j = 0; j < n_struct; ++j) {
      lo[static_cast<size_t>(j)] = lp.lower[static_cast<size_t>(j)];
      hi[static_cast<size_t>(j)] = lp.upper[static_cast<size_t>(j)];
      cost2[static_cast<size_t>(j)] = lp.cost[static_cast<size_t>(j)];
    }
    for (int r = 0; r < m; ++r) {
      const int j = n_struct + r;
      switch (lp.sense[static_cast<size_t>(r)]) {
        case 'L': lo[static_cast<size_t>(j)] = 0.0; hi[static_cast<size_t>(j)] = kInfinity; break;
        case 'G': lo[static_cast<size_t>(j)] = -kInfinity; hi[static_cast<size_t>(j)] = 0.0; break;
        default:  lo[static_cast<size_t>(j)] = 0.0; hi[static_cast<size_t>(j)] = 0.0; break;
      }
    }
    root_lo = lo;
    root_hi = hi;
    status.assign(static_cast<size_t>(n_total), kNonbasicLower);
    slot_of_col.assign(static_cast<size_t>(n_total), -1);
    x.assign(static_cast<size_t>(n_total), 0.0);
    work_m.resize(static_cast<size_t>(m));
    alpha.resize(static_cast<size_t>(m));
    ybuf.resize(static_cast<size_t>(m));
    cslot.resize(static_cast<size_t>(m));
    rhs_work.resize(static_cast<size_t>(m));
  }

  long iteration_limit() const {
    return cfg.max_iterations > 0 ? cfg.max_iterations
                                  : 50L * (static_cast<long>(m) + static_cast<long>(n_total));
  }

  double nonbasic_rest_value(int j) const {
    if (lo[static_cast<size_t>(j)] > -kInfinity) return lo[static_cast<size_t>(j)];
    if (hi[static_cast<size_t>(j)] < kInfinity) return hi[static_cast<size_t>(j)];
    return 0.0;
  }

  std::uint8_t nonbasic_rest_status(int j) const {
    if (lo[static_cast<size_t>(j)] > -kInfinity) return kNonbasicLower;
    if (hi[static_cast<size_t>(j)] < kInfinity) return kNonbasicUpper;
    return kNonbasicFree;
  }

  void init_cold() {
    basic_cols.resize(static_cast<size_t>(m));
    std::fill(slot_of_col.begin(), slot_of_col.end(), -1);
    for (int j = 0; j < n_struct; ++j) {
      status[static_cast<size_t>(j)] = nonbasic_rest_status(j);
      x[static_cast<size_t>(j)] = nonbasic_rest_value(j);
    }
    for (int r = 0; r < m; ++r) {
      const int j = n_struct + r;
      status[static_cast<size_t>(j)] = kBasic;
      basic_cols[static_cast<size_t>(r)] = j;
      slot_of_col[static_cast<size_t>(j)] = r;
    }
  }

  bool init_warm(const BasisDescriptor& desc) {
    if (static_cast<int>(desc.status.size()) != n_total) return false;
    int count = 0;
    for (std::uint8_t s : desc.status)
      if (s == kBasic) count++;
    if (count != m) return false;
    basic_cols.clear();
    basic_cols.reserve(static_cast<size_t>(m));
    std::fill(slot_of_col.begin(), slot_of_col.end(), -1);
    for (int j = 0; j < n_total; ++j) {
      status[static_cast<size_t>(j)] = desc.status[static_cast<size_t>(j)];
      if (status[static_cast<size_t>(j)] == kBasic) {
        slot_of_col[static_cast<size_t>(j)] = static_cast<int>(basic_cols.size());
        basic_cols.push_back(j);
      } else {
        // Snap recorded rest positions onto the current bounds.
        std::uint8_t s = status[static_cast<size_t>(j)];
        if (s == kNonbasicLower && lo[static_cast<size_t>(j)] <= -kInfinity) s = nonbasic_rest_status(j);
        if (s == kNonbasicUpper && hi[static_cast<size_t>(j)] >= kInfinity) s = nonbasic_rest_status(j);
        status[static_cast<size_t>(j)] = s;
        x[static_cast<size_t>(j)] = s == kNonbasicLower   ? lo[static_cast<size_t>(j)]
                                    : s == kNonbasicUpper ? hi[static_cast<size_t>(j)]
                                                          : 0.0;
      }
    }
    return true;
  }

  bool refactor() {
    if (!factor.build(mat, basic_cols)) return false;
    factor.bind_columns(basic_cols);
    etas.clear();
    return true;
  }

  void recompute_basic_values() {
    for (int r = 0; r < m; ++r) rhs_work[static_cast<size_t>(r)] = lp.rhs[static_cast<size_t>(r)];
    for (int j = 0; j < n_total; ++j) {
      if (status[static_cast<size_t>(j)] == kBasic) continue;
      const double v = x[static_cast<size_t>(j)];
      if (v == 0.0) continue;
      for (int k = mat.start[static_cast<size_t>(j)]; k < mat.start[static_cast<size_t>(j) + 1]; ++k)
        rhs_work[static_cast<size_t>(mat.row[static_cast<size_t>(k)])] -= mat.val[static_cast<size_t>(k)] * v;
    }
    ftran_full(rhs_work.data(), alpha.data());
    for (int slot = 0; slot < m; ++slot) x[static_cast<size_t>(basic_cols[static_cast<size_t>(slot)])] = alpha[static_cast<size_t>(slot)];
  }

  void ftran_full(const double* rhs_by_row, double* out_by_slot) {
    factor.ftran(rhs_by_row, out_by_slot, work_m.data());
    for (const Eta& e : etas) {
      const double vr = out_by_slot[e.slot] / e.pivot;
      if (vr != 0.0)
        for (const auto& [s, a] : e.other) out_by_slot[s] -= a * vr;
      out_by_slot[e.slot] = vr;
    }
  }

  void btran_full(const double* c_by_slot, double* y_by_row) {
    std::copy(c_by_slot, c_by_slot + m, cslot.begin());
    for (auto it = etas.rbegin(); it != etas.rend(); ++it) {
      double acc = cslot[static_cast<size_t>(it->slot)];
      for (const auto& [s, a] : it->other) acc -= a * cslot[static_cast<size_t>(s)];
      cslot[static_cast<size_t>(it->slot)] = acc / it->pivot;
    }
    factor.btran(cslot.data(), y_by_row);
  }

  // Sparse column j of [A | I] scattered through the basis inverse.
  void ftran_column(int j, double* out_by_slot) {
    std::fill(rhs_work.begin(), rhs_work.end(), 0.0);
    for (int k = mat.start[static_cast<size_t>(j)]; k < mat.start[static_cast<size_t>(j) + 1]; ++k)
      rhs_work[static_cast<size_t>(mat.row[static_cast<size_t>(k)])] = mat.val[static_cast<size_t>(k)];
    ftran_full(rhs_work.data(), out_by_slot);
  }

  int count_infeasible(double tol) const {
    int count = 0;
    for (int slot = 0; slot < m; ++slot) {
      const int j = basic_cols[static_cast<size_t>(slot)];
      const double v = x[static_cast<size_t>(j)];
      if (v < lo[static_cast<size_t>(j)] - tol || v > hi[static_cast<size_t>(j)] + tol) count++;
    }
    return count;
  }

  // Reduced cost of column j against duals y with phase cost cj.
  double reduced_cost(int j, const double* y, bool phase_two) const {
    double d = phase_two ? cost2[static_cast<size_t>(j)] : 0.0;
    for (int k = mat.start[static_cast<size_t>(j)]; k < mat.start[static_cast<size_t>(j) + 1]; ++k)
      d -= mat.val[static_cast<size_t>(k)] * y[mat.row[static_cast<size_t>(k)]];
    return d;
  }

  struct Entering {
    int col = -1;
    int dir = 0;  // +1 increase, -1 decrease
    double score = 0.0;
  };

  Entering price(const double* y, bool phase_two) const {
    Entering best;
    for (int j = 0; j < n_total; ++j) {
      const std::uint8_t s = status[static_cast<size_t>(j)];
      if (s == kBasic) continue;
      if (lo[static_cast<size_t>(j)] == hi[static_cast<size_t>(j)]) continue;  // fixed
      const double d = reduced_cost(j, y, phase_two);
      int dir = 0;
      if (s == kNonbasicLower) {
        if (d < -cfg.optimality_tol) dir = 1;
      } else if (s == kNonbasicUpper) {
        if (d > cfg.optimality_tol) dir = -1;
      } else {  // free at zero
        if (d < -cfg.optimality_tol) dir = 1;
        else if (d > cfg.optimality_tol) dir = -1;
      }
      if (dir == 0) continue;
      if (bland) return Entering{j, dir, std::abs(d)};
      if (std::abs(d) > best.score) best = Entering{j, dir, std::abs(d)};
    }
    return best;
  }

  struct RatioResult {
    double theta = kInfinity;
    int leaving_slot = -1;   // -1 with finite theta means a bound flip
    int leaving_to = 0;      // kNonbasicLower / kNonbasicUpper
    bool unbounded = false;
  };

  RatioResult ratio_test(int q, int dir, const double* alpha_by_slot, bool phase_two) const {
    RatioResult res;
    double flip_theta = kInfinity;
    if (lo[static_cast<size_t>(q)] > -kInfinity && hi[static_cast<size_t>(q)] < kInfinity)
      flip_theta = hi[static_cast<size_t>(q)] - lo[static_cast<size_t>(q)];

    const double tol = cfg.feasibility_tol;
    double best_theta = kInfinity;
    int best_slot = -1;
    int best_to = 0;
    double best_abs_alpha = 0.0;

    for (int slot = 0; slot < m; ++slot) {
      const double a = alpha_by_slot[slot];
      if (std::abs(a) <= cfg.pivot_tol) continue;
      const int j = basic_cols[static_cast<size_t>(slot)];
      const double dx = -static_cast<double>(dir) * a;
      const double v = x[static_cast<size_t>(j)];
      const double lb = lo[static_cast<size_t>(j)];
      const double ub = hi[static_cast<size_t>(j)];
      double theta = kInfinity;
      int to = 0;
      if (!phase_two && v < lb - tol) {
        if (dx > 0.0) { theta = (lb - v) / dx; to = kNonbasicLower; }
      } else if (!phase_two && v > ub + tol) {
        if (dx < 0.0) { theta = (ub - v) / dx; to = kNonbasicUpper; }
      } else {
        if (dx > 0.0 && ub < kInfinity) { theta = (ub - v) / dx; to = kNonbasicUpper; }
        else if (dx < 0.0 && lb > -kInfinity) { theta = (lb - v) / dx; to = kNonbasicLower; }
      }
      if (theta == kInfinity) continue;
      if (theta < 0.0) theta = 0.0;
      // Smallest ratio wins; near-ties prefer the largest pivot, then the
      // lowest slot (first seen, since slots ascend).
      bool accept = false;
      if (best_slot < 0 || theta < best_theta - 1e-12) accept = true;
      else if (theta <= best_theta + 1e-12 && std::abs(a) > best_abs_alpha + 1e-15) accept = true;
      if (accept) {
        best_theta = std::min(best_theta, theta);
        best_slot = slot;
        best_to = to;
        best_abs_alpha = std::abs(a);
      }
    }

    if (flip_theta <= best_theta) {
      if (flip_theta == kInfinity) {
        res.unbounded = true;
        return res;
      }
      res.theta = flip_theta;
      res.leaving_slot = -1;
      return res;
    }
    if (best_slot < 0) {
      res.unbounded = true;
      return res;
    }
    res.theta = best_theta;
    res.leaving_slot = best_slot;
    res.leaving_to = best_to;
    return res;
  }

  void apply_step(int q, int dir, const RatioResult& ratio, const double* alpha_by_slot) {
    const double step = ratio.theta * static_cast<double>(dir);
    for (int slot = 0; slot < m; ++slot) {
      const double a = alpha_by_slot[slot];
      if (a == 0.0) continue;
      const int j = basic_cols[static_cast<size_t>(slot)];
      x[static_cast<size_t>(j)] -= step * a;
    }
    if (ratio.leaving_slot < 0) {
      // bound flip
      x[static_cast<size_t>(q)] = dir > 0 ? hi[static_cast<size_t>(q)] : lo[static_cast<size_t>(q)];
      status[static_cast<size_t>(q)] = dir > 0 ? kNonbasicUpper : kNonbasicLower;
      return;
    }
    const int slot = ratio.leaving_slot;
    const int leaving = basic_cols[static_cast<size_t>(slot)];
    x[static_cast<size_t>(q)] += step;
    x[static_cast<size_t>(leaving)] = ratio.leaving_to == kNonbasicLower
                                          ? lo[static_cast<size_t>(leaving)]
                                          : hi[static_cast<size_t>(leaving)];
    status[static_cast<size_t>(leaving)] = static_cast<std::uint8_t>(ratio.leaving_to);
    status[static_cast<size_t>(q)] = kBasic;
    slot_of_col[static_cast<size_t>(leaving)] = -1;
    slot_of_col[static_cast<size_t>(q)] = slot;
    basic_cols[static_cast<size_t>(slot)] = q;

    Eta eta;
    eta.slot = slot;
    eta.pivot = alpha_by_slot[slot];
    for (int s = 0; s < m; ++s)
      if (s != slot && std::abs(alpha_by_slot[s]) > 1e-13)
        eta.other.emplace_back(s, alpha_by_slot[s]);
    etas.push_back(std::move(eta));
  }

  LpStatus iterate() {
    const long limit = iteration_limit();
    bland = false;
    degen_streak = 0;
    bool clean_pass = false;  // final no-candidate conclusion needs fresh factors
    while (true) {
      if (iterations >= limit) return LpStatus::IterationLimit;

      const bool phase_two = count_infeasible(cfg.feasibility_tol) == 0;
      if (phase_two) {
        for (int slot = 0; slot < m; ++slot)
          cslot[static_cast<size_t>(slot)] = cost2[static_cast<size_t>(basic_cols[static_cast<size_t>(slot)])];
      } else {
        for (int slot = 0; slot < m; ++slot) {
          const int j = basic_cols[static_cast<size_t>(slot)];
          const double v = x[static_cast<size_t>(j)];
          double c = 0.0;
          if (v < lo[static_cast<size_t>(j)] - cfg.feasibility_tol) c = -1.0;
          else if (v > hi[static_cast<size_t>(j)] + cfg.feasibility_tol) c = 1.0;
          cslot[static_cast<size_t>(slot)] = c;
        }
      }
      btran_full(cslot.data(), ybuf.data());
      const Entering entering = price(ybuf.data(), phase_two);
      if (entering.col < 0) {
        if (!clean_pass && !etas.empty()) {
          if (!refactor()) return LpStatus::NumericalFailure;
          recompute_basic_values();
          clean_pass = true;
          continue;
        }
        return phase_two ? LpStatus::Optimal : LpStatus::Infeasible;
      }
      clean_pass = false;

      ftran_column(entering.col, alpha.data());
      const RatioResult ratio = ratio_test(entering.col, entering.dir, alpha.data(), phase_two);
      if (ratio.unbounded) {
        // A shrinking infeasibility sum cannot be unbounded below.
        return phase_two ? LpStatus::Unbounded : LpStatus::NumericalFailure;
      }
      apply_step(entering.col, entering.dir, ratio, alpha.data());
      iterations++;

      if (ratio.theta < 1e-10) {
        if (++degen_streak >= cfg.degenerate_streak_limit) bland = true;
      } else {
        degen_streak = 0;
        bland = false;
      }

      if (static_cast<int>(etas.size()) >= cfg.refactor_interval) {
        if (!refactor()) return LpStatus::NumericalFailure;
        recompute_basic_values();
      }
    }
  }

  LpSolution package(LpStatus status_out) {
    LpSolution sol;
    sol.status = status_out;
    sol.iterations = iterations;
    sol.x.assign(x.begin(), x.begin() + n_struct);
    double obj = lp.cost_constant;
    for (int j = 0; j < n_struct; ++j) obj += cost2[static_cast<size_t>(j)] * x[static_cast<size_t>(j)];
    sol.objective = obj;
    sol.basis.status = status;
    sol.max_primal_violation = lp_violation(lp, sol.x);
    return sol;
  }

  LpSolution run(bool warm, const BasisDescriptor* desc) {
    iterations = 0;
    bool ok = false;
    if (warm && desc != nullptr && init_warm(*desc)) {
      ok = refactor();
      if (ok) recompute_basic_values();
    }
    if (!ok) {
      init_cold();
      if (!refactor()) return package(LpStatus::NumericalFailure);
      recompute_basic_values();
    }
    LpStatus status_out = iterate();
    if (status_out == LpStatus::Optimal || status_out == LpStatus::IterationLimit) {
      if (!etas.empty() && refactor()) recompute_basic_values();
    }
    return package(status_out);
  }
};

SimplexSolver::SimplexSolver(const LinearProgram& lp, SimplexConfig config)
    : impl_(std::make_unique<Impl>(lp, config)) {}

SimplexSolver::~SimplexSolver() = default;

void SimplexSolver::set_bounds(int var, double lo, double hi) {
  if (var < 0 || var >= impl_->n_total) throw std::out_of_range("variable index");
  if (lo > hi) throw std::invalid_argument("lower bound exceeds upper bound");
  impl_->lo[static_cast<size_t>(var)] = lo;
  impl_->hi[static_cast<size_t>(var)] = hi;
}

void SimplexSolver::reset_bounds() {
  impl_->lo = impl_->root_lo;
  impl_->hi = impl_->root_hi;
}

LpSolution SimplexSolver::solve() { return impl_->run(false, nullptr); }

LpSolution SimplexSolver::solve_warm(const BasisDescriptor& basis) {
  return impl_->run(true, &basis);
}

LpSolution solve_lp(const LinearProgram& lp, const SimplexConfig& config) {
  SimplexSolver solver(lp, config);
  return solver.solve();
}

LpSolution resolve_with_bound(const LinearProgram& lp, const BasisDescriptor& basis,
                              int var_index, double new_lower, double new_upper,
                              const SimplexConfig& config) {
  SimplexSolver solver(lp, config);
  solver.set_bounds(var_index, new_lower, new_upper);
  return solver.solve_warm(basis);
}

}  // namespace ucdr
