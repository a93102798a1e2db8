#include "rsscflp/lp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rsscflp::lp {

namespace {
constexpr double kFeasTol = 1e-7;   // primal feasibility / phase-1 target
constexpr double kDualTol = 1e-7;   // reduced-cost entering threshold
constexpr double kPivotTol = 1e-9;  // smallest usable pivot element
constexpr double kDegenTol = 1e-10;
constexpr int kDegenLimit = 50;     // pivots before switching to Bland's rule
constexpr int kRefactorEvery = 100;
constexpr long kIterationCap = 500000;
}  // namespace

int LpProblem::add_row(RowSense sense, double rhs) {
  if (!cols_.empty())
    throw std::logic_error("lp: rows must be added before columns");
  rows_.push_back({sense, rhs});
  return static_cast<int>(rows_.size()) - 1;
}

int LpProblem::add_column(double cost,
                          std::span<const std::pair<int, double>> entries,
                          double lower, double upper) {
  Column col;
  col.cost = cost;
  col.lower = lower;
  col.upper = upper;
  col.entries.assign(entries.begin(), entries.end());
  for (const auto& [r, v] : col.entries)
    if (r < 0 || r >= num_rows()) throw std::invalid_argument("lp: bad row index");
  std::sort(col.entries.begin(), col.entries.end());
  cols_.push_back(std::move(col));
  at_upper_struct_.push_back(0);
  in_basis_struct_.push_back(0);
  return static_cast<int>(cols_.size()) - 1;
}

void LpProblem::set_column_upper(int col, double upper) {
  cols_[col].upper = upper;
  if (!in_basis_struct_.empty() && !in_basis_struct_[col] &&
      at_upper_struct_[col] && upper >= kInfinity)
    at_upper_struct_[col] = 0;  // re-pin to the (finite) lower bound
}

void LpProblem::set_row_sense(int row, RowSense sense) {
  // The slack picks up its new bounds implicitly; a basic slack that no
  // longer fits is caught by the warm-start feasibility check.
  rows_[row].sense = sense;
}

void LpProblem::set_basis(std::span<const int> basic_ids) {
  if (static_cast<int>(basic_ids.size()) != num_rows())
    throw std::invalid_argument("lp: basis size must equal row count");
  basis_.assign(basic_ids.begin(), basic_ids.end());
  at_upper_struct_.assign(cols_.size(), 0);
  at_upper_slack_.assign(rows_.size(), 0);
  in_basis_struct_.assign(cols_.size(), 0);
  in_basis_slack_.assign(rows_.size(), 0);
  in_basis_art_.assign(rows_.size(), 0);
  for (int id : basis_) {
    if (id >= kArtBase) throw std::invalid_argument("lp: cannot seed artificials");
    if (id >= kSlackBase) {
      if (id - kSlackBase >= num_rows()) throw std::invalid_argument("lp: bad slack id");
      in_basis_slack_[id - kSlackBase] = 1;
    } else {
      if (id < 0 || id >= num_cols()) throw std::invalid_argument("lp: bad column id");
      in_basis_struct_[id] = 1;
    }
  }
  basis_valid_ = true;
}

void LpProblem::clear_basis() { basis_valid_ = false; }

double LpProblem::var_cost(int id, bool phase1) const {
  if (id >= kArtBase) return phase1 ? 1.0 : 0.0;
  if (id >= kSlackBase) return 0.0;
  return phase1 ? 0.0 : cols_[id].cost;
}

double LpProblem::var_lower(int id) const {
  if (id >= kSlackBase) return 0.0;
  return cols_[id].lower;
}

double LpProblem::var_upper(int id) const {
  if (id >= kArtBase) return arts_active_ ? kInfinity : 0.0;
  if (id >= kSlackBase)
    return rows_[id - kSlackBase].sense == RowSense::kGreaterEqual ? kInfinity : 0.0;
  return cols_[id].upper;
}

void LpProblem::var_column(int id, std::vector<std::pair<int, double>>& out) const {
  out.clear();
  if (id >= kArtBase) {
    out.emplace_back(id - kArtBase, art_sign_[id - kArtBase]);
  } else if (id >= kSlackBase) {
    out.emplace_back(id - kSlackBase, -1.0);
  } else {
    out = cols_[id].entries;
  }
}

bool LpProblem::var_fixed(int id) const {
  return var_upper(id) - var_lower(id) < 1e-14;
}

double LpProblem::nonbasic_value(int id) const {
  return nonbasic_at_upper(id) ? var_upper(id) : var_lower(id);
}

bool LpProblem::nonbasic_at_upper(int id) const {
  if (id >= kArtBase) return false;
  if (id >= kSlackBase) return at_upper_slack_[id - kSlackBase];
  return at_upper_struct_[id];
}

void LpProblem::set_nonbasic_state(int id, bool at_upper) {
  if (id >= kArtBase) return;  // artificials always rest at zero
  if (id >= kSlackBase)
    at_upper_slack_[id - kSlackBase] = at_upper ? 1 : 0;
  else
    at_upper_struct_[id] = at_upper ? 1 : 0;
}

bool LpProblem::refactorize() {
  const int nr = num_rows();
  std::vector<double> mat(static_cast<std::size_t>(nr) * nr, 0.0);
  std::vector<std::pair<int, double>> col;
  for (int k = 0; k < nr; ++k) {
    var_column(basis_[k], col);
    for (const auto& [r, v] : col) mat[static_cast<std::size_t>(r) * nr + k] = v;
  }
  binv_.assign(static_cast<std::size_t>(nr) * nr, 0.0);
  for (int r = 0; r < nr; ++r) binv_[static_cast<std::size_t>(r) * nr + r] = 1.0;

  // Gauss-Jordan with partial pivoting on [B | I].
  for (int k = 0; k < nr; ++k) {
    int piv = -1;
    double best = kPivotTol;
    for (int r = k; r < nr; ++r) {
      const double a = std::fabs(mat[static_cast<std::size_t>(r) * nr + k]);
      if (a > best) {
        best = a;
        piv = r;
      }
    }
    if (piv < 0) return false;
    if (piv != k) {
      for (int c = 0; c < nr; ++c) {
        std::swap(mat[static_cast<std::size_t>(piv) * nr + c],
                  mat[static_cast<std::size_t>(k) * nr + c]);
        std::swap(binv_[static_cast<std::size_t>(piv) * nr + c],
                  binv_[static_cast<std::size_t>(k) * nr + c]);
      }
    }
    const double inv = 1.0 / mat[static_cast<std::size_t>(k) * nr + k];
    for (int c = 0; c < nr; ++c) {
      mat[static_cast<std::size_t>(k) * nr + c] *= inv;
      binv_[static_cast<std::size_t>(k) * nr + c] *= inv;
    }
    for (int r = 0; r < nr; ++r) {
      if (r == k) continue;
      const double f = mat[static_cast<std::size_t>(r) * nr + k];
      if (f == 0.0) continue;
      for (int c = 0; c < nr; ++c) {
        mat[static_cast<std::size_t>(r) * nr + c] -=
            f * mat[static_cast<std::size_t>(k) * nr + c];
        binv_[static_cast<std::size_t>(r) * nr + c] -=
            f * binv_[static_cast<std::size_t>(k) * nr + c];
      }
    }
  }
  return true;
}

void LpProblem::recompute_basic_values() {
  const int nr = num_rows();
  std::vector<double> rhs(nr);
  for (int r = 0; r < nr; ++r) rhs[r] = rows_[r].rhs;
  // Only structural nonbasics can sit at a nonzero bound; slacks and
  // artificials rest at zero when nonbasic.
  for (int j = 0; j < num_cols(); ++j) {
    if (in_basis_struct_[j]) continue;
    const double v = nonbasic_value(j);
    if (v == 0.0) continue;
    for (const auto& [r, a] : cols_[j].entries) rhs[r] -= a * v;
  }
  xb_.assign(nr, 0.0);
  for (int r = 0; r < nr; ++r) {
    double s = 0.0;
    const double* row = &binv_[static_cast<std::size_t>(r) * nr];
    for (int k = 0; k < nr; ++k) s += row[k] * rhs[k];
    xb_[r] = s;
  }
}

bool LpProblem::basis_feasible(double tol) const {
  for (int r = 0; r < num_rows(); ++r) {
    const int id = basis_[r];
    if (xb_[r] < var_lower(id) - tol || xb_[r] > var_upper(id) + tol) return false;
  }
  return true;
}

void LpProblem::install_artificial_basis() {
  const int nr = num_rows();
  at_upper_struct_.assign(cols_.size(), 0);
  at_upper_slack_.assign(rows_.size(), 0);
  in_basis_struct_.assign(cols_.size(), 0);
  in_basis_slack_.assign(rows_.size(), 0);
  in_basis_art_.assign(rows_.size(), 1);
  art_sign_.assign(nr, 1.0);

  std::vector<double> residual(nr);
  for (int r = 0; r < nr; ++r) residual[r] = rows_[r].rhs;
  for (int j = 0; j < num_cols(); ++j) {
    const double v = cols_[j].lower;  // every structural starts at its lower bound
    if (v == 0.0) continue;
    for (const auto& [r, a] : cols_[j].entries) residual[r] -= a * v;
  }
  basis_.resize(nr);
  xb_.assign(nr, 0.0);
  const int nrr = nr;
  binv_.assign(static_cast<std::size_t>(nrr) * nrr, 0.0);
  for (int r = 0; r < nr; ++r) {
    art_sign_[r] = residual[r] >= 0.0 ? 1.0 : -1.0;
    basis_[r] = kArtBase + r;
    xb_[r] = std::fabs(residual[r]);
    binv_[static_cast<std::size_t>(r) * nrr + r] = art_sign_[r];
  }
  basis_valid_ = true;
}

SolveStatus LpProblem::iterate(bool phase1, long& iterations) {
  const int nr = num_rows();
  std::vector<double> y(nr), w(nr);
  std::vector<std::pair<int, double>> colbuf;
  int pivots_since_refactor = 0;
  int degen_streak = 0;
  int polish_rounds = 0;
  bool bland = false;

  while (true) {
    if (iterations > kIterationCap) return SolveStatus::kIterationLimit;

    // Simplex multipliers y = c_B' B^{-1}.
    std::fill(y.begin(), y.end(), 0.0);
    for (int k = 0; k < nr; ++k) {
      const double c = var_cost(basis_[k], phase1);
      if (c == 0.0) continue;
      const double* row = &binv_[static_cast<std::size_t>(k) * nr];
      for (int r = 0; r < nr; ++r) y[r] += c * row[r];
    }

    // Pricing: most violating reduced cost (Dantzig), or lowest id under
    // Bland's rule while fighting degeneracy.
    int enter = -1;
    bool enter_from_upper = false;
    double best_viol = kDualTol;
    auto consider = [&](int id, double d, bool at_upper) {
      const double viol = at_upper ? d : -d;
      if (viol <= (bland ? kDualTol : best_viol)) return;
      if (bland && enter >= 0 && id >= enter) return;
      enter = id;
      enter_from_upper = at_upper;
      if (!bland) best_viol = viol;
    };
    for (int j = 0; j < num_cols(); ++j) {
      if (in_basis_struct_[j] || var_fixed(j)) continue;
      double d = phase1 ? 0.0 : cols_[j].cost;
      for (const auto& [r, a] : cols_[j].entries) d -= y[r] * a;
      consider(j, d, at_upper_struct_[j]);
    }
    for (int r = 0; r < nr; ++r) {
      const int id = kSlackBase + r;
      if (in_basis_slack_[r] || var_fixed(id)) continue;
      consider(id, y[r], at_upper_slack_[r]);
    }

    if (enter < 0) {
      // Confirm optimality on a fresh factorization before reporting it.
      if (pivots_since_refactor > 0 && polish_rounds < 5) {
        if (!refactorize()) throw std::logic_error("lp: basis went singular");
        recompute_basic_values();
        pivots_since_refactor = 0;
        ++polish_rounds;
        continue;
      }
      return SolveStatus::kOptimal;
    }

    // Direction of change for the entering variable and the basic response.
    var_column(enter, colbuf);
    for (int r = 0; r < nr; ++r) {
      double s = 0.0;
      const double* row = &binv_[static_cast<std::size_t>(r) * nr];
      for (const auto& [rr, a] : colbuf) s += row[rr] * a;
      w[r] = s;
    }
    const double dir = enter_from_upper ? -1.0 : 1.0;

    double t_bound = var_upper(enter) - var_lower(enter);  // bound-flip distance
    double t_min = t_bound;
    int leave_pos = -1;
    double leave_pivot = 0.0;
    for (int r = 0; r < nr; ++r) {
      const double wr = dir * w[r];
      const int id = basis_[r];
      double ratio;
      if (wr > kPivotTol) {
        ratio = (xb_[r] - var_lower(id)) / wr;
      } else if (wr < -kPivotTol) {
        const double ub = var_upper(id);
        if (ub >= kInfinity) continue;
        ratio = (ub - xb_[r]) / (-wr);
      } else {
        continue;
      }
      if (ratio < 0.0) ratio = 0.0;
      bool better = false;
      if (ratio < t_min - 1e-12) {
        better = true;
      } else if (ratio < t_min + 1e-12 && leave_pos >= 0) {
        if (bland) {
          better = basis_[r] < basis_[leave_pos];
        } else {
          better = std::fabs(wr) > std::fabs(leave_pivot);
        }
      } else if (ratio < t_min + 1e-12 && leave_pos < 0 && ratio < t_min) {
        better = true;
      }
      if (better) {
        t_min = std::min(ratio, t_min);
        leave_pos = r;
        leave_pivot = wr;
      }
    }

    ++iterations;

    if (leave_pos < 0) {
      if (t_bound >= kInfinity) return SolveStatus::kUnbounded;
      // Bound flip: the entering variable runs to its other bound.
      for (int r = 0; r < nr; ++r) xb_[r] -= t_bound * dir * w[r];
      set_nonbasic_state(enter, !enter_from_upper);
      continue;
    }

    const double t = std::max(t_min, 0.0);
    const double enter_value = nonbasic_value(enter) + dir * t;
    for (int r = 0; r < nr; ++r) xb_[r] -= t * dir * w[r];

    const int leaving = basis_[leave_pos];
    const bool leaving_to_upper = dir * w[leave_pos] < 0.0;
    set_nonbasic_state(leaving, leaving_to_upper);
    if (leaving >= kArtBase)
      in_basis_art_[leaving - kArtBase] = 0;
    else if (leaving >= kSlackBase)
      in_basis_slack_[leaving - kSlackBase] = 0;
    else
      in_basis_struct_[leaving] = 0;
    if (enter >= kSlackBase)
      in_basis_slack_[enter - kSlackBase] = 1;
    else
      in_basis_struct_[enter] = 1;
    basis_[leave_pos] = enter;
    xb_[leave_pos] = enter_value;

    // Product-form update of the dense inverse.
    const double piv = w[leave_pos];
    double* prow = &binv_[static_cast<std::size_t>(leave_pos) * nr];
    const double inv = 1.0 / piv;
    for (int c = 0; c < nr; ++c) prow[c] *= inv;
    for (int r = 0; r < nr; ++r) {
      if (r == leave_pos) continue;
      const double f = w[r];
      if (f == 0.0) continue;
      double* row = &binv_[static_cast<std::size_t>(r) * nr];
      for (int c = 0; c < nr; ++c) row[c] -= f * prow[c];
    }

    if (t <= kDegenTol) {
      if (++degen_streak >= kDegenLimit) bland = true;
    } else {
      degen_streak = 0;
      bland = false;
    }

    if (++pivots_since_refactor >= kRefactorEvery) {
      if (!refactorize()) throw std::logic_error("lp: basis went singular");
      recompute_basic_values();
      pivots_since_refactor = 0;
    }
  }
}

LpSolution LpProblem::solve() {
  LpSolution sol;
  const int nr = num_rows();
  at_upper_struct_.resize(cols_.size(), 0);
  at_upper_slack_.resize(rows_.size(), 0);
  in_basis_struct_.resize(cols_.size(), 0);
  in_basis_slack_.resize(rows_.size(), 0);
  in_basis_art_.resize(rows_.size(), 0);
  if (art_sign_.empty()) art_sign_.assign(rows_.size(), 1.0);

  arts_active_ = false;
  bool warm = false;
  if (basis_valid_ && static_cast<int>(basis_.size()) == nr) {
    if (refactorize()) {
      recompute_basic_values();
      warm = basis_feasible(kFeasTol);
    }
  }

  if (!warm) {
    install_artificial_basis();
    arts_active_ = true;
    const SolveStatus st = iterate(true, sol.iterations);
    if (st != SolveStatus::kOptimal) {
      sol.status = st;
      basis_valid_ = false;
      return sol;
    }
    double infeas = 0.0;
    for (int r = 0; r < nr; ++r)
      if (basis_[r] >= kArtBase) infeas += std::max(xb_[r], 0.0);
    arts_active_ = false;
    if (infeas > kFeasTol) {
      sol.status = SolveStatus::kInfeasible;
      basis_valid_ = true;
      return sol;
    }
    for (int r = 0; r < nr; ++r)
      if (basis_[r] >= kArtBase) xb_[r] = 0.0;
  }

  const SolveStatus st = iterate(false, sol.iterations);
  basis_valid_ = true;
  if (st != SolveStatus::kOptimal) {
    sol.status = st;
    if (st == SolveStatus::kIterationLimit) basis_valid_ = false;
    return sol;
  }

  // Extraction: primal values, duals from the final factorization, and the
  // realized duality gap as a numerical health certificate.
  sol.status = SolveStatus::kOptimal;
  sol.primal.assign(cols_.size(), 0.0);
  for (int j = 0; j < num_cols(); ++j)
    if (!in_basis_struct_[j]) sol.primal[j] = nonbasic_value(j);
  for (int r = 0; r < nr; ++r) {
    const int id = basis_[r];
    if (id < kSlackBase) {
      double v = xb_[r];
      v = std::max(v, cols_[id].lower);
      if (cols_[id].upper < kInfinity) v = std::min(v, cols_[id].upper);
      sol.primal[id] = v;
    }
  }
  double obj = 0.0;
  for (int j = 0; j < num_cols(); ++j) obj += cols_[j].cost * sol.primal[j];
  sol.objective = obj;

  sol.dual.assign(nr, 0.0);
  for (int k = 0; k < nr; ++k) {
    const double c = var_cost(basis_[k], false);
    if (c == 0.0) continue;
    const double* row = &binv_[static_cast<std::size_t>(k) * nr];
    for (int r = 0; r < nr; ++r) sol.dual[r] += c * row[r];
  }

  double dual_obj = 0.0;
  for (int r = 0; r < nr; ++r) dual_obj += sol.dual[r] * rows_[r].rhs;
  for (int j = 0; j < num_cols(); ++j) {
    if (in_basis_struct_[j]) continue;
    const double v = sol.primal[j];
    if (v == 0.0) continue;
    double d = cols_[j].cost;
    for (const auto& [r, a] : cols_[j].entries) d -= sol.dual[r] * a;
    dual_obj += d * v;
  }
  sol.duality_gap = std::fabs(obj - dual_obj);
  return sol;
}

}  // namespace rsscflp::lp
