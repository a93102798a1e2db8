#include "rsscflp/master.hpp"

#include <algorithm>
#include <stdexcept>

namespace rsscflp {

Master::Master(const Instance& inst, bool with_singletons, const NodeFixes& fixes)
    : inst_(inst), current_fixes_(fixes) {
  for (int j = 0; j < inst_.n; ++j) lp_.add_row(lp::RowSense::kGreaterEqual, 1.0);
  for (int i = 0; i < inst_.m; ++i) lp_.add_row(lp::RowSense::kGreaterEqual, -1.0);

  // Fallback column covering every customer at a prohibitive price. It keeps
  // the restricted master feasible at every node, so a phase-1 start is never
  // needed along the column-generation loop, and its use at convergence is a
  // certificate of node infeasibility.
  Column dummy;
  dummy.facility = Column::kDummyFacility;
  dummy.customers.resize(inst_.n);
  for (int j = 0; j < inst_.n; ++j) dummy.customers[j] = j;
  dummy.cost = 2 * (inst_.total_assign_cost() + inst_.total_fixed_cost());
  push_lp_column(dummy);
  pool_.push_back(std::move(dummy));

  if (with_singletons) {
    for (int i = 0; i < inst_.m; ++i) {
      if (fixes.y[i] == 0) continue;
      for (int j = 0; j < inst_.n; ++j) {
        if (fixes.x_forbidden(i, j, inst_.n)) continue;
        std::vector<int> one{j};
        if (!is_feasible_column(inst_, i, one)) continue;
        bool added = false;
        add_column(i, std::move(one), &added);
      }
    }
  }

  // Starting basis: the dummy column, the slack of every covering row but the
  // first, and every convexity slack. Primal feasible by construction.
  std::vector<int> basis;
  basis.push_back(pool_[0].lp_col);
  for (int j = 1; j < inst_.n; ++j) basis.push_back(lp::LpProblem::slack_id(covering_row(j)));
  for (int i = 0; i < inst_.m; ++i) basis.push_back(lp::LpProblem::slack_id(convexity_row(i)));
  lp_.set_basis(basis);

  configure(fixes);
}

void Master::push_lp_column(Column& col) {
  std::vector<std::pair<int, double>> entries;
  entries.reserve(col.customers.size() + 1);
  for (int j : col.customers) entries.emplace_back(covering_row(j), 1.0);
  if (col.facility != Column::kDummyFacility)
    entries.emplace_back(convexity_row(col.facility), -1.0);
  col.lp_col = lp_.add_column(static_cast<double>(col.cost), entries, 0.0,
                              lp::LpProblem::kInfinity);
}

int Master::add_column(int facility, std::vector<int> customers, bool* added) {
  std::sort(customers.begin(), customers.end());
  auto key = std::make_pair(facility, customers);
  if (auto it = index_.find(key); it != index_.end()) {
    if (added) *added = false;
    return it->second;
  }
  Column col;
  col.facility = facility;
  col.cost = inst_.fixed_cost[facility];
  for (int j : customers) col.cost += inst_.assign_cost[facility][j];
  col.customers = std::move(customers);
  push_lp_column(col);
  if (!current_fixes_.allows_column(col.facility, col.customers, inst_.n))
    lp_.set_column_upper(col.lp_col, 0.0);
  const int idx = static_cast<int>(pool_.size());
  index_.emplace(std::move(key), idx);
  pool_.push_back(std::move(col));
  if (added) *added = true;
  return idx;
}

void Master::configure(const NodeFixes& fixes) {
  current_fixes_ = fixes;
  // An open facility may serve nobody. Its zero-customer column keeps the
  // equality convexity row satisfiable even at nodes where every other
  // column of the facility is forbidden, so the restricted master never
  // turns LP-infeasible.
  for (int i = 0; i < inst_.m; ++i)
    if (fixes.y[i] == 1) add_column(i, {}, nullptr);
  for (std::size_t p = 1; p < pool_.size(); ++p) {
    const Column& col = pool_[p];
    const bool allowed = fixes.allows_column(col.facility, col.customers, inst_.n);
    lp_.set_column_upper(col.lp_col, allowed ? lp::LpProblem::kInfinity : 0.0);
  }
  for (int i = 0; i < inst_.m; ++i) {
    lp_.set_row_sense(convexity_row(i), fixes.y[i] == 1 ? lp::RowSense::kEqual
                                                        : lp::RowSense::kGreaterEqual);
  }
}

RmpSolution Master::solve() {
  RmpSolution out;
  lp::LpSolution sol = lp_.solve();
  if (sol.status != lp::SolveStatus::kOptimal) {
    // The dummy column keeps every node feasible and all costs are
    // nonnegative, so anything but optimal is a solver failure.
    throw std::logic_error("master: restricted master did not solve to optimality");
  }
  out.solved = true;
  out.objective = sol.objective;
  out.duality_gap = sol.duality_gap;
  out.z.resize(pool_.size());
  for (std::size_t p = 0; p < pool_.size(); ++p) out.z[p] = sol.primal[pool_[p].lp_col];
  out.duals.lambda.assign(inst_.n, 0.0);
  out.duals.mu.assign(inst_.m, 0.0);
  for (int j = 0; j < inst_.n; ++j) out.duals.lambda[j] = sol.dual[covering_row(j)];
  for (int i = 0; i < inst_.m; ++i) out.duals.mu[i] = sol.dual[convexity_row(i)];
  return out;
}

Projection Master::project(const std::vector<double>& z) const {
  Projection proj;
  proj.x.assign(inst_.m, std::vector<double>(inst_.n, 0.0));
  proj.y.assign(inst_.m, 0.0);
  for (std::size_t p = 1; p < pool_.size(); ++p) {
    if (z[p] == 0.0) continue;
    const Column& col = pool_[p];
    proj.y[col.facility] += z[p];
    for (int j : col.customers) proj.x[col.facility][j] += z[p];
  }
  return proj;
}

}  // namespace rsscflp
