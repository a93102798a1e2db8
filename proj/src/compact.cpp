#include "rsscflp/compact.hpp"

#include <stdexcept>
#include <utility>
#include <vector>

#include "rsscflp/lp.hpp"

namespace rsscflp {

std::optional<double> compact_lp_bound(const Instance& inst) {
  const int m = inst.m;
  const int n = inst.n;
  const long rows = static_cast<long>(n) + m + 2L * m * n;
  if (rows > 20000)
    throw std::invalid_argument("compact bound: instance too large for dense simplex");

  lp::LpProblem lp;
  // Row layout: assignment (n, ==1), variable upper bounds y_i - x_ij >= 0
  // (m*n), robust capacity s_i y_i - sum_j d_j x_ij - sum_j p_ij -
  // gamma_i q_i >= 0 (m), dualized deviations q_i + p_ij - b_j x_ij >= 0 (m*n).
  std::vector<int> assign_row(n), cap_row(m);
  std::vector<std::vector<int>> vub_row(m, std::vector<int>(n));
  std::vector<std::vector<int>> dev_row(m, std::vector<int>(n));
  for (int j = 0; j < n; ++j) assign_row[j] = lp.add_row(lp::RowSense::kEqual, 1.0);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j)
      vub_row[i][j] = lp.add_row(lp::RowSense::kGreaterEqual, 0.0);
  for (int i = 0; i < m; ++i) cap_row[i] = lp.add_row(lp::RowSense::kGreaterEqual, 0.0);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j)
      dev_row[i][j] = lp.add_row(lp::RowSense::kGreaterEqual, 0.0);

  std::vector<std::pair<int, double>> e;
  // x_ij in [0, 1]
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      e.clear();
      e.emplace_back(assign_row[j], 1.0);
      e.emplace_back(vub_row[i][j], -1.0);
      e.emplace_back(cap_row[i], -static_cast<double>(inst.demand[j]));
      if (inst.deviation[j] > 0)
        e.emplace_back(dev_row[i][j], -static_cast<double>(inst.deviation[j]));
      lp.add_column(static_cast<double>(inst.assign_cost[i][j]), e, 0.0, 1.0);
    }
  }
  // y_i in [0, 1]
  for (int i = 0; i < m; ++i) {
    e.clear();
    for (int j = 0; j < n; ++j) e.emplace_back(vub_row[i][j], 1.0);
    e.emplace_back(cap_row[i], static_cast<double>(inst.capacity[i]));
    lp.add_column(static_cast<double>(inst.fixed_cost[i]), e, 0.0, 1.0);
  }
  // p_ij >= 0
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      e.clear();
      e.emplace_back(cap_row[i], -1.0);
      e.emplace_back(dev_row[i][j], 1.0);
      lp.add_column(0.0, e, 0.0, lp::LpProblem::kInfinity);
    }
  }
  // q_i >= 0
  for (int i = 0; i < m; ++i) {
    e.clear();
    if (inst.gamma[i] > 0) e.emplace_back(cap_row[i], -static_cast<double>(inst.gamma[i]));
    for (int j = 0; j < n; ++j) e.emplace_back(dev_row[i][j], 1.0);
    lp.add_column(0.0, e, 0.0, lp::LpProblem::kInfinity);
  }

  lp::LpSolution sol = lp.solve();
  if (sol.status == lp::SolveStatus::kInfeasible) return std::nullopt;
  if (sol.status != lp::SolveStatus::kOptimal)
    throw std::logic_error("compact bound: LP did not solve to optimality");
  return sol.objective;
}

}  // namespace rsscflp
