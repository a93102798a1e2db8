#include "rsscflp/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "rsscflp/lp.hpp"

namespace rsscflp::oracle {

namespace {

void check_enumeration_size(const Instance& inst) {
  const double combos = std::pow(static_cast<double>(inst.m), inst.n);
  if (combos > 2e7)
    throw std::invalid_argument("oracle: m^n too large for brute force");
}

struct SearchState {
  explicit SearchState(const Instance& instance) : inst(instance) {}

  const Instance& inst;
  std::vector<std::vector<int>> members;
  std::vector<char> used;
  std::vector<int> facility_of;
  std::vector<std::int64_t> min_cost_suffix;  // cheapest completion from customer j on
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  std::vector<int> best_assign;
  bool collect_all = false;
  std::vector<std::vector<int>> all_best;
};

void dfs(SearchState& st, int j, std::int64_t cost) {
  const Instance& inst = st.inst;
  const std::int64_t bound = cost + st.min_cost_suffix[j];
  if (st.collect_all ? bound > st.best : bound >= st.best) return;
  if (j == inst.n) {
    if (cost < st.best) {
      st.best = cost;
      st.best_assign = st.facility_of;
      if (st.collect_all) {
        st.all_best.clear();
        st.all_best.push_back(st.facility_of);
      }
    } else if (st.collect_all && cost == st.best) {
      st.all_best.push_back(st.facility_of);
    }
    return;
  }
  for (int i = 0; i < inst.m; ++i) {
    std::int64_t next = cost + inst.assign_cost[i][j];
    if (!st.used[i]) next += inst.fixed_cost[i];
    const std::int64_t child_bound = next + st.min_cost_suffix[j + 1];
    if (st.collect_all ? child_bound > st.best : child_bound >= st.best) continue;
    st.members[i].push_back(j);
    if (worst_case_load(inst, i, st.members[i]) <= inst.capacity[i]) {
      const char was_used = st.used[i];
      st.used[i] = 1;
      st.facility_of[j] = i;
      dfs(st, j + 1, next);
      st.used[i] = was_used;
    }
    st.members[i].pop_back();
  }
}

SearchState run_search(const Instance& inst, bool collect_all) {
  check_enumeration_size(inst);
  SearchState st(inst);
  st.members.assign(inst.m, {});
  st.used.assign(inst.m, 0);
  st.facility_of.assign(inst.n, -1);
  st.collect_all = collect_all;
  st.min_cost_suffix.assign(inst.n + 1, 0);
  for (int j = inst.n - 1; j >= 0; --j) {
    std::int64_t cheapest = std::numeric_limits<std::int64_t>::max();
    for (int i = 0; i < inst.m; ++i)
      cheapest = std::min(cheapest, inst.assign_cost[i][j]);
    st.min_cost_suffix[j] = st.min_cost_suffix[j + 1] + cheapest;
  }
  dfs(st, 0, 0);
  return st;
}

Assignment to_assignment(const Instance& inst, const std::vector<int>& facility_of) {
  Assignment a;
  a.facility_of = facility_of;
  a.open.assign(inst.m, 0);
  for (int i : facility_of) a.open[i] = 1;
  return a;
}

}  // namespace

BruteForceResult brute_force_optimal(const Instance& inst) {
  SearchState st = run_search(inst, false);
  BruteForceResult res;
  if (st.best == std::numeric_limits<std::int64_t>::max()) return res;
  res.feasible = true;
  res.objective = st.best;
  res.assignment = to_assignment(inst, st.best_assign);
  return res;
}

std::vector<Assignment> brute_force_all_optima(const Instance& inst) {
  SearchState st = run_search(inst, true);
  std::vector<Assignment> out;
  out.reserve(st.all_best.size());
  for (const auto& fo : st.all_best) out.push_back(to_assignment(inst, fo));
  return out;
}

std::optional<double> full_master_lp(const Instance& inst) {
  if (inst.n > 12)
    throw std::invalid_argument("oracle: n too large for full master enumeration");
  lp::LpProblem lp;
  for (int j = 0; j < inst.n; ++j) lp.add_row(lp::RowSense::kGreaterEqual, 1.0);
  for (int i = 0; i < inst.m; ++i) lp.add_row(lp::RowSense::kGreaterEqual, -1.0);

  // Prohibitively priced fallback column, as in the working master: it keeps
  // the LP feasible and flags true infeasibility when used at the optimum.
  const double dummy_cost =
      2.0 * static_cast<double>(inst.total_assign_cost() + inst.total_fixed_cost());
  std::vector<std::pair<int, double>> entries;
  for (int j = 0; j < inst.n; ++j) entries.emplace_back(j, 1.0);
  const int dummy_col = lp.add_column(dummy_cost, entries, 0.0, lp::LpProblem::kInfinity);

  std::vector<int> customers;
  for (int i = 0; i < inst.m; ++i) {
    for (unsigned mask = 0; mask < (1u << inst.n); ++mask) {
      customers.clear();
      std::int64_t cost = inst.fixed_cost[i];
      for (int j = 0; j < inst.n; ++j) {
        if (mask & (1u << j)) {
          customers.push_back(j);
          cost += inst.assign_cost[i][j];
        }
      }
      if (worst_case_load(inst, i, customers) > inst.capacity[i]) continue;
      entries.clear();
      for (int j : customers) entries.emplace_back(j, 1.0);
      entries.emplace_back(inst.n + i, -1.0);
      lp.add_column(static_cast<double>(cost), entries, 0.0, lp::LpProblem::kInfinity);
    }
  }
  lp::LpSolution sol = lp.solve();
  if (sol.status != lp::SolveStatus::kOptimal)
    throw std::logic_error("oracle: full master LP did not solve");
  if (sol.primal[dummy_col] > 1e-6) return std::nullopt;
  return sol.objective;
}

}  // namespace rsscflp::oracle
