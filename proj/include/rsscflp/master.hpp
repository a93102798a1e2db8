#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "rsscflp/instance.hpp"
#include "rsscflp/lp.hpp"

namespace rsscflp {

// Branching and fixing decisions in effect at a search node. y[i] is -1
// (free), 0 (closed) or 1 (open); x_zero marks forbidden (facility,
// customer) assignments.
struct NodeFixes {
  std::vector<signed char> y;   // size m
  std::vector<char> x_zero;     // m * n, row-major

  static NodeFixes none(int m, int n) {
    NodeFixes f;
    f.y.assign(m, -1);
    f.x_zero.assign(static_cast<std::size_t>(m) * n, 0);
    return f;
  }
  bool fix_y(int i, int v) {  // false on contradiction
    if (y[i] != -1 && y[i] != v) return false;
    y[i] = static_cast<signed char>(v);
    return true;
  }
  void fix_x_zero(int i, int j, int n) {
    x_zero[static_cast<std::size_t>(i) * n + j] = 1;
  }
  bool x_forbidden(int i, int j, int n) const {
    return x_zero[static_cast<std::size_t>(i) * n + j] != 0;
  }
  bool allows_column(int facility, const std::vector<int>& customers, int n) const {
    if (y[facility] == 0) return false;
    for (int j : customers)
      if (x_forbidden(facility, j, n)) return false;
    return true;
  }
};

// One allocation column: facility i serving exactly the listed customers.
// cost = fixed_cost[i] + sum of assignment costs. facility == kDummyFacility
// marks the always-feasible fallback column that serves every customer.
struct Column {
  static constexpr int kDummyFacility = -1;
  int facility = 0;
  std::vector<int> customers;  // sorted ascending
  std::int64_t cost = 0;
  int lp_col = -1;
};

struct DualPrices {
  std::vector<double> lambda;  // covering duals, size n, >= 0
  std::vector<double> mu;      // convexity duals, size m (free when row is ==)
};

struct RmpSolution {
  bool solved = false;  // false only on numerical failure
  double objective = 0.0;
  DualPrices duals;
  std::vector<double> z;  // per pool column
  double duality_gap = 0.0;
};

struct Projection {
  std::vector<std::vector<double>> x;  // [m][n]
  std::vector<double> y;               // size m
};

// Restricted master of the allocation formulation, kept once per solve and
// re-bounded per node. Rows: one covering row per customer (sum of columns
// containing j >= 1) and one convexity row per facility written as
// -(sum of the facility's columns) >= -1, so all duals price out as
// cost - sum lambda_j + mu_i.
class Master {
 public:
  // with_singletons seeds the pool with every feasible single-customer
  // column; otherwise only the dummy column is present.
  Master(const Instance& inst, bool with_singletons, const NodeFixes& fixes);

  // Appends a column if new. Returns its pool index, sets *added.
  int add_column(int facility, std::vector<int> customers, bool* added);

  // Applies the node's fixes to the pool bounds and row senses.
  void configure(const NodeFixes& fixes);

  RmpSolution solve();

  Projection project(const std::vector<double>& z) const;

  // Nonzero dummy usage at a converged master proves the node infeasible.
  bool dummy_active(const std::vector<double>& z) const {
    return z[0] > 1e-6;
  }
  double dummy_value(const std::vector<double>& z) const { return z[0]; }

  const std::vector<Column>& pool() const { return pool_; }
  std::int64_t dummy_cost() const { return pool_[0].cost; }
  const Instance& instance() const { return inst_; }

 private:
  int covering_row(int j) const { return j; }
  int convexity_row(int i) const { return inst_.n + i; }
  void push_lp_column(Column& col);

  const Instance& inst_;
  lp::LpProblem lp_;
  std::vector<Column> pool_;
  std::map<std::pair<int, std::vector<int>>, int> index_;
  NodeFixes current_fixes_;
};

}  // namespace rsscflp
