#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <vector>

#include "rsscflp/instance.hpp"
#include "rsscflp/master.hpp"

namespace rsscflp {

enum class BnpStatus { kOptimal, kInfeasible, kTimeLimit };

// Observability hooks used by tests; both default to null.
struct ColgenIterInfo {
  std::int64_t node = 0;
  int iteration = 0;
  double rmp_objective = 0.0;   // current restricted master value
  double lagrangian_lb = 0.0;   // rmp_objective + sum of pricing adjustments
  double nu_sum = 0.0;
  bool converged = false;
};

struct FixEvent {
  std::int64_t node = 0;
  char kind = 'x';              // 'x': x_ij = 0, 'c': y_i = 0, 'o': y_i = 1
  int facility = 0;
  int customer = -1;            // only for kind 'x'
  const NodeFixes* before = nullptr;  // node fixes prior to this fix
};

struct SolverConfig {
  double time_limit_sec = 3600.0;  // non-positive disables the limit
  bool variable_fixing = true;
  int fixing_period = 1;        // min processed nodes between fixing passes
  bool open_child_first = true; // DFS explores the y=1 / keep child first
  bool singleton_init_pool = true;
  int threads = 0;              // 0: use RSSCFLP_THREADS env var, else 1
  bool trace = false;
  std::ostream* trace_out = nullptr;
  std::optional<std::pair<Assignment, std::int64_t>> incumbent_seed;
  std::function<void(const ColgenIterInfo&)> on_colgen_iteration;
  std::function<void(const FixEvent&)> on_fix;
};

struct SolveReport {
  BnpStatus status = BnpStatus::kInfeasible;
  std::optional<Assignment> incumbent;
  std::int64_t objective = 0;     // valid when incumbent is set
  double best_bound = 0.0;        // global lower bound on the optimum
  double gap_pct = 0.0;
  double root_bound = 0.0;        // column-generation value at the root
  bool root_bound_valid = false;
  std::int64_t nodes = 0;
  std::int64_t columns_generated = 0;
  double time_master_sec = 0.0;
  double time_pricing_sec = 0.0;
  double time_total_sec = 0.0;
};

SolveReport solve(const Instance& inst, const SolverConfig& config = {});

// Column-generation bound at the root (no branching). Returns nullopt when
// the master proves the instance infeasible.
std::optional<double> root_lp_bound(const Instance& inst);

// --- branching internals, exposed for unit testing ---------------------------

struct BranchDecision {
  enum class Kind { kFacility, kCustomerGub };
  Kind kind = Kind::kFacility;
  int facility = -1;               // kFacility: branch y_i = 0 / y_i = 1
  int customer = -1;               // kCustomerGub: the split customer
  std::vector<int> forbid_first;   // facilities with x_ij' = 0 in child A
  std::vector<int> forbid_second;  // ... in child B
};

// Selects the branching object from a fractional projection: the most
// fractional y first; with integral y, a GUB dichotomy that splits the
// facility set of the customer whose balanced fractional split is closest
// to 1/2. Returns nullopt when the projection is integral.
std::optional<BranchDecision> select_branch(const Projection& proj, double tol = 1e-6);

}  // namespace rsscflp
