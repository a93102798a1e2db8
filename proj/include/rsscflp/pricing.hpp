#pragma once

#include <vector>

#include "rsscflp/instance.hpp"
#include "rsscflp/master.hpp"

namespace rsscflp {

// Result of one facility's pricing subproblem: maximize the dual surplus
// sum (lambda_j - c_ij) over robust-feasible customer sets for facility i.
struct PricingResult {
  int facility = 0;
  double xi = 0.0;            // subproblem optimum, >= 0 (empty set allowed)
  double reduced_cost = 0.0;  // fixed_cost + mu - xi
  std::vector<int> customers; // maximizer, sorted
};

inline constexpr double kReducedCostTol = -1e-6;

// Solves facility i's robust knapsack under the node's fixes (forbidden
// customers are excluded from the item set). Never called for a facility
// fixed closed.
PricingResult price_facility(const Instance& inst, int facility,
                             const DualPrices& duals, const NodeFixes& fixes);

// Prices every facility not fixed closed. Facilities fixed closed keep a
// zero-initialized entry with reduced_cost = 0. threads > 1 fans the
// independent subproblems out and joins them in facility order, so the
// result does not depend on the thread count.
std::vector<PricingResult> price_all(const Instance& inst, const DualPrices& duals,
                                     const NodeFixes& fixes, int threads);

// Subproblem optimum with customer j forced into facility i's set. Used by
// reduced-cost fixing. Returns -infinity when no robust-feasible set
// contains j.
double xi_forced(const Instance& inst, int facility, int customer,
                 const DualPrices& duals, const NodeFixes& fixes);

}  // namespace rsscflp
