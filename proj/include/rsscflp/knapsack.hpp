#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

namespace rsscflp::knapsack {

// --- Nominal binary knapsack -----------------------------------------------

struct BkpItem {
  double profit = 0.0;
  std::int64_t weight = 0;  // nonnegative integer
  int id = 0;               // caller-side identifier, echoed in the result
};

struct BkpResult {
  double value = 0.0;
  std::vector<int> chosen;  // ids, ascending by input position
};

// Exact 0/1 knapsack over integer weights (dynamic program over capacities).
// The empty set is always admissible, so value >= 0 whenever profits can be
// declined. A negative capacity yields the empty problem (value 0).
BkpResult solve_bkp(const std::vector<BkpItem>& items, std::int64_t capacity);

// --- Robust binary knapsack -------------------------------------------------

// max sum profit[j] x_j  s.t.  sum d_j x_j + (sum of the `budget` largest
// deviations among chosen items) <= capacity, x binary.
struct RbkpItem {
  double profit = 0.0;
  std::int64_t weight = 0;     // nominal demand
  std::int64_t deviation = 0;  // maximum upward shift
  int id = 0;
};

struct RbkpProblem {
  std::vector<RbkpItem> items;
  std::int64_t capacity = 0;
  int budget = 0;                 // adversary's cardinality budget
  std::optional<int> forced_in;   // id of an item that must be chosen
};

struct RbkpResult {
  // feasible == false means no admissible set exists (only possible with
  // forced_in); value is then -infinity.
  bool feasible = true;
  double value = 0.0;
  std::vector<int> chosen;  // ids
};

inline constexpr double kMinusInfinity = -std::numeric_limits<double>::infinity();

// Exact solver. Sorting items by nonincreasing deviation reduces the robust
// problem to a series of nominal knapsacks: for each pivot position l the
// items above the pivot carry their deviation surplus as extra weight and
// the capacity is charged budget * deviation[l]; the union of those nominal
// feasible sets is exactly the robust feasible set. Items with profit <= 0
// and no forced_in marker are dropped up front. Ties across pivots keep the
// first (lowest-l) maximizer.
RbkpResult solve_rbkp(const RbkpProblem& problem);

}  // namespace rsscflp::knapsack
