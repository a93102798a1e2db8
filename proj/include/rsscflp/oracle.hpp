#pragma once

#include <optional>
#include <vector>

#include "rsscflp/instance.hpp"

namespace rsscflp::oracle {

struct BruteForceResult {
  bool feasible = false;
  std::int64_t objective = 0;
  Assignment assignment;
};

// Exhaustive search over all m^n single-source assignments (with cost and
// capacity pruning that never cuts an optimal branch). Guarded: throws
// std::invalid_argument when m^n exceeds 2e7. Deterministic: returns the
// lexicographically first optimal assignment.
BruteForceResult brute_force_optimal(const Instance& inst);

// Collects every optimal assignment (same guard). Useful for checking that
// variable fixing never cuts off all optima.
std::vector<Assignment> brute_force_all_optima(const Instance& inst);

// Value of the full allocation-formulation LP built by enumerating every
// robust-feasible customer set of every facility (guard: n <= 12). Returns
// nullopt when the LP itself is infeasible.
std::optional<double> full_master_lp(const Instance& inst);

}  // namespace rsscflp::oracle
