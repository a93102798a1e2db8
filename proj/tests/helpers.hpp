#pragma once

#include <cstdint>
#include <vector>

#include "rsscflp/instance.hpp"
#include "rsscflp/rng.hpp"

namespace testutil {

// Small random instance for cross-checks against the enumeration oracle.
// Capacities are drawn tight enough that a fraction of the instances is
// infeasible, which the solvers must agree on as well.
inline rsscflp::Instance random_toy(std::uint64_t seed, int m, int n,
                                    int gamma_hi) {
  rsscflp::Rng rng(seed);
  rsscflp::Instance inst;
  inst.m = m;
  inst.n = n;
  std::int64_t total_demand = 0;
  for (int j = 0; j < n; ++j) {
    const std::int64_t d = rng.uniform_int(1, 20);
    inst.demand.push_back(d);
    inst.deviation.push_back(rng.uniform_int(0, d / 2));
    total_demand += d;
  }
  for (int i = 0; i < m; ++i) {
    inst.capacity.push_back(rng.uniform_int(total_demand / (2 * m) + 1,
                                            total_demand));
    inst.fixed_cost.push_back(rng.uniform_int(0, 60));
    inst.gamma.push_back(static_cast<int>(rng.uniform_int(0, gamma_hi)));
  }
  inst.assign_cost.assign(m, std::vector<std::int64_t>(n, 0));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j)
      inst.assign_cost[i][j] = rng.uniform_int(0, 40);
  inst.validate();
  return inst;
}

// Fixed 2 x 3 instance, comfortably feasible; handy when a test needs one
// concrete well-understood case rather than a random family.
inline rsscflp::Instance small_fixture() {
  rsscflp::Instance inst;
  inst.m = 2;
  inst.n = 3;
  inst.fixed_cost = {10, 12};
  inst.capacity = {25, 25};
  inst.gamma = {1, 1};
  inst.demand = {6, 7, 8};
  inst.deviation = {2, 3, 1};
  inst.assign_cost = {{4, 9, 3}, {7, 2, 5}};
  inst.validate();
  return inst;
}

}  // namespace testutil
