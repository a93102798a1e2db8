#include "rsscflp/pricing.hpp"

#include <algorithm>
#include <stdexcept>
#include <thread>

#include "rsscflp/knapsack.hpp"

namespace rsscflp {

namespace {

knapsack::RbkpProblem build_subproblem(const Instance& inst, int facility,
                                       const DualPrices& duals,
                                       const NodeFixes& fixes) {
  knapsack::RbkpProblem prob;
  prob.capacity = inst.capacity[facility];
  prob.budget = inst.gamma[facility];
  prob.items.reserve(inst.n);
  for (int j = 0; j < inst.n; ++j) {
    if (fixes.x_forbidden(facility, j, inst.n)) continue;
    knapsack::RbkpItem item;
    item.profit = duals.lambda[j] - static_cast<double>(inst.assign_cost[facility][j]);
    item.weight = inst.demand[j];
    item.deviation = inst.deviation[j];
    item.id = j;
    prob.items.push_back(item);
  }
  return prob;
}

}  // namespace

PricingResult price_facility(const Instance& inst, int facility,
                             const DualPrices& duals, const NodeFixes& fixes) {
  if (fixes.y[facility] == 0)
    throw std::logic_error("pricing: facility is fixed closed");
  knapsack::RbkpProblem prob = build_subproblem(inst, facility, duals, fixes);
  knapsack::RbkpResult sol = knapsack::solve_rbkp(prob);
  PricingResult res;
  res.facility = facility;
  res.xi = sol.value;  // empty set always admissible, so >= 0
  res.customers = std::move(sol.chosen);
  res.reduced_cost = static_cast<double>(inst.fixed_cost[facility]) +
                     duals.mu[facility] - res.xi;
  return res;
}

std::vector<PricingResult> price_all(const Instance& inst, const DualPrices& duals,
                                     const NodeFixes& fixes, int threads) {
  std::vector<PricingResult> out(inst.m);
  std::vector<int> todo;
  for (int i = 0; i < inst.m; ++i) {
    if (fixes.y[i] == 0) {
      out[i].facility = i;
      continue;
    }
    todo.push_back(i);
  }
  const int workers = std::min<int>(threads, static_cast<int>(todo.size()));
  if (workers <= 1) {
    for (int i : todo) out[i] = price_facility(inst, i, duals, fixes);
    return out;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w]() {
      for (std::size_t k = w; k < todo.size(); k += workers)
        out[todo[k]] = price_facility(inst, todo[k], duals, fixes);
    });
  }
  for (auto& t : pool) t.join();
  return out;
}

double xi_forced(const Instance& inst, int facility, int customer,
                 const DualPrices& duals, const NodeFixes& fixes) {
  if (fixes.y[facility] == 0 || fixes.x_forbidden(facility, customer, inst.n))
    throw std::logic_error("pricing: forced customer is not available");
  knapsack::RbkpProblem prob = build_subproblem(inst, facility, duals, fixes);
  prob.forced_in = customer;
  knapsack::RbkpResult sol = knapsack::solve_rbkp(prob);
  return sol.feasible ? sol.value : knapsack::kMinusInfinity;
}

}  // namespace rsscflp
