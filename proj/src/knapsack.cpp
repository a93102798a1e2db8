#include "rsscflp/knapsack.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace rsscflp::knapsack {

namespace {

// Worst-case load of a chosen subset under the budgeted uncertainty model.
std::int64_t robust_load(const std::vector<RbkpItem>& items,
                         const std::vector<char>& chosen_mask, int budget) {
  std::int64_t nominal = 0;
  std::vector<std::int64_t> devs;
  for (std::size_t t = 0; t < items.size(); ++t) {
    if (!chosen_mask[t]) continue;
    nominal += items[t].weight;
    devs.push_back(items[t].deviation);
  }
  std::sort(devs.begin(), devs.end(), std::greater<>());
  const int take = std::min<int>(budget, static_cast<int>(devs.size()));
  for (int k = 0; k < take; ++k) nominal += devs[k];
  return nominal;
}

}  // namespace

BkpResult solve_bkp(const std::vector<BkpItem>& items, std::int64_t capacity) {
  BkpResult res;
  if (capacity < 0 || items.empty()) return res;

  // No state beyond the total weight is ever useful.
  std::int64_t total = 0;
  for (const auto& it : items) {
    if (it.weight < 0) throw std::invalid_argument("knapsack: negative weight");
    total += it.weight;
  }
  const std::int64_t cap = std::min(capacity, total);
  const int k = static_cast<int>(items.size());
  const std::size_t width = static_cast<std::size_t>(cap) + 1;

  std::vector<double> dp(width, 0.0);
  std::vector<char> take(static_cast<std::size_t>(k) * width, 0);
  for (int t = 0; t < k; ++t) {
    const std::int64_t w = items[t].weight;
    const double p = items[t].profit;
    if (w > cap) continue;
    for (std::int64_t c = cap; c >= w; --c) {
      const double cand = dp[c - w] + p;
      if (cand > dp[c]) {
        dp[c] = cand;
        take[static_cast<std::size_t>(t) * width + c] = 1;
      }
    }
  }
  res.value = dp[cap];
  std::int64_t c = cap;
  for (int t = k - 1; t >= 0; --t) {
    if (take[static_cast<std::size_t>(t) * width + c]) {
      res.chosen.push_back(items[t].id);
      c -= items[t].weight;
    }
  }
  std::reverse(res.chosen.begin(), res.chosen.end());
  return res;
}

RbkpResult solve_rbkp(const RbkpProblem& problem) {
  const auto& all = problem.items;
  if (problem.budget < 0) throw std::invalid_argument("rbkp: negative budget");
  if (problem.capacity < 0) {
    // Nothing fits; even the empty set needs capacity >= 0 only vacuously.
    RbkpResult res;
    if (problem.forced_in.has_value()) {
      res.feasible = false;
      res.value = kMinusInfinity;
    }
    return res;
  }

  int forced_pos = -1;
  if (problem.forced_in.has_value()) {
    for (std::size_t t = 0; t < all.size(); ++t)
      if (all[t].id == *problem.forced_in) forced_pos = static_cast<int>(t);
    if (forced_pos < 0) throw std::invalid_argument("rbkp: forced item not present");
  }

  // Only profitable items (and a forced one, whatever its profit) can appear
  // in a maximizer, and dropping the rest keeps every remaining set feasible.
  std::vector<RbkpItem> work;
  int forced_work = -1;
  for (std::size_t t = 0; t < all.size(); ++t) {
    const bool forced = static_cast<int>(t) == forced_pos;
    if (!forced && all[t].profit <= 0.0) continue;
    if (forced) forced_work = static_cast<int>(work.size());
    work.push_back(all[t]);
  }

  const int k = static_cast<int>(work.size());
  RbkpResult best;
  best.feasible = false;
  best.value = kMinusInfinity;

  if (k == 0) {
    best.feasible = true;
    best.value = 0.0;
    return best;
  }

  // Nonincreasing deviation order; ties by id for determinism.
  std::vector<int> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (work[a].deviation != work[b].deviation)
      return work[a].deviation > work[b].deviation;
    return work[a].id < work[b].id;
  });

  const int budget = problem.budget;

  // Candidate pivots l = budget..k-1 plus the all-deviations case l = k+1
  // (every chosen item charged its full deviation). With budget == 0 the
  // problem is the nominal knapsack on the plain weights.
  std::vector<int> pivots;
  if (budget == 0) {
    pivots.push_back(0);  // sentinel handled below: plain weights, full cap
  } else {
    for (int l = budget; l <= k - 1; ++l) {
      // If the next pivot has the same deviation its subproblem strictly
      // contains this one.
      const std::int64_t bl = work[order[l - 1]].deviation;
      if (l <= k - 2 && work[order[l]].deviation == bl) continue;
      pivots.push_back(l);
    }
    pivots.push_back(k + 1);
  }

  for (int l : pivots) {
    std::int64_t cap;
    std::vector<std::int64_t> adjusted(k);
    if (budget == 0) {
      cap = problem.capacity;
      for (int t = 0; t < k; ++t) adjusted[t] = work[t].weight;
    } else {
      const std::int64_t bl = (l == k + 1) ? 0 : work[order[l - 1]].deviation;
      cap = problem.capacity - static_cast<std::int64_t>(budget) * bl;
      if (cap < 0) continue;
      for (int pos = 0; pos < k; ++pos) {
        const int t = order[pos];
        adjusted[t] = work[t].weight +
                      (pos < l ? work[t].deviation - bl : 0);
      }
    }

    double base = 0.0;
    std::vector<BkpItem> sub;
    sub.reserve(k);
    bool forced_fits = true;
    for (int t = 0; t < k; ++t) {
      if (t == forced_work) {
        cap -= adjusted[t];
        base += work[t].profit;
        if (cap < 0) forced_fits = false;
        continue;
      }
      sub.push_back({work[t].profit, adjusted[t], t});
    }
    if (!forced_fits) continue;

    BkpResult nominal = solve_bkp(sub, cap);
    const double value = base + nominal.value;
    if (!best.feasible || value > best.value) {
      best.feasible = true;
      best.value = value;
      best.chosen.clear();
      if (forced_work >= 0) best.chosen.push_back(work[forced_work].id);
      for (int t : nominal.chosen) best.chosen.push_back(work[t].id);
      std::sort(best.chosen.begin(), best.chosen.end());
    }
  }

  if (!best.feasible) {
    best.value = kMinusInfinity;
    return best;
  }

  // The decomposition must never hand back a set that violates the robust
  // capacity; re-check against the original data.
  std::vector<char> mask(all.size(), 0);
  for (int id : best.chosen)
    for (std::size_t t = 0; t < all.size(); ++t)
      if (all[t].id == id) mask[t] = 1;
  if (robust_load(all, mask, budget) > problem.capacity)
    throw std::logic_error("rbkp: produced an infeasible set");

  return best;
}

}  // namespace rsscflp::knapsack
