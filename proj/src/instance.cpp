#include "rsscflp/instance.hpp"

#include <algorithm>
#include <stdexcept>

namespace rsscflp {

void Instance::validate() const {
  if (m <= 0 || n <= 0) throw std::runtime_error("instance: m and n must be positive");
  auto need = [](bool ok, const char* what) {
    if (!ok) throw std::runtime_error(std::string("instance: ") + what);
  };
  need(static_cast<int>(fixed_cost.size()) == m, "fixed_cost size mismatch");
  need(static_cast<int>(capacity.size()) == m, "capacity size mismatch");
  need(static_cast<int>(gamma.size()) == m, "gamma size mismatch");
  need(static_cast<int>(demand.size()) == n, "demand size mismatch");
  need(static_cast<int>(deviation.size()) == n, "deviation size mismatch");
  need(static_cast<int>(assign_cost.size()) == m, "assign_cost row count mismatch");
  for (const auto& row : assign_cost)
    need(static_cast<int>(row.size()) == n, "assign_cost column count mismatch");
  for (int i = 0; i < m; ++i) {
    need(fixed_cost[i] >= 0, "negative fixed cost");
    need(capacity[i] >= 0, "negative capacity");
    need(gamma[i] >= 0 && gamma[i] <= n, "gamma out of range");
  }
  for (int j = 0; j < n; ++j) {
    need(demand[j] >= 0, "negative demand");
    need(deviation[j] >= 0, "negative deviation");
  }
  for (const auto& row : assign_cost)
    for (std::int64_t c : row) need(c >= 0, "negative assignment cost");
}

std::int64_t Instance::total_assign_cost() const {
  std::int64_t s = 0;
  for (const auto& row : assign_cost)
    for (std::int64_t c : row) s += c;
  return s;
}

std::int64_t Instance::total_fixed_cost() const {
  std::int64_t s = 0;
  for (std::int64_t f : fixed_cost) s += f;
  return s;
}

std::int64_t worst_case_load(const Instance& inst, int facility,
                             std::span<const int> customers) {
  std::int64_t nominal = 0;
  std::vector<std::pair<std::int64_t, int>> dev;
  dev.reserve(customers.size());
  for (int j : customers) {
    nominal += inst.demand[j];
    dev.emplace_back(inst.deviation[j], j);
  }
  const int budget = std::min<int>(inst.gamma[facility],
                                   static_cast<int>(dev.size()));
  if (budget == 0) return nominal;
  // Largest deviations first, ties by customer index.
  std::sort(dev.begin(), dev.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  std::int64_t worst = nominal;
  for (int k = 0; k < budget; ++k) worst += dev[k].first;
  return worst;
}

bool is_feasible_column(const Instance& inst, int facility,
                        std::span<const int> customers) {
  return worst_case_load(inst, facility, customers) <= inst.capacity[facility];
}

EvalResult evaluate(const Instance& inst, const Assignment& assignment) {
  EvalResult res;
  if (static_cast<int>(assignment.facility_of.size()) != inst.n ||
      static_cast<int>(assignment.open.size()) != inst.m) {
    res.status = EvalResult::Status::kStructuralError;
    res.message = "assignment dimensions do not match the instance";
    return res;
  }
  std::vector<std::vector<int>> served(inst.m);
  for (int j = 0; j < inst.n; ++j) {
    const int i = assignment.facility_of[j];
    if (i < 0 || i >= inst.m) {
      res.status = EvalResult::Status::kStructuralError;
      res.message = "customer " + std::to_string(j) + " assigned to invalid facility";
      return res;
    }
    if (!assignment.open[i]) {
      res.status = EvalResult::Status::kStructuralError;
      res.message = "customer " + std::to_string(j) + " assigned to closed facility " +
                    std::to_string(i);
      return res;
    }
    served[i].push_back(j);
  }
  std::int64_t objective = 0;
  for (int i = 0; i < inst.m; ++i) {
    if (!assignment.open[i]) continue;
    objective += inst.fixed_cost[i];
    for (int j : served[i]) objective += inst.assign_cost[i][j];
    if (worst_case_load(inst, i, served[i]) > inst.capacity[i])
      res.violated_facilities.push_back(i);
  }
  if (!res.violated_facilities.empty()) {
    res.status = EvalResult::Status::kCapacityViolation;
    res.message = "worst-case load exceeds capacity at " +
                  std::to_string(res.violated_facilities.size()) + " facility(ies)";
    return res;
  }
  res.objective = objective;
  return res;
}

}  // namespace rsscflp
