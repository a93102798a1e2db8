#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace rsscflp {

// Data of a robust single-source capacitated facility location instance.
//
// Demand uncertainty follows the budgeted model: customer j's demand lies in
// [demand[j] - deviation[j], demand[j] + deviation[j]], and for facility i at
// most gamma[i] of its assigned customers take their maximum value
// simultaneously. All parameters are nonnegative integers.
struct Instance {
  int m = 0;  // facilities
  int n = 0;  // customers
  std::vector<std::int64_t> fixed_cost;                // size m
  std::vector<std::int64_t> capacity;                  // size m
  std::vector<int> gamma;                              // size m, clamped to n
  std::vector<std::int64_t> demand;                    // size n
  std::vector<std::int64_t> deviation;                 // size n
  std::vector<std::vector<std::int64_t>> assign_cost;  // [m][n]

  // Throws std::runtime_error on inconsistent dimensions or negative data.
  void validate() const;

  std::int64_t total_assign_cost() const;  // sum over all (i, j)
  std::int64_t total_fixed_cost() const;
};

// A candidate integer solution: facility_of[j] is the facility serving
// customer j, open[i] tells whether facility i is open.
struct Assignment {
  std::vector<int> facility_of;  // size n
  std::vector<char> open;        // size m
};

struct EvalResult {
  enum class Status { kOk, kCapacityViolation, kStructuralError };
  Status status = Status::kOk;
  std::int64_t objective = 0;  // meaningful when status == kOk
  std::vector<int> violated_facilities;
  std::string message;
};

// Worst-case load of customer set R at facility i: the nominal demands plus
// the min(gamma[i], |R|) largest deviations in R (the adversary's budget is
// always exhausted on the largest deviations; ties broken by customer index).
std::int64_t worst_case_load(const Instance& inst, int facility,
                             std::span<const int> customers);

// True when the worst-case load of the set fits the facility's capacity.
bool is_feasible_column(const Instance& inst, int facility,
                        std::span<const int> customers);

// Checks an assignment end to end: every customer served by an open
// facility, every open facility robust-feasible, objective = assignment
// costs plus fixed costs of open facilities.
EvalResult evaluate(const Instance& inst, const Assignment& assignment);

}  // namespace rsscflp
