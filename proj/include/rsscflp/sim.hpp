#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rsscflp/instance.hpp"
#include "rsscflp/rng.hpp"

namespace rsscflp {

// Monte-Carlo scenario sampling: demands are drawn from a truncated normal
// with mean d_j and standard deviation d_j * delta, resampling anything below
// d_j * (1 - 2 delta). delta = 0 returns the nominal demands exactly.
struct SimSpec {
  double delta = 0.0;
  int scenarios = 5000;
  std::uint64_t seed = 0;
  int threads = 0;  // 0: RSSCFLP_THREADS environment variable, else 1
};

// Reference solution for the percentage comparisons; typically the nominal
// (all deviations zero, budget zero) optimum of the same base data.
struct Baseline {
  std::int64_t objective = 0;
  std::int64_t opened_capacity = 0;
};

struct SimResult {
  double infeasibility_pct = 0.0;          // scenarios with any overload
  std::vector<std::int64_t> violations;    // per facility, over all scenarios
  std::int64_t objective = 0;              // of the evaluated assignment
  std::int64_t opened_capacity = 0;
  double penalty_cost_pct = 0.0;           // vs baseline, 0 when none given
  double additional_capacity_pct = 0.0;
};

// One demand scenario; consumes rng in customer order (rejection resampling
// makes the draw count per customer variable).
std::vector<double> sample_scenario(const Instance& inst, double delta, Rng& rng);

// Empirical infeasibility of an assignment: a scenario fails when some open
// facility's sampled load exceeds its capacity. Scenario k draws from the
// derived stream mix(seed, k), so the result is independent of the thread
// count. The assignment must be structurally valid; robust-infeasible
// assignments are allowed (that is what the simulation measures).
SimResult evaluate_robustness(const Instance& inst, const Assignment& assignment,
                              const SimSpec& spec,
                              const Baseline* baseline = nullptr);

// Zero-intercept least squares y = slope * x. r2 uses the centered total sum
// of squares. Requires at least one x != 0.
struct Regression {
  double slope = 0.0;
  double r2 = 0.0;
};
Regression zero_intercept_fit(const std::vector<double>& x,
                              const std::vector<double>& y);

// Full robustness trade-off study on one set of base data: for every
// (sigma, gamma) cell the base instance is re-equipped with deviations
// b_j = floor(d_j * sigma) and a uniform budget, solved exactly, and the
// resulting solution is simulated at every delta. Percentages compare
// against the (sigma = 0, gamma = 0) cell. The base instance's own
// deviations and budgets are ignored.
struct TradeoffSpec {
  std::vector<int> sigma_milli = {0, 100, 200, 300, 400, 500};
  std::vector<int> gammas = {0, 1, 2, 3, 4, 5};
  std::vector<double> deltas = {0.0, 0.05, 0.10, 0.15, 0.20,
                                0.25, 0.30, 0.35, 0.40};
  int scenarios = 5000;
  std::uint64_t seed = 0;
  double time_limit_sec = 3600.0;  // per cell
  bool common_random_numbers = true;  // share scenario streams across cells
  int threads = 0;
};

struct TradeoffCell {
  int sigma_milli = 0;
  int gamma = 0;
  std::string status;  // "optimal", "infeasible", "time-limit"
  std::int64_t objective = 0;
  double penalty_cost_pct = 0.0;
  double additional_capacity_pct = 0.0;
  std::vector<double> infeasibility_pct;  // aligned with spec.deltas
};

struct TradeoffResult {
  std::vector<TradeoffCell> cells;  // sigma-major, gamma-minor
  bool regression_valid = false;    // needs optimal cells with sigma, gamma > 0
  Regression fit;                   // additional capacity vs penalty cost
  std::string csv;                  // rendered table, footer carries the fit
};

TradeoffResult tradeoff_grid(const Instance& base, const TradeoffSpec& spec);

}  // namespace rsscflp
