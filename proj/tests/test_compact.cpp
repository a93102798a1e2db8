#include <doctest.h>

#include <stdexcept>
#include <utility>
#include <vector>

#include "rsscflp/compact.hpp"
#include "rsscflp/lp.hpp"
#include "rsscflp/oracle.hpp"

#include "helpers.hpp"

using namespace rsscflp;

namespace {

// Plain SSCFLP LP relaxation (no uncertainty), built independently:
// assignment equalities, capacity rows, variable upper bounds x <= y.
double deterministic_lp(const Instance& inst) {
  lp::LpProblem p;
  std::vector<std::pair<int, double>> e;
  for (int j = 0; j < inst.n; ++j) p.add_row(lp::RowSense::kEqual, 1.0);
  for (int i = 0; i < inst.m; ++i) p.add_row(lp::RowSense::kGreaterEqual, 0.0);
  const auto vub = [&](int i, int j) { return inst.n + inst.m + i * inst.n + j; };
  for (int i = 0; i < inst.m; ++i)
    for (int j = 0; j < inst.n; ++j) p.add_row(lp::RowSense::kGreaterEqual, 0.0);

  for (int i = 0; i < inst.m; ++i) {
    for (int j = 0; j < inst.n; ++j) {
      e = {{j, 1.0},
           {inst.n + i, -static_cast<double>(inst.demand[j])},
           {vub(i, j), -1.0}};
      p.add_column(static_cast<double>(inst.assign_cost[i][j]), e, 0.0, 1.0);
    }
  }
  for (int i = 0; i < inst.m; ++i) {
    e = {{inst.n + i, static_cast<double>(inst.capacity[i])}};
    for (int j = 0; j < inst.n; ++j) e.emplace_back(vub(i, j), 1.0);
    p.add_column(static_cast<double>(inst.fixed_cost[i]), e, 0.0, 1.0);
  }
  const auto sol = p.solve();
  REQUIRE(sol.status == lp::SolveStatus::kOptimal);
  return sol.objective;
}

}  // namespace

TEST_CASE("with no uncertainty the bound equals the plain relaxation") {
  Instance inst = testutil::small_fixture();
  inst.gamma = {0, 0};
  const auto robust = compact_lp_bound(inst);
  REQUIRE(robust.has_value());
  CHECK(*robust == doctest::Approx(deterministic_lp(inst)).epsilon(1e-9));

  // Zero budget silences the deviations entirely.
  Instance no_dev = inst;
  no_dev.deviation = {0, 0, 0};
  const auto plain = compact_lp_bound(no_dev);
  REQUIRE(plain.has_value());
  CHECK(*robust == doctest::Approx(*plain).epsilon(1e-9));
}

TEST_CASE("bound grows with the uncertainty budget") {
  Instance inst = testutil::small_fixture();
  double prev = -1.0;
  for (int g = 0; g <= 3; ++g) {
    inst.gamma = {g, g};
    const auto v = compact_lp_bound(inst);
    REQUIRE(v.has_value());
    CHECK(*v >= prev - 1e-9);
    prev = *v;
  }
}

TEST_CASE("bound never exceeds the integer optimum") {
  int checked = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Instance inst = testutil::random_toy(seed, 3, 5, 2);
    const auto lp_value = compact_lp_bound(inst);
    const auto integer = oracle::brute_force_optimal(inst);
    if (!integer.feasible) continue;
    REQUIRE(lp_value.has_value());
    CHECK(*lp_value <= static_cast<double>(integer.objective) + 1e-6);
    ++checked;
  }
  CHECK(checked > 5);  // the family must actually produce feasible cases
}

TEST_CASE("demand beyond total capacity is infeasible") {
  Instance inst = testutil::small_fixture();
  inst.capacity = {8, 9};  // total 17 < total demand 21
  CHECK_FALSE(compact_lp_bound(inst).has_value());
}

TEST_CASE("oversized instances are rejected rather than ground through") {
  Instance inst;
  inst.m = 120;
  inst.n = 100;
  inst.fixed_cost.assign(inst.m, 1);
  inst.capacity.assign(inst.m, 100);
  inst.gamma.assign(inst.m, 1);
  inst.demand.assign(inst.n, 1);
  inst.deviation.assign(inst.n, 0);
  inst.assign_cost.assign(inst.m, std::vector<std::int64_t>(inst.n, 1));
  CHECK_THROWS_AS(compact_lp_bound(inst), std::invalid_argument);
}
