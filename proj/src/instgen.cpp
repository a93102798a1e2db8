#include "rsscflp/instgen.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "rsscflp/io.hpp"
#include "rsscflp/rng.hpp"

namespace rsscflp {

namespace {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

double distance(const Point& a, const Point& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

void check_spec(const GenSpec& spec) {
  if (spec.m <= 0 || spec.n <= 0)
    throw std::invalid_argument("generate: m and n must be positive");
  if (!(spec.target_ratio > 1.0))
    throw std::invalid_argument("generate: target capacity ratio must exceed 1");
  if (spec.gamma < 0)
    throw std::invalid_argument("generate: gamma must be nonnegative");
  if (spec.sigma_milli.first < 0 || spec.sigma_milli.second > 1000 ||
      spec.sigma_milli.first > spec.sigma_milli.second)
    throw std::invalid_argument("generate: sigma range must satisfy 0 <= lo <= hi <= 1000");
}

}  // namespace

std::vector<std::int64_t> scale_capacities(const std::vector<std::int64_t>& capacity,
                                           const std::vector<std::int64_t>& demand,
                                           double target_ratio) {
  std::int64_t total_demand = 0;
  for (std::int64_t d : demand) total_demand += d;
  std::int64_t total_capacity = 0;
  for (std::int64_t s : capacity) total_capacity += s;
  if (total_demand <= 0)
    throw std::invalid_argument("scale_capacities: total demand must be positive");
  if (total_capacity <= 0)
    throw std::invalid_argument("scale_capacities: total capacity must be positive");

  const double factor = target_ratio * static_cast<double>(total_demand) /
                        static_cast<double>(total_capacity);
  std::vector<std::int64_t> scaled(capacity.size());
  std::int64_t total_scaled = 0;
  for (std::size_t i = 0; i < capacity.size(); ++i) {
    scaled[i] = std::max<std::int64_t>(
        1, std::llround(static_cast<double>(capacity[i]) * factor));
    total_scaled += scaled[i];
  }
  const double achieved = static_cast<double>(total_scaled) /
                          static_cast<double>(total_demand);
  if (std::abs(achieved - target_ratio) > 0.02 * target_ratio)
    throw std::logic_error("scale_capacities: rounding slack exceeded 2% of target " +
                           std::to_string(target_ratio));
  return scaled;
}

Instance generate(const GenSpec& spec) {
  check_spec(spec);
  Rng rng(spec.seed);

  Instance inst;
  inst.m = spec.m;
  inst.n = spec.n;

  // Draw order is part of the format: demands, capacities, locations
  // (facilities first), set-up costs, sigmas. Changing it changes every
  // seeded instance.
  inst.demand.resize(spec.n);
  for (int j = 0; j < spec.n; ++j)
    inst.demand[j] = spec.scheme == GenScheme::kT3 ? rng.uniform_int(5, 35)
                                                   : rng.uniform_int(10, 50);

  inst.capacity.resize(spec.m);
  for (int i = 0; i < spec.m; ++i)
    inst.capacity[i] = spec.scheme == GenScheme::kT3 ? rng.uniform_int(10, 160)
                                                     : rng.uniform_int(100, 500);
  inst.capacity = scale_capacities(inst.capacity, inst.demand, spec.target_ratio);

  const double side = spec.scheme == GenScheme::kT3 ? 1.0 : 190.0;
  std::vector<Point> facility_at(spec.m), customer_at(spec.n);
  for (Point& p : facility_at) {
    p.x = side * rng.uniform_real01();
    p.y = side * rng.uniform_real01();
  }
  for (Point& p : customer_at) {
    p.x = side * rng.uniform_real01();
    p.y = side * rng.uniform_real01();
  }
  inst.assign_cost.assign(spec.m, std::vector<std::int64_t>(spec.n, 0));
  for (int i = 0; i < spec.m; ++i) {
    for (int j = 0; j < spec.n; ++j) {
      const double e = distance(facility_at[i], customer_at[j]);
      const double c = spec.scheme == GenScheme::kT3
                           ? 10.0 * static_cast<double>(inst.demand[j]) * e
                           : e;
      inst.assign_cost[i][j] = static_cast<std::int64_t>(std::floor(c));
    }
  }

  inst.fixed_cost.resize(spec.m);
  for (int i = 0; i < spec.m; ++i) {
    if (spec.scheme == GenScheme::kT3) {
      const std::int64_t a = rng.uniform_int(0, 90);
      const std::int64_t b = rng.uniform_int(100, 110);
      inst.fixed_cost[i] = static_cast<std::int64_t>(std::floor(
          static_cast<double>(a) +
          static_cast<double>(b) *
              std::sqrt(static_cast<double>(inst.capacity[i]))));
    } else {
      inst.fixed_cost[i] = rng.uniform_int(300, 700);
    }
  }

  // b_j = floor(d_j * sigma_j) with sigma_j drawn in thousandths, kept in
  // integer arithmetic so the floor never suffers a floating-point wobble.
  inst.deviation.resize(spec.n);
  for (int j = 0; j < spec.n; ++j) {
    const std::int64_t milli =
        rng.uniform_int(spec.sigma_milli.first, spec.sigma_milli.second);
    inst.deviation[j] = inst.demand[j] * milli / 1000;
  }

  inst.gamma.assign(spec.m, std::min(spec.gamma, spec.n));

  inst.validate();
  return inst;
}

nlohmann::ordered_json generate_json(const GenSpec& spec) {
  nlohmann::ordered_json j = instance_to_json(generate(spec));
  j["generator"] = {
      {"scheme", spec.scheme == GenScheme::kT3 ? "t3" : "t4"},
      {"m", spec.m},
      {"n", spec.n},
      {"target_ratio", spec.target_ratio},
      {"gamma", spec.gamma},
      {"sigma_milli", {spec.sigma_milli.first, spec.sigma_milli.second}},
      {"seed", spec.seed},
  };
  return j;
}

}  // namespace rsscflp
