#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <json.hpp>

#include "rsscflp/instance.hpp"

namespace rsscflp {

enum class GenScheme { kT3, kT4 };

// Parameters of the two synthetic instance families. T3 draws small demands
// and capacities on a unit square with demand-weighted assignment costs; T4
// draws larger values on a 190 x 190 square with plain distance costs. The
// seed fully determines the output.
struct GenSpec {
  GenScheme scheme = GenScheme::kT3;
  int m = 0;
  int n = 0;
  double target_ratio = 4.0;  // total capacity over total demand, must be > 1
  int gamma = 0;              // adversary budget, applied to every facility
  std::pair<int, int> sigma_milli = {100, 500};  // sigma support in thousandths
  std::uint64_t seed = 0;
};

Instance generate(const GenSpec& spec);

// Rescales capacities so that total capacity / total demand hits
// target_ratio: s'_i = round(s_i * factor), floored at 1. Throws when the
// rounded result misses the target by more than 2%.
std::vector<std::int64_t> scale_capacities(const std::vector<std::int64_t>& capacity,
                                           const std::vector<std::int64_t>& demand,
                                           double target_ratio);

// Instance JSON with the generating parameters attached under "generator".
nlohmann::ordered_json generate_json(const GenSpec& spec);

}  // namespace rsscflp
