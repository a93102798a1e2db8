#pragma once

#include <cmath>
#include <cstdint>

namespace rsscflp {

// Deterministic, platform-independent PRNG: xoshiro256** seeded through
// splitmix64. Every randomized component of the project (instance
// generation, scenario sampling, test fixtures) draws from this class so a
// seed reproduces the identical stream on any machine.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t x = seed;
    for (auto& w : state_) w = splitmix64(x);
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Unbiased integer in [lo, hi], rejection sampled.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<std::int64_t>(next_u64());  // full range
    const std::uint64_t limit = (0 - span) % span;  // 2^64 mod span
    std::uint64_t r = next_u64();
    while (r < limit) r = next_u64();
    return lo + static_cast<std::int64_t>(r % span);
  }

  // Uniform in [0, 1) with 53 bits of precision.
  double uniform_real01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Standard normal variate via the Box-Muller transform. Consumes exactly
  // two uniforms per call; no caching, so the stream position is predictable.
  double gaussian() {
    const double u1 = 1.0 - uniform_real01();  // (0, 1], keeps log finite
    const double u2 = uniform_real01();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * 3.14159265358979323846 * u2);
  }

  // Derives an independent stream id from (base, index); used to give each
  // simulation scenario its own generator so results do not depend on how
  // work is split across threads.
  static std::uint64_t mix(std::uint64_t base, std::uint64_t index) {
    std::uint64_t x = base ^ (0x9e3779b97f4a7c15ULL + index * 0xbf58476d1ce4e5b9ULL);
    std::uint64_t a = splitmix64(x);
    return a ^ splitmix64(x);
  }

 private:
  static std::uint64_t splitmix64(std::uint64_t& x) {
    std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t state_[4];
};

}  // namespace rsscflp
