#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>

namespace hypa {

// Deterministic random source. mt19937_64 has a fixed algorithm, and every
// variate below is derived from raw 64-bit draws with explicit arithmetic, so
// a given seed yields the same stream on any platform. Never use
// std::uniform_*_distribution here; their mapping is implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  // Unbiased integer in [0, bound) via rejection sampling.
  std::uint64_t uniform_below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("uniform_below: bound is 0");
    const std::uint64_t threshold = (0 - bound) % bound;  // 2^64 mod bound
    for (;;) {
      const std::uint64_t r = eng_();
      if (r >= threshold) return r % bound;
    }
  }

  // Inclusive range.
  std::uint64_t uniform_int(std::uint64_t lo, std::uint64_t hi) {
    if (lo > hi) throw std::invalid_argument("uniform_int: empty range");
    return lo + uniform_below(hi - lo + 1);
  }

  // Uniform in [0, 1) with 53 random bits.
  double uniform01() {
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  }

  // Index i such that cumulative[i-1] <= u < cumulative[i], with u uniform in
  // [0, total). `cumulative` must be a nonempty prefix-sum array ending at the
  // total mass.
  std::size_t weighted_index(std::span<const double> cumulative) {
    if (cumulative.empty() || cumulative.back() <= 0.0)
      throw std::invalid_argument("weighted_index: no mass");
    const double u = uniform01() * cumulative.back();
    std::size_t lo = 0, hi = cumulative.size() - 1;
    while (lo < hi) {
      const std::size_t mid = (lo + hi) / 2;
      if (cumulative[mid] <= u)
        lo = mid + 1;
      else
        hi = mid;
    }
    return lo;
  }

  // splitmix64 finalizer; full-period bijection on 64-bit values.
  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Decorrelated sub-seed for stream `stream` of a master seed. Used to give
  // every walk / sample replicate its own generator, so results do not depend
  // on evaluation order.
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t stream) {
    return mix(seed ^ mix(stream + 0x9E3779B97F4A7C15ull));
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace hypa
