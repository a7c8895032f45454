#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace ledloc {

// Splittable deterministic random stream (splitmix64 core). A stream's
// identity is its key; substream(k) derives a child keyed on (key, k) only,
// never on draw state, so any partitioning of work over substreams produces
// bit-identical results regardless of scheduling. Not cryptographic.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : key_(mix(seed)), state_(key_) {}

  RngStream substream(std::uint64_t k) const {
    return RngStream(mix(key_ ^ mix(k + 0x9e3779b97f4a7c15ull)), Derived{});
  }

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Standard normal via Box-Muller; the paired variate is cached.
  double gaussian() {
    if (has_cached_) {
      has_cached_ = false;
      return cached_;
    }
    // (0, 1] so the log is finite
    const double u1 =
        (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    cached_ = radius * std::sin(angle);
    has_cached_ = true;
    return radius * std::cos(angle);
  }

  double gaussian(double mean, double stddev) {
    return mean + stddev * gaussian();
  }

 private:
  struct Derived {};
  RngStream(std::uint64_t key, Derived) : key_(key), state_(key) {}

  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  std::uint64_t key_;    // stream identity, fixed at construction
  std::uint64_t state_;  // advanced by draws
  double cached_ = 0.0;
  bool has_cached_ = false;
};

}  // namespace ledloc
