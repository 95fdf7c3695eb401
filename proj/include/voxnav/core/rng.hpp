#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <string_view>

#include "voxnav/core/angles.hpp"
#include "voxnav/core/types.hpp"

namespace voxnav {

namespace detail {

// SplitMix64 finalizer. Bijective on u64.
inline constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline constexpr std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace detail

/// Counter-based pseudo-random stream keyed by (seed, label, draw index).
/// The n-th draw is a pure function of the key and n, so reproducibility
/// survives any episode-level parallelism or call reordering between streams.
class Rng {
 public:
  Rng(Seed seed, std::string_view label)
      : key_(detail::mix64(seed.value ^ detail::mix64(detail::fnv1a(label)))) {}

  std::uint64_t next_u64() { return detail::mix64(key_ + 0x9e3779b97f4a7c15ULL * ++counter_); }

  /// Uniform double in [0, 1), 53-bit resolution.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, n), n > 0.
  std::uint64_t uniform_int(std::uint64_t n) { return next_u64() % n; }

  /// Standard normal via Box-Muller (cosine branch); consumes two draws.
  double normal() {
    double u1 = static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;  // (0, 1]
    double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
  }

  double normal(double mean, double stddev) { return mean + stddev * normal(); }

  /// Index drawn proportionally to the (non-negative) weights.
  std::size_t weighted_index(std::span<const double> weights) {
    double total = 0.0;
    for (double w : weights) total += w;
    double target = uniform() * total;
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < weights.size(); ++i) {
      acc += weights[i];
      if (target < acc) return i;
    }
    return weights.empty() ? 0 : weights.size() - 1;
  }

  /// Decorrelated child stream; the parent's counter is unaffected.
  Rng derive(std::string_view label) const {
    return Rng(detail::mix64(key_ ^ detail::mix64(detail::fnv1a(label))));
  }

  Rng derive(std::uint64_t index) const {
    return Rng(detail::mix64(key_ ^ detail::mix64(index + 0x51ed270b213fULL)));
  }

 private:
  explicit Rng(std::uint64_t key) : key_(key) {}

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace voxnav
