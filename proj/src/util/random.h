#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

namespace mmhp {

// Seeded source of randomness. Every randomized routine takes one of these by
// reference so that a run is reproducible from its seed alone.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform integer in [lo, hi].
  template <typename T>
  T uniform(T lo, T hi) {
    return std::uniform_int_distribution<T>(lo, hi)(engine_);
  }

  double unit() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }

  bool flip(double p) { return unit() < p; }

  std::uint64_t next_seed() { return engine_(); }

  template <typename T>
  void shuffle(std::vector<T>& items) {
    std::shuffle(items.begin(), items.end(), engine_);
  }

  // Index drawn proportionally to non-negative weights; weights must not all be zero.
  std::size_t weighted_index(const std::vector<double>& weights) {
    return std::discrete_distribution<std::size_t>(weights.begin(), weights.end())(engine_);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace mmhp
