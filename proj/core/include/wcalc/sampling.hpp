#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

#include "wcalc/measure.hpp"

namespace wcalc {

/// SplitMix64 finalizer; derives independent per-index seeds from one root
/// seed so parallel and serial sampling see identical streams.
std::uint64_t split_seed(std::uint64_t seed, std::uint64_t index);

/// Reproducible random source. Conversions to doubles are done here rather
/// than through <random> distributions so streams are identical across
/// standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [lo, hi].
  std::size_t uniform_index(std::size_t lo, std::size_t hi);
  /// Standard exponential variate.
  double exponential();

 private:
  std::mt19937_64 engine_;
};

/// Random m in P([-K, K]): 1..max_atoms atoms uniform in [-K, K] with
/// symmetric Dirichlet(1) weights.
DiscreteMeasure random_measure(Rng& rng, double K, std::size_t max_atoms);

}  // namespace wcalc
