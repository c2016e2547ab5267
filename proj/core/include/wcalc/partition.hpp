#pragma once

#include <cstdint>
#include <string_view>

#include "wcalc/measure.hpp"

namespace wcalc {

enum class BumpShape {
  /// Normalized mollifiers exp(-1 / (1 - u^2)) with C-infinity ramps in the
  /// two unbounded boundary cells.
  smooth_bump,
  /// Piecewise-linear hats. Not smooth; used to cross-check the W1 bound.
  linear_hat,
};

std::string_view to_string(BumpShape shape);
/// Accepts "smooth_bump"/"smooth" and "linear_hat"/"hat".
BumpShape parse_bump_shape(std::string_view name);

/// Grid discretization m -> m^[n] onto {k / n : |k| <= n K} through a
/// partition of unity (psi_k) subordinate to the cover
///   I_k = ((k - 1) / n, (k + 1) / n)       for |k| < n K,
///   I_{-nK} = (-inf, (-n K + 1) / n),  I_{nK} = ((n K - 1) / n, +inf).
/// For m supported in [-K, K] and n >= K + 1, W1(m, m^[n]) <= 3 / n.
class PartitionScheme {
 public:
  /// Throws InvalidInput unless K >= 1 and n >= K + 1.
  PartitionScheme(std::int64_t n, std::int64_t K, BumpShape shape = BumpShape::smooth_bump);

  [[nodiscard]] std::int64_t n() const { return n_; }
  [[nodiscard]] std::int64_t K() const { return K_; }
  [[nodiscard]] BumpShape shape() const { return shape_; }
  /// Largest grid index, n K.
  [[nodiscard]] std::int64_t last_index() const { return n_ * K_; }
  [[nodiscard]] double grid_point(std::int64_t k) const {
    return static_cast<double>(k) / static_cast<double>(n_);
  }
  /// The guaranteed bound 3 / n.
  [[nodiscard]] double w1_bound() const { return 3.0 / static_cast<double>(n_); }

  /// psi_k(x); throws InvalidInput if |k| > n K.
  [[nodiscard]] double bump_weight(std::int64_t k, double x) const;

  /// Throws InvalidInput if m.support_bound() > K.
  [[nodiscard]] DiscreteMeasure discretize(const DiscreteMeasure& m) const;

 private:
  [[nodiscard]] double raw_weight(std::int64_t k, double x) const;
  /// Sum of raw weights over the indices that can be non-zero at x.
  [[nodiscard]] double raw_total(double x) const;

  std::int64_t n_;
  std::int64_t K_;
  BumpShape shape_;
};

}  // namespace wcalc
