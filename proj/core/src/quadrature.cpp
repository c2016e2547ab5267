#include "wcalc/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "wcalc/errors.hpp"

namespace wcalc {

QuadratureRule gauss_legendre(int order, double lo, double hi) {
  if (order < 1) throw InvalidInput("quadrature order must be at least 1");
  if (!(std::isfinite(lo) && std::isfinite(hi) && lo < hi)) {
    throw InvalidInput("quadrature interval must satisfy lo < hi");
  }
  const auto n = static_cast<std::size_t>(order);
  QuadratureRule rule{std::vector<double>(n), std::vector<double>(n)};
  const double mid = 0.5 * (hi + lo);
  const double half = 0.5 * (hi - lo);

  // Roots are symmetric; Newton iteration on P_n from the Chebyshev-like guess.
  for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = 0.0;
      for (std::size_t j = 1; j <= n; ++j) {
        const double p2 = p1;
        p1 = p0;
        const auto jd = static_cast<double>(j);
        p0 = ((2.0 * jd - 1.0) * z * p1 - (jd - 1.0) * p2) / jd;
      }
      dp = static_cast<double>(n) * (z * p0 - p1) / (z * z - 1.0);
      const double step = p0 / dp;
      z -= step;
      if (std::abs(step) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    rule.nodes[i] = mid - half * z;
    rule.nodes[n - 1 - i] = mid + half * z;
    rule.weights[i] = half * w;
    rule.weights[n - 1 - i] = half * w;
  }
  return rule;
}

}  // namespace wcalc
