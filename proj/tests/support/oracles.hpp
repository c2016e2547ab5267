#pragma once

// Test-only reference computations. Each one takes a route independent of
// the library code it is used to check.

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "wcalc/measure.hpp"

namespace wcalc::testing {

/// W1 through the quantile coupling: int_0^1 |Q_a(u) - Q_b(u)| du, integrated
/// exactly over the merged cumulative-weight breakpoints. Uses long double so
/// it does not share rounding with the CDF sweep.
inline double quantile_w1(const DiscreteMeasure& a, const DiscreteMeasure& b) {
  auto levels = [](const DiscreteMeasure& m) {
    std::vector<long double> out;
    long double c = 0.0L;
    for (const Atom& atom : m.atoms()) {
      c += atom.weight;
      out.push_back(c);
    }
    out.back() = 1.0L;
    return out;
  };
  const std::vector<long double> la = levels(a);
  const std::vector<long double> lb = levels(b);
  std::size_t i = 0;
  std::size_t j = 0;
  long double u = 0.0L;
  long double total = 0.0L;
  while (i < la.size() && j < lb.size()) {
    const long double next = std::min(la[i], lb[j]);
    const long double gap = a.atoms()[i].position - static_cast<long double>(b.atoms()[j].position);
    total += std::fabs(gap) * (next - u);
    u = next;
    if (la[i] == next) ++i;
    if (lb[j] == next) ++j;
  }
  return static_cast<double>(total);
}

inline double central_difference(const std::function<double(double)>& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

/// Fourth-order five-point stencil.
inline double five_point_difference(const std::function<double(double)>& f, double x, double h) {
  return (f(x - 2 * h) - 8 * f(x - h) + 8 * f(x + h) - f(x + 2 * h)) / (12.0 * h);
}

}  // namespace wcalc::testing
