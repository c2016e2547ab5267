#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>

#include "wcalc/measure.hpp"

namespace wcalc {

inline constexpr double kDefaultDawsonEps = 1e-3;
inline constexpr int kDefaultQuadOrder = 32;
inline constexpr std::uint64_t kDefaultSeed = 20240917;

/// Black-box measure-variable function m -> F(m). Must be deterministic.
class MeasureFunction {
 public:
  using Fn = std::function<double(const DiscreteMeasure&)>;

  explicit MeasureFunction(Fn fn) : fn_(std::move(fn)) {}

  double operator()(const DiscreteMeasure& m) const { return fn_(m); }

 private:
  Fn fn_;
};

/// Candidate derivative H(m, x) together with its x-derivative and,
/// optionally, its own linear derivative (m, x, y) -> dH_x(m, y).
struct DerivativeField {
  using ValueFn = std::function<double(const DiscreteMeasure&, double)>;
  using DeltaFn = std::function<double(const DiscreteMeasure&, double, double)>;

  ValueFn value;
  ValueFn dx;
  DeltaFn linear_delta;

  [[nodiscard]] bool has_linear_delta() const { return static_cast<bool>(linear_delta); }
};

DerivativeField zero_field();

/// Integral of x -> H(m, x) against m.
double field_mass(const DerivativeField& h, const DiscreteMeasure& m);

/// Difference quotient [F((1 - eps) m + eps delta_x) - F(m)] / eps, eps in (0, 0.5].
double dawson(const MeasureFunction& f, const DiscreteMeasure& m, double x, double eps);

/// One Richardson step, 2 D(eps/2) - D(eps); eps in (0, 0.25].
double dawson_extrapolated(const MeasureFunction& f, const DiscreteMeasure& m, double x,
                           double eps);

/// Seeded sampling over P([-K, K]) x [-K, K].
struct SamplePlan {
  double K = 1.0;
  std::size_t samples = 200;
  std::uint64_t seed = kDefaultSeed;
  unsigned threads = 1;
  std::size_t max_atoms = 12;
};

/// Sampled sup of |dawson(F, m, x, eps) - H(m, x)|.
double uniform_dawson_modulus(const MeasureFunction& f, const DerivativeField& oracle, double eps,
                              const SamplePlan& plan);

/// Gauss-Legendre approximation in t of
/// int_0^1 int H((1 - t) mu + t m, x) d(m - mu)(x) dt.
double deriv2_quadrature(const DerivativeField& h, const DiscreteMeasure& m,
                         const DiscreteMeasure& mu, int quad_order);

/// |F(m) - F(mu) - deriv2_quadrature(H, m, mu, quad_order)|
double verify_deriv2(const MeasureFunction& f, const DerivativeField& h, const DiscreteMeasure& m,
                     const DiscreteMeasure& mu, int quad_order);

/// H(m, x) - int H(m, .) dm, with dx and linear_delta adjusted to match.
DerivativeField canonicalize(const DerivativeField& h);

struct CheckReport {
  std::string check;
  std::uint64_t seed = 0;
  double eps = 0.0;
  double residual_max = 0.0;
  std::size_t samples = 0;
};

}  // namespace wcalc
