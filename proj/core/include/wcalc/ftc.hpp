#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include "wcalc/derivative.hpp"
#include "wcalc/measure.hpp"
#include "wcalc/scalar_function.hpp"

namespace wcalc {

/// Tolerance for an estimated symmetry residual; exact residuals use 1e-10.
inline constexpr double kEstimatedSymmetryTolerance = 1e-3;
inline constexpr double kExactSymmetryTolerance = 1e-10;
/// A field is reported "not-a-derivative" above this symmetry residual.
inline constexpr double kNotADerivativeThreshold = 100.0 * kEstimatedSymmetryTolerance;
/// Largest |int H(m, .) dm| accepted as canonical.
inline constexpr double kCanonicalTolerance = 1e-10;

/// F(m) = int_0^1 int H(t m + (1 - t) delta_0, x) d(m - delta_0)(x) dt,
/// integrated in t by Gauss-Legendre with `quad_order` nodes. F(delta_0) = 0.
MeasureFunction antiderivative(DerivativeField h, int quad_order = kDefaultQuadOrder);

enum class DeltaSource {
  /// Use the field's own linear_delta; reject fields without one.
  exact_only,
  /// Fall back to dawson_extrapolated on m -> H(m, x).
  allow_estimate,
};

struct SymmetryResidual {
  double value = 0.0;
  bool estimated = false;
};

/// [dH_x(m, y) - H(m, x)] - [dH_y(m, x) - H(m, y)]; zero for genuine derivatives.
SymmetryResidual symmetry_residual(const DerivativeField& h, const DiscreteMeasure& m, double x,
                                   double y, DeltaSource source = DeltaSource::exact_only,
                                   double eps = kDefaultDawsonEps);

struct FtcOptions {
  double K = 1.0;
  int quad_order = kDefaultQuadOrder;
  double eps = kDefaultDawsonEps;
  std::size_t samples = 200;
  std::uint64_t seed = kDefaultSeed;
  unsigned threads = 1;
  DeltaSource delta_source = DeltaSource::allow_estimate;
};

struct FtcReport {
  double mismatch_max = 0.0;
  double symmetry_max = 0.0;
  std::uint64_t seed = 0;
  int quad_order = 0;
  double eps = 0.0;
  double K = 0.0;
  std::size_t samples = 0;
  bool symmetry_estimated = false;
  /// "derivative" or "not-a-derivative".
  std::string verdict;
};

/// Builds F = antiderivative(H) and measures, over seeded samples, how far its
/// Dawson derivative is from H and how badly H breaks the symmetry condition.
/// Throws InvalidInput if H is not canonical on the probe measures.
FtcReport ftc_check(const DerivativeField& h, const FtcOptions& options);

/// The field (m, x) -> [phi(x) - <phi, m>] <psi, m>: canonical and smooth,
/// but not the derivative of any measure-variable function.
DerivativeField counterexample_field(const ScalarFunction& phi, const ScalarFunction& psi);

/// Closed form of its antiderivative: (psi(0) + <psi, m>)(<phi, m> - phi(0)) / 2.
double counterexample_antiderivative(const ScalarFunction& phi, const ScalarFunction& psi,
                                     const DiscreteMeasure& m);

/// Closed form of the derivative of that antiderivative.
double counterexample_delta(const ScalarFunction& phi, const ScalarFunction& psi,
                            const DiscreteMeasure& m, double x);

struct CounterexampleReport {
  /// max |quadrature F - closed-form F|
  double quadrature_gap_max = 0.0;
  /// max |Dawson derivative of quadrature F - closed-form dF|
  double dawson_gap_max = 0.0;
  /// max |closed-form dF - H|
  double derivative_gap_max = 0.0;
  /// Symmetry residual at (delta_0, pi/2, pi).
  double symmetry_probe = 0.0;
  FtcReport ftc;
  /// Lower bound demanded of ftc.mismatch_max, derived at run time from the
  /// closed-form gap.
  double mismatch_threshold = 0.0;
  bool ok = false;
};

CounterexampleReport counterexample_report(const ScalarFunction& phi, const ScalarFunction& psi,
                                           const FtcOptions& options);

}  // namespace wcalc
