#include "wcalc/ftc.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "wcalc/errors.hpp"
#include "wcalc/parallel.hpp"
#include "wcalc/quadrature.hpp"
#include "wcalc/sampling.hpp"

namespace wcalc {
namespace {

// Sample streams are separated by offsetting the index space.
constexpr std::uint64_t kMismatchStream = 0;
constexpr std::uint64_t kSymmetryStream = 1ULL << 32;
constexpr std::uint64_t kProbeStream = 2ULL << 32;
constexpr std::size_t kRandomProbes = 8;

constexpr double kQuadratureGapTolerance = 1e-10;
constexpr double kDawsonGapTolerance = 1e-5;
constexpr double kDerivativeGapFloor = 0.1;

double estimated_delta(const DerivativeField& h, const DiscreteMeasure& m, double x, double y,
                       double eps) {
  const MeasureFunction hx([&h, x](const DiscreteMeasure& mm) { return h.value(mm, x); });
  return dawson_extrapolated(hx, m, y, eps);
}

void require_canonical(const DerivativeField& h, const FtcOptions& options) {
  std::vector<DiscreteMeasure> probes{dirac(0.0),
                                      DiscreteMeasure({{-options.K, 0.5}, {options.K, 0.5}})};
  for (std::size_t i = 0; i < kRandomProbes; ++i) {
    Rng rng(split_seed(options.seed, kProbeStream + i));
    probes.push_back(random_measure(rng, options.K, 12));
  }
  for (const DiscreteMeasure& m : probes) {
    const double mass = field_mass(h, m);
    if (!(std::abs(mass) <= kCanonicalTolerance)) {
      throw InvalidInput("field is not canonical: int H(m, .) dm = " + std::to_string(mass) +
                         " on a probe measure; canonicalize it first");
    }
  }
}

}  // namespace

MeasureFunction antiderivative(DerivativeField h, int quad_order) {
  if (quad_order < 2) throw InvalidInput("quadrature order must be at least 2");
  QuadratureRule rule = gauss_legendre(quad_order, 0.0, 1.0);
  return MeasureFunction([h = std::move(h), rule = std::move(rule)](const DiscreteMeasure& m) {
    const DiscreteMeasure base = dirac(0.0);
    if (m == base) return 0.0;
    CompensatedSum outer;
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
      const DiscreteMeasure path = mix(base, m, rule.nodes[q]);
      CompensatedSum inner;
      for (const Atom& a : m.atoms()) inner += a.weight * h.value(path, a.position);
      inner -= h.value(path, 0.0);
      outer += rule.weights[q] * inner.value();
    }
    return outer.value();
  });
}

SymmetryResidual symmetry_residual(const DerivativeField& h, const DiscreteMeasure& m, double x,
                                   double y, DeltaSource source, double eps) {
  if (x == y) return {0.0, !h.has_linear_delta()};
  double dxy = 0.0;
  double dyx = 0.0;
  bool estimated = false;
  if (h.has_linear_delta()) {
    dxy = h.linear_delta(m, x, y);
    dyx = h.linear_delta(m, y, x);
  } else if (source == DeltaSource::allow_estimate) {
    dxy = estimated_delta(h, m, x, y, eps);
    dyx = estimated_delta(h, m, y, x, eps);
    estimated = true;
  } else {
    throw InvalidInput("field has no linear derivative and estimation is disabled");
  }
  return {(dxy - h.value(m, x)) - (dyx - h.value(m, y)), estimated};
}

FtcReport ftc_check(const DerivativeField& h, const FtcOptions& options) {
  if (!(options.K > 0.0)) throw InvalidInput("ftc_check needs K > 0");
  if (options.samples < 1) throw InvalidInput("ftc_check needs at least one sample");
  if (!h.has_linear_delta() && options.delta_source == DeltaSource::exact_only) {
    throw InvalidInput("field has no linear derivative and estimation is disabled");
  }
  require_canonical(h, options);

  const MeasureFunction f = antiderivative(h, options.quad_order);

  FtcReport report;
  report.seed = options.seed;
  report.quad_order = options.quad_order;
  report.eps = options.eps;
  report.K = options.K;
  report.samples = options.samples;
  report.symmetry_estimated = !h.has_linear_delta();

  report.mismatch_max = parallel_max(options.samples, options.threads, [&](std::size_t i) {
    Rng rng(split_seed(options.seed, kMismatchStream + i));
    const DiscreteMeasure m = random_measure(rng, options.K, 12);
    const double x = rng.uniform(-options.K, options.K);
    return std::abs(dawson_extrapolated(f, m, x, options.eps) - h.value(m, x));
  });

  report.symmetry_max = parallel_max(options.samples, options.threads, [&](std::size_t i) {
    Rng rng(split_seed(options.seed, kSymmetryStream + i));
    const DiscreteMeasure m = random_measure(rng, options.K, 12);
    const double x = rng.uniform(-options.K, options.K);
    const double y = rng.uniform(-options.K, options.K);
    return std::abs(symmetry_residual(h, m, x, y, options.delta_source, options.eps).value);
  });

  report.verdict =
      report.symmetry_max > kNotADerivativeThreshold ? "not-a-derivative" : "derivative";
  return report;
}

DerivativeField counterexample_field(const ScalarFunction& phi, const ScalarFunction& psi) {
  DerivativeField h;
  h.value = [phi, psi](const DiscreteMeasure& m, double x) {
    return (phi(x) - integrate(m, phi)) * integrate(m, psi);
  };
  h.dx = [phi, psi](const DiscreteMeasure& m, double x) {
    return phi.derivative(x) * integrate(m, psi);
  };
  h.linear_delta = [phi, psi](const DiscreteMeasure& m, double x, double y) {
    const double mp = integrate(m, phi);
    const double ms = integrate(m, psi);
    return (phi(x) - mp) * (psi(y) - ms) - (phi(y) - mp) * ms;
  };
  return h;
}

double counterexample_antiderivative(const ScalarFunction& phi, const ScalarFunction& psi,
                                     const DiscreteMeasure& m) {
  return 0.5 * (psi(0.0) + integrate(m, psi)) * (integrate(m, phi) - phi(0.0));
}

double counterexample_delta(const ScalarFunction& phi, const ScalarFunction& psi,
                            const DiscreteMeasure& m, double x) {
  const double mp = integrate(m, phi);
  const double ms = integrate(m, psi);
  return 0.5 * (psi(x) - ms) * (mp - phi(0.0)) + 0.5 * (psi(0.0) + ms) * (phi(x) - mp);
}

CounterexampleReport counterexample_report(const ScalarFunction& phi, const ScalarFunction& psi,
                                           const FtcOptions& options) {
  const DerivativeField h = counterexample_field(phi, psi);
  const MeasureFunction f = antiderivative(h, options.quad_order);

  struct Gaps {
    double quadrature;
    double dawson;
    double derivative;
  };
  std::vector<Gaps> gaps(options.samples);
  parallel_for(options.samples, options.threads, [&](std::size_t i) {
    // Same stream as ftc_check's mismatch samples, so both maxima see the
    // same (m, x) pairs.
    Rng rng(split_seed(options.seed, kMismatchStream + i));
    const DiscreteMeasure m = random_measure(rng, options.K, 12);
    const double x = rng.uniform(-options.K, options.K);
    const double closed_delta = counterexample_delta(phi, psi, m, x);
    gaps[i] = {std::abs(f(m) - counterexample_antiderivative(phi, psi, m)),
               std::abs(dawson_extrapolated(f, m, x, options.eps) - closed_delta),
               std::abs(closed_delta - h.value(m, x))};
  });

  CounterexampleReport report;
  for (const Gaps& g : gaps) {
    report.quadrature_gap_max = std::max(report.quadrature_gap_max, g.quadrature);
    report.dawson_gap_max = std::max(report.dawson_gap_max, g.dawson);
    report.derivative_gap_max = std::max(report.derivative_gap_max, g.derivative);
  }
  report.symmetry_probe =
      symmetry_residual(h, dirac(0.0), std::numbers::pi / 2, std::numbers::pi).value;
  report.ftc = ftc_check(h, options);

  // ftc mismatch measures the same gap on the same samples through the
  // Dawson estimator, so it can fall short of the closed form only by the
  // estimator's error.
  report.mismatch_threshold = report.derivative_gap_max - kDawsonGapTolerance;

  report.ok = report.quadrature_gap_max <= kQuadratureGapTolerance &&
              report.dawson_gap_max <= kDawsonGapTolerance &&
              report.derivative_gap_max >= kDerivativeGapFloor &&
              report.ftc.mismatch_max >= report.mismatch_threshold;
  return report;
}

}  // namespace wcalc
