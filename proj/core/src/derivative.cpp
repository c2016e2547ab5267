#include "wcalc/derivative.hpp"

#include <cmath>

#include "wcalc/errors.hpp"
#include "wcalc/parallel.hpp"
#include "wcalc/quadrature.hpp"
#include "wcalc/sampling.hpp"

namespace wcalc {

DerivativeField zero_field() {
  DerivativeField h;
  h.value = [](const DiscreteMeasure&, double) { return 0.0; };
  h.dx = [](const DiscreteMeasure&, double) { return 0.0; };
  h.linear_delta = [](const DiscreteMeasure&, double, double) { return 0.0; };
  return h;
}

double field_mass(const DerivativeField& h, const DiscreteMeasure& m) {
  return integrate_with(m, [&](double x) { return h.value(m, x); });
}

double dawson(const MeasureFunction& f, const DiscreteMeasure& m, double x, double eps) {
  if (!(eps > 0.0 && eps <= 0.5)) throw InvalidInput("dawson eps must lie in (0, 0.5]");
  return (f(mix(m, dirac(x), eps)) - f(m)) / eps;
}

double dawson_extrapolated(const MeasureFunction& f, const DiscreteMeasure& m, double x,
                           double eps) {
  if (!(eps > 0.0 && eps <= 0.25)) {
    throw InvalidInput("dawson_extrapolated eps must lie in (0, 0.25]");
  }
  const double base = f(m);
  const double coarse = (f(mix(m, dirac(x), eps)) - base) / eps;
  const double fine = (f(mix(m, dirac(x), 0.5 * eps)) - base) / (0.5 * eps);
  return 2.0 * fine - coarse;
}

double uniform_dawson_modulus(const MeasureFunction& f, const DerivativeField& oracle, double eps,
                              const SamplePlan& plan) {
  if (plan.samples < 1) throw InvalidInput("uniform_dawson_modulus needs at least one sample");
  return parallel_max(plan.samples, plan.threads, [&](std::size_t i) {
    Rng rng(split_seed(plan.seed, i));
    const DiscreteMeasure m = random_measure(rng, plan.K, plan.max_atoms);
    const double x = rng.uniform(-plan.K, plan.K);
    return std::abs(dawson(f, m, x, eps) - oracle.value(m, x));
  });
}

double deriv2_quadrature(const DerivativeField& h, const DiscreteMeasure& m,
                         const DiscreteMeasure& mu, int quad_order) {
  if (quad_order < 2) throw InvalidInput("quadrature order must be at least 2");
  if (m == mu) return 0.0;
  const QuadratureRule rule = gauss_legendre(quad_order, 0.0, 1.0);
  CompensatedSum outer;
  for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
    const DiscreteMeasure path = mix(mu, m, rule.nodes[q]);
    CompensatedSum inner;
    for (const Atom& a : m.atoms()) inner += a.weight * h.value(path, a.position);
    for (const Atom& a : mu.atoms()) inner -= a.weight * h.value(path, a.position);
    outer += rule.weights[q] * inner.value();
  }
  return outer.value();
}

double verify_deriv2(const MeasureFunction& f, const DerivativeField& h, const DiscreteMeasure& m,
                     const DiscreteMeasure& mu, int quad_order) {
  const double q = deriv2_quadrature(h, m, mu, quad_order);
  if (m == mu) return 0.0;
  return std::abs(f(m) - f(mu) - q);
}

DerivativeField canonicalize(const DerivativeField& h) {
  DerivativeField out;
  out.value = [h](const DiscreteMeasure& m, double x) { return h.value(m, x) - field_mass(h, m); };
  out.dx = h.dx;
  if (h.has_linear_delta()) {
    // Linear derivative of m -> int H(m, z) dm(z) at y is
    // int dH_z(m, y) dm(z) + H(m, y) - int H(m, .) dm.
    out.linear_delta = [h](const DiscreteMeasure& m, double x, double y) {
      const double mass = field_mass(h, m);
      const double mixed = integrate_with(m, [&](double z) { return h.linear_delta(m, z, y); });
      return h.linear_delta(m, x, y) - mixed - h.value(m, y) + mass;
    };
  }
  return out;
}

}  // namespace wcalc
