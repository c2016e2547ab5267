#include "wcalc/measure.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wcalc/errors.hpp"
#include "wcalc/scalar_function.hpp"

namespace wcalc {
namespace {

void check_entries(const std::vector<Atom>& atoms) {
  if (atoms.empty()) throw InvalidInput("measure needs at least one atom");
  for (const Atom& a : atoms) {
    if (!std::isfinite(a.position) || !std::isfinite(a.weight)) {
      throw InvalidInput("measure atoms must have finite position and weight");
    }
    if (a.weight < 0.0) throw InvalidInput("measure weights must be non-negative");
  }
}

double mass_of(const std::vector<Atom>& atoms) {
  CompensatedSum acc;
  for (const Atom& a : atoms) acc += a.weight;
  return acc.value();
}

// Sorts, merges positions within the tolerance of a cluster's first position
// and drops atoms whose merged weight is zero.
std::vector<Atom> canonical_atoms(std::vector<Atom> atoms) {
  std::stable_sort(atoms.begin(), atoms.end(),
                   [](const Atom& l, const Atom& r) { return l.position < r.position; });
  std::vector<Atom> merged;
  merged.reserve(atoms.size());
  for (const Atom& a : atoms) {
    if (!merged.empty() &&
        a.position - merged.back().position <= DiscreteMeasure::kMergeTolerance) {
      merged.back().weight += a.weight;
    } else {
      merged.push_back(a);
    }
  }
  std::erase_if(merged, [](const Atom& a) { return a.weight == 0.0; });
  return merged;
}

}  // namespace

DiscreteMeasure::DiscreteMeasure(std::vector<Atom> atoms) {
  check_entries(atoms);
  const double mass = mass_of(atoms);
  if (std::abs(mass - 1.0) > kMassTolerance) {
    throw InvalidInput("measure weights sum to " + std::to_string(mass) + ", expected 1");
  }
  atoms_ = canonical_atoms(std::move(atoms));
  for (const Atom& a : atoms_) support_bound_ = std::max(support_bound_, std::abs(a.position));
}

DiscreteMeasure DiscreteMeasure::normalized(std::vector<Atom> atoms) {
  check_entries(atoms);
  const double mass = mass_of(atoms);
  if (!(mass > 0.0)) throw InvalidInput("measure has no positive mass to normalize");
  for (Atom& a : atoms) a.weight /= mass;
  return DiscreteMeasure(std::move(atoms));
}

double DiscreteMeasure::total_mass() const { return mass_of(atoms_); }

DiscreteMeasure dirac(double x) {
  if (!std::isfinite(x)) throw InvalidInput("dirac position must be finite");
  return DiscreteMeasure({{x, 1.0}});
}

DiscreteMeasure mix(const DiscreteMeasure& a, const DiscreteMeasure& b, double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw InvalidInput("mixture parameter must lie in [0, 1]");
  std::vector<Atom> atoms;
  atoms.reserve(a.size() + b.size());
  for (const Atom& x : a.atoms()) atoms.push_back({x.position, (1.0 - t) * x.weight});
  for (const Atom& x : b.atoms()) atoms.push_back({x.position, t * x.weight});
  return DiscreteMeasure(std::move(atoms));
}

double integrate(const DiscreteMeasure& m, const ScalarFunction& f) {
  CompensatedSum acc;
  for (const Atom& atom : m.atoms()) {
    const double v = f(atom.position);
    if (!std::isfinite(v)) {
      throw EvaluationError(std::string(f.name()) + " is not finite at " +
                            std::to_string(atom.position));
    }
    acc += atom.weight * v;
  }
  return acc.value();
}

double w1(const DiscreteMeasure& a, const DiscreteMeasure& b) {
  const auto xs = a.atoms();
  const auto ys = b.atoms();
  std::size_t i = 0;
  std::size_t j = 0;
  CompensatedSum cdf_a;
  CompensatedSum cdf_b;
  CompensatedSum distance;

  // Sweep the merged breakpoints; between consecutive breakpoints both CDFs
  // are constant, so the integral of |F_a - F_b| is exact up to rounding.
  double current = std::min(xs.front().position, ys.front().position);
  while (i < xs.size() || j < ys.size()) {
    while (i < xs.size() && xs[i].position == current) cdf_a += xs[i++].weight;
    while (j < ys.size() && ys[j].position == current) cdf_b += ys[j++].weight;
    if (i == xs.size() && j == ys.size()) break;

    double next = 0.0;
    if (i == xs.size()) {
      next = ys[j].position;
    } else if (j == ys.size()) {
      next = xs[i].position;
    } else {
      next = std::min(xs[i].position, ys[j].position);
    }
    distance += std::abs(cdf_a.value() - cdf_b.value()) * (next - current);
    current = next;
  }
  return distance.value();
}

double kr_lower_bound(const DiscreteMeasure& a, const DiscreteMeasure& b,
                      const ScalarFunction& f) {
  if (f.lipschitz_bound() > 1.0) {
    throw InvalidInput(std::string(f.name()) + " is not declared 1-Lipschitz");
  }
  return integrate(a, f) - integrate(b, f);
}

}  // namespace wcalc
