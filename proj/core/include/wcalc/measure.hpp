#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "wcalc/compensated_sum.hpp"

namespace wcalc {

class ScalarFunction;

struct Atom {
  double position;
  double weight;

  friend bool operator==(const Atom&, const Atom&) = default;
};

/// Finitely supported probability measure on the real line.
///
/// Atoms are kept sorted by strictly increasing position. Construction merges
/// positions closer than `kMergeTolerance`, drops zero-weight atoms and
/// rejects negative or non-finite entries as well as total mass further than
/// `kMassTolerance` from one.
class DiscreteMeasure {
 public:
  static constexpr double kMergeTolerance = 1e-12;
  static constexpr double kMassTolerance = 1e-12;

  explicit DiscreteMeasure(std::vector<Atom> atoms);

  /// Same as the constructor, but rescales the weights to unit mass first.
  /// Any positive total is accepted.
  static DiscreteMeasure normalized(std::vector<Atom> atoms);

  [[nodiscard]] std::span<const Atom> atoms() const { return atoms_; }
  [[nodiscard]] std::size_t size() const { return atoms_.size(); }

  /// Smallest K with every atom in [-K, K].
  [[nodiscard]] double support_bound() const { return support_bound_; }

  [[nodiscard]] double total_mass() const;

  friend bool operator==(const DiscreteMeasure&, const DiscreteMeasure&) = default;

 private:
  std::vector<Atom> atoms_;
  double support_bound_ = 0.0;
};

DiscreteMeasure dirac(double x);

/// The convex combination (1 - t) a + t b.
DiscreteMeasure mix(const DiscreteMeasure& a, const DiscreteMeasure& b, double t);

/// Pairing <f, m> for any callable f: double -> double.
template <typename Fn>
double integrate_with(const DiscreteMeasure& m, Fn&& f) {
  CompensatedSum acc;
  for (const Atom& atom : m.atoms()) {
    acc += atom.weight * f(atom.position);
  }
  return acc.value();
}

/// Pairing <f, m>; throws EvaluationError if f is non-finite at an atom.
double integrate(const DiscreteMeasure& m, const ScalarFunction& f);

/// Exact Wasserstein-1 distance, computed as the L1 distance between the two
/// cumulative distribution functions.
double w1(const DiscreteMeasure& a, const DiscreteMeasure& b);

/// <f, a> - <f, b> for a catalog function with Lipschitz bound at most one.
/// By Kantorovich-Rubinstein duality the result never exceeds w1(a, b).
double kr_lower_bound(const DiscreteMeasure& a, const DiscreteMeasure& b,
                      const ScalarFunction& f);

}  // namespace wcalc
