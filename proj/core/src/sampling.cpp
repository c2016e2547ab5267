#include "wcalc/sampling.hpp"

#include <cmath>
#include <vector>

#include "wcalc/errors.hpp"

namespace wcalc {

std::uint64_t split_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + (index + 1) * 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::size_t Rng::uniform_index(std::size_t lo, std::size_t hi) {
  const auto span = static_cast<double>(hi - lo + 1);
  const auto offset = static_cast<std::size_t>(uniform() * span);
  return lo + (offset > hi - lo ? hi - lo : offset);
}

double Rng::exponential() {
  // 1 - u lies in (0, 1], so the log is finite.
  return -std::log1p(-uniform());
}

DiscreteMeasure random_measure(Rng& rng, double K, std::size_t max_atoms) {
  if (!(K > 0.0) || max_atoms == 0) {
    throw InvalidInput("random_measure needs K > 0 and at least one atom");
  }
  const std::size_t count = rng.uniform_index(1, max_atoms);
  std::vector<Atom> atoms(count);
  for (Atom& a : atoms) a.position = rng.uniform(-K, K);
  for (Atom& a : atoms) a.weight = rng.exponential();
  return DiscreteMeasure::normalized(std::move(atoms));
}

}  // namespace wcalc
