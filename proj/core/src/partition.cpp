#include "wcalc/partition.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "wcalc/errors.hpp"

namespace wcalc {
namespace {

constexpr double kDropWeight = 1e-15;

// Mollifier supported on (-1, 1).
double mollifier(double u) {
  const double s = 1.0 - u * u;
  return s > 0.0 ? std::exp(-1.0 / s) : 0.0;
}

double exp_tail(double u) { return u > 0.0 ? std::exp(-1.0 / u) : 0.0; }

// C-infinity monotone step: 0 for u <= 0, 1 for u >= 1.
double smooth_step(double u) {
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) return 1.0;
  const double a = exp_tail(u);
  return a / (a + exp_tail(1.0 - u));
}

double hat(double u) { return std::max(0.0, 1.0 - std::abs(u)); }

}  // namespace

std::string_view to_string(BumpShape shape) {
  return shape == BumpShape::smooth_bump ? "smooth_bump" : "linear_hat";
}

BumpShape parse_bump_shape(std::string_view name) {
  if (name == "smooth_bump" || name == "smooth") return BumpShape::smooth_bump;
  if (name == "linear_hat" || name == "hat") return BumpShape::linear_hat;
  throw InvalidInput("unknown bump shape '" + std::string(name) + "'");
}

PartitionScheme::PartitionScheme(std::int64_t n, std::int64_t K, BumpShape shape)
    : n_(n), K_(K), shape_(shape) {
  if (K_ < 1) throw InvalidInput("partition support bound K must be a positive integer");
  if (n_ < K_ + 1) {
    throw InvalidInput("partition resolution needs n >= K + 1 (n = " + std::to_string(n_) +
                       ", K = " + std::to_string(K_) + ")");
  }
}

double PartitionScheme::raw_weight(std::int64_t k, double x) const {
  const double nd = static_cast<double>(n_);
  const double N = static_cast<double>(last_index());
  const bool smooth = shape_ == BumpShape::smooth_bump;
  if (k == last_index()) {
    // Rises from 0 at (N - 1) / n to 1 at K and stays 1 beyond.
    const double u = nd * x - N + 1.0;
    return smooth ? smooth_step(u) : std::clamp(u, 0.0, 1.0);
  }
  if (k == -last_index()) {
    const double u = -nd * x - N + 1.0;
    return smooth ? smooth_step(u) : std::clamp(u, 0.0, 1.0);
  }
  const double u = nd * x - static_cast<double>(k);
  return smooth ? mollifier(u) : hat(u);
}

double PartitionScheme::raw_total(double x) const {
  const std::int64_t N = last_index();
  const double c = std::floor(static_cast<double>(n_) * x);
  const auto lo = static_cast<std::int64_t>(std::clamp(c - 1.0, static_cast<double>(-N),
                                                       static_cast<double>(N)));
  const auto hi = static_cast<std::int64_t>(std::clamp(c + 2.0, static_cast<double>(-N),
                                                       static_cast<double>(N)));
  double total = 0.0;
  for (std::int64_t j = lo; j <= hi; ++j) total += raw_weight(j, x);
  if (lo > -N) total += raw_weight(-N, x);
  if (hi < N) total += raw_weight(N, x);
  return total;
}

double PartitionScheme::bump_weight(std::int64_t k, double x) const {
  if (k < -last_index() || k > last_index()) {
    throw InvalidInput("bump index " + std::to_string(k) + " outside [-nK, nK]");
  }
  if (!std::isfinite(x)) throw InvalidInput("bump_weight needs a finite point");
  const double raw = raw_weight(k, x);
  return raw == 0.0 ? 0.0 : raw / raw_total(x);
}

DiscreteMeasure PartitionScheme::discretize(const DiscreteMeasure& m) const {
  if (m.support_bound() > static_cast<double>(K_)) {
    throw InvalidInput("measure support exceeds the partition bound K = " + std::to_string(K_));
  }
  const std::int64_t N = last_index();
  std::map<std::int64_t, CompensatedSum> mass;
  for (const Atom& atom : m.atoms()) {
    const double x = atom.position;
    const double total = raw_total(x);
    const double c = std::floor(static_cast<double>(n_) * x);
    const auto lo = static_cast<std::int64_t>(std::max(c - 1.0, static_cast<double>(-N)));
    const auto hi = static_cast<std::int64_t>(std::min(c + 2.0, static_cast<double>(N)));
    for (std::int64_t k = lo; k <= hi; ++k) {
      const double raw = raw_weight(k, x);
      if (raw > 0.0) mass[k] += atom.weight * (raw / total);
    }
  }

  std::vector<Atom> atoms;
  atoms.reserve(mass.size());
  for (const auto& [k, w] : mass) {
    if (w.value() >= kDropWeight) atoms.push_back({grid_point(k), w.value()});
  }
  return DiscreteMeasure::normalized(std::move(atoms));
}

}  // namespace wcalc
