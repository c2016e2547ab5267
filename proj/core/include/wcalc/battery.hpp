#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "wcalc/cylinder.hpp"
#include "wcalc/derivative.hpp"

namespace wcalc {

/// Test functions shared by every battery check.
struct NamedCylinder {
  std::string name;
  CylinderFunction function;
  /// False for moments and constants, whose second derivative is trivial.
  bool nontrivial_hessian;
};

std::vector<NamedCylinder> cylinder_battery();

struct BatteryOptions {
  std::uint64_t seed = kDefaultSeed;
  unsigned threads = 1;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  /// Measured maxima and the thresholds they were held to. Contains nothing
  /// that depends on timing or the thread count.
  nlohmann::json details;
};

CriterionResult check_discretization_bound(const BatteryOptions& options);
CriterionResult check_dawson_consistency(const BatteryOptions& options);
CriterionResult check_deriv2_identity(const BatteryOptions& options);
CriterionResult check_canonical_normalization(const BatteryOptions& options);
CriterionResult check_ftc_soundness(const BatteryOptions& options);
CriterionResult check_counterexample(const BatteryOptions& options);
CriterionResult check_second_derivative_symmetry(const BatteryOptions& options);
CriterionResult check_metric_properties(const BatteryOptions& options);

/// Criteria 1 through 8.
std::vector<CriterionResult> run_battery(const BatteryOptions& options);

/// Criterion 9: reruns 1-8 with a different thread count and compares the
/// serialized results with `reference`.
CriterionResult check_determinism(const BatteryOptions& options,
                                  const std::vector<CriterionResult>& reference);

nlohmann::json criterion_to_json(const CriterionResult& r);
nlohmann::json battery_to_json(const BatteryOptions& options,
                               const std::vector<CriterionResult>& results);

}  // namespace wcalc
