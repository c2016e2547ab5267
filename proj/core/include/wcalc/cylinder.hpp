#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "wcalc/measure.hpp"
#include "wcalc/scalar_function.hpp"

namespace wcalc {

struct DerivativeField;
class MeasureFunction;

/// Value, gradient and row-major Hessian of an outer map at one point.
struct Jet {
  double value = 0.0;
  std::vector<double> gradient;
  std::vector<double> hessian;

  [[nodiscard]] double hess(std::size_t i, std::size_t j) const {
    return hessian[i * gradient.size() + j];
  }
};

/// Smooth map g: R^k -> R from a fixed catalog, with hand-coded gradient and
/// Hessian. Composite maps act on consecutive slices of the argument.
class OuterMap {
 public:
  /// constant + sum_i weights[i] v_i
  static OuterMap linear(std::vector<double> weights, double constant = 0.0);
  /// v_1 * ... * v_arity
  static OuterMap product(std::size_t arity);
  /// v^exponent, exponent >= 0
  static OuterMap power(int exponent);
  /// sin(sum_i weights[i] v_i)
  static OuterMap sin_of(std::vector<double> weights);
  /// exp(sum_i weights[i] v_i)
  static OuterMap exp_of(std::vector<double> weights);
  /// Zero-arity constant.
  static OuterMap constant(double value);

  /// alpha f(v[0:kf]) + g(v[kf:])
  static OuterMap scaled_sum(double alpha, const OuterMap& f, const OuterMap& g);
  /// f(v[0:kf]) * g(v[kf:])
  static OuterMap product_of(const OuterMap& f, const OuterMap& g);

  [[nodiscard]] std::size_t arity() const;
  [[nodiscard]] Jet jet(std::span<const double> v) const;
  [[nodiscard]] double value(std::span<const double> v) const { return jet(v).value; }

  struct Node;

 private:
  explicit OuterMap(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// F(m) = g(<phi_1, m>, ..., <phi_k, m>) with closed-form linear functional
/// derivatives of first and second order.
class CylinderFunction {
 public:
  /// Throws InvalidInput unless inner.size() == outer.arity().
  CylinderFunction(std::vector<ScalarFunction> inner, OuterMap outer);

  /// m -> <phi, m>
  static CylinderFunction moment(ScalarFunction phi);
  static CylinderFunction constant(double value);
  static CylinderFunction scaled_sum(double alpha, const CylinderFunction& f,
                                     const CylinderFunction& g);
  static CylinderFunction product(const CylinderFunction& f, const CylinderFunction& g);

  [[nodiscard]] std::span<const ScalarFunction> inner() const { return inner_; }
  [[nodiscard]] const OuterMap& outer() const { return outer_; }

  [[nodiscard]] std::vector<double> moments(const DiscreteMeasure& m) const;

  [[nodiscard]] double evaluate(const DiscreteMeasure& m) const;

  /// Canonical derivative sum_i d_i g(v) (phi_i(x) - v_i).
  [[nodiscard]] double exact_delta(const DiscreteMeasure& m, double x) const;

  /// sum_i d_i g(v) phi_i'(x)
  [[nodiscard]] double exact_delta_dx(const DiscreteMeasure& m, double x) const;

  /// Canonical second derivative: the linear derivative at y of m -> dF(m, x).
  [[nodiscard]] double exact_delta2(const DiscreteMeasure& m, double x, double y) const;

 private:
  std::vector<ScalarFunction> inner_;
  OuterMap outer_;
};

MeasureFunction as_measure_function(const CylinderFunction& f);

/// Packages dF with its exact x-derivative and exact linear derivative.
DerivativeField lift_to_field(const CylinderFunction& f);

}  // namespace wcalc
