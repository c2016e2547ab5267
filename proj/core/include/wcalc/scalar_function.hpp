#pragma once

#include <string_view>
#include <variant>
#include <vector>

namespace wcalc {

namespace scalar {

struct Sin {
  friend bool operator==(const Sin&, const Sin&) = default;
};
struct Cos {
  friend bool operator==(const Cos&, const Cos&) = default;
};
struct Tanh {
  friend bool operator==(const Tanh&, const Tanh&) = default;
};
/// c0 + c1 x + c2 x^2 + ...
struct Polynomial {
  std::vector<double> coeffs;
  friend bool operator==(const Polynomial&, const Polynomial&) = default;
};
/// exp(-((x - center) / width)^2 / 2)
struct Gaussian {
  double center = 0.0;
  double width = 1.0;
  friend bool operator==(const Gaussian&, const Gaussian&) = default;
};
/// slope * x + intercept
struct Affine {
  double slope = 1.0;
  double intercept = 0.0;
  friend bool operator==(const Affine&, const Affine&) = default;
};
/// sqrt(x^2 + eps^2) - eps, a C-infinity 1-Lipschitz stand-in for |x|.
struct SmoothAbs {
  double eps = 0.1;
  friend bool operator==(const SmoothAbs&, const SmoothAbs&) = default;
};

}  // namespace scalar

/// A catalog function R -> R with exact first and second derivatives.
class ScalarFunction {
 public:
  using Kind = std::variant<scalar::Sin, scalar::Cos, scalar::Tanh, scalar::Polynomial,
                            scalar::Gaussian, scalar::Affine, scalar::SmoothAbs>;

  /// Throws InvalidInput for non-finite parameters, a non-positive width or
  /// eps, or an empty coefficient list.
  ScalarFunction(Kind kind);  // NOLINT(google-explicit-constructor)

  static ScalarFunction sin() { return ScalarFunction(Kind(scalar::Sin{})); }
  static ScalarFunction cos() { return ScalarFunction(Kind(scalar::Cos{})); }
  static ScalarFunction tanh() { return ScalarFunction(Kind(scalar::Tanh{})); }
  static ScalarFunction identity() { return ScalarFunction(Kind(scalar::Affine{1.0, 0.0})); }
  static ScalarFunction polynomial(std::vector<double> coeffs) {
    return ScalarFunction(Kind(scalar::Polynomial{std::move(coeffs)}));
  }
  static ScalarFunction gaussian(double center, double width) {
    return ScalarFunction(Kind(scalar::Gaussian{center, width}));
  }
  static ScalarFunction affine(double slope, double intercept) {
    return ScalarFunction(Kind(scalar::Affine{slope, intercept}));
  }
  static ScalarFunction smooth_abs(double eps) { return ScalarFunction(Kind(scalar::SmoothAbs{eps})); }

  double operator()(double x) const;
  [[nodiscard]] double derivative(double x) const;
  [[nodiscard]] double second_derivative(double x) const;

  /// Upper bound of |f'| on [-10, 10].
  [[nodiscard]] double lipschitz_bound() const;

  [[nodiscard]] std::string_view name() const;
  [[nodiscard]] const Kind& kind() const { return kind_; }

  friend bool operator==(const ScalarFunction&, const ScalarFunction&) = default;

 private:
  Kind kind_;
};

}  // namespace wcalc
