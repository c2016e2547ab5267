#include "wcalc/scalar_function.hpp"

#include <cmath>
#include <string>

#include "wcalc/errors.hpp"

namespace wcalc {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

constexpr double kLipschitzWindow = 10.0;

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) {
    throw InvalidInput(std::string("scalar function parameter '") + what + "' must be finite");
  }
}

}  // namespace

ScalarFunction::ScalarFunction(Kind kind) : kind_(std::move(kind)) {
  std::visit(Overloaded{
                 [](const scalar::Polynomial& p) {
                   if (p.coeffs.empty()) {
                     throw InvalidInput("polynomial needs at least one coefficient");
                   }
                   for (double c : p.coeffs) require_finite(c, "coeffs");
                 },
                 [](const scalar::Gaussian& g) {
                   require_finite(g.center, "center");
                   require_finite(g.width, "width");
                   if (g.width <= 0.0) throw InvalidInput("gaussian width must be positive");
                 },
                 [](const scalar::Affine& a) {
                   require_finite(a.slope, "slope");
                   require_finite(a.intercept, "intercept");
                 },
                 [](const scalar::SmoothAbs& s) {
                   require_finite(s.eps, "eps");
                   if (s.eps <= 0.0) throw InvalidInput("smooth_abs eps must be positive");
                 },
                 [](const auto&) {},
             },
             kind_);
}

double ScalarFunction::operator()(double x) const {
  return std::visit(
      Overloaded{
          [x](const scalar::Sin&) { return std::sin(x); },
          [x](const scalar::Cos&) { return std::cos(x); },
          [x](const scalar::Tanh&) { return std::tanh(x); },
          [x](const scalar::Polynomial& p) {
            double acc = 0.0;
            for (auto it = p.coeffs.rbegin(); it != p.coeffs.rend(); ++it) acc = acc * x + *it;
            return acc;
          },
          [x](const scalar::Gaussian& g) {
            const double z = (x - g.center) / g.width;
            return std::exp(-0.5 * z * z);
          },
          [x](const scalar::Affine& a) { return a.slope * x + a.intercept; },
          [x](const scalar::SmoothAbs& s) { return std::hypot(x, s.eps) - s.eps; },
      },
      kind_);
}

double ScalarFunction::derivative(double x) const {
  return std::visit(
      Overloaded{
          [x](const scalar::Sin&) { return std::cos(x); },
          [x](const scalar::Cos&) { return -std::sin(x); },
          [x](const scalar::Tanh&) {
            const double t = std::tanh(x);
            return 1.0 - t * t;
          },
          [x](const scalar::Polynomial& p) {
            double acc = 0.0;
            for (std::size_t k = p.coeffs.size(); k-- > 1;) {
              acc = acc * x + static_cast<double>(k) * p.coeffs[k];
            }
            return acc;
          },
          [x](const scalar::Gaussian& g) {
            const double z = (x - g.center) / g.width;
            return -z / g.width * std::exp(-0.5 * z * z);
          },
          [](const scalar::Affine& a) { return a.slope; },
          [x](const scalar::SmoothAbs& s) { return x / std::hypot(x, s.eps); },
      },
      kind_);
}

double ScalarFunction::second_derivative(double x) const {
  return std::visit(
      Overloaded{
          [x](const scalar::Sin&) { return -std::sin(x); },
          [x](const scalar::Cos&) { return -std::cos(x); },
          [x](const scalar::Tanh&) {
            const double t = std::tanh(x);
            return -2.0 * t * (1.0 - t * t);
          },
          [x](const scalar::Polynomial& p) {
            double acc = 0.0;
            for (std::size_t k = p.coeffs.size(); k-- > 2;) {
              acc = acc * x + static_cast<double>(k * (k - 1)) * p.coeffs[k];
            }
            return acc;
          },
          [x](const scalar::Gaussian& g) {
            const double z = (x - g.center) / g.width;
            return (z * z - 1.0) / (g.width * g.width) * std::exp(-0.5 * z * z);
          },
          [](const scalar::Affine&) { return 0.0; },
          [x](const scalar::SmoothAbs& s) {
            const double r = std::hypot(x, s.eps);
            return s.eps * s.eps / (r * r * r);
          },
      },
      kind_);
}

double ScalarFunction::lipschitz_bound() const {
  return std::visit(
      Overloaded{
          [](const scalar::Polynomial& p) {
            // sum_k k |c_k| R^(k-1) dominates |p'| on [-R, R].
            double bound = 0.0;
            for (std::size_t k = 1; k < p.coeffs.size(); ++k) {
              bound += static_cast<double>(k) * std::abs(p.coeffs[k]) *
                       std::pow(kLipschitzWindow, static_cast<double>(k - 1));
            }
            return bound;
          },
          // max |z e^{-z^2/2}| = e^{-1/2}, attained at z = 1.
          [](const scalar::Gaussian& g) { return std::exp(-0.5) / g.width; },
          [](const scalar::Affine& a) { return std::abs(a.slope); },
          [](const auto&) { return 1.0; },
      },
      kind_);
}

std::string_view ScalarFunction::name() const {
  return std::visit(Overloaded{
                        [](const scalar::Sin&) { return std::string_view("sin"); },
                        [](const scalar::Cos&) { return std::string_view("cos"); },
                        [](const scalar::Tanh&) { return std::string_view("tanh"); },
                        [](const scalar::Polynomial&) { return std::string_view("polynomial"); },
                        [](const scalar::Gaussian&) { return std::string_view("gaussian"); },
                        [](const scalar::Affine&) { return std::string_view("affine"); },
                        [](const scalar::SmoothAbs&) { return std::string_view("smooth_abs"); },
                    },
                    kind_);
}

}  // namespace wcalc
