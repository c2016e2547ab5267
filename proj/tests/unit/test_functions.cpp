#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "oracles.hpp"
#include "wcalc/cylinder.hpp"
#include "wcalc/derivative.hpp"
#include "wcalc/errors.hpp"
#include "wcalc/ftc.hpp"
#include "wcalc/sampling.hpp"

using namespace wcalc;

namespace {

std::vector<ScalarFunction> catalog() {
  return {ScalarFunction::sin(),
          ScalarFunction::cos(),
          ScalarFunction::tanh(),
          ScalarFunction::identity(),
          ScalarFunction::affine(-2.5, 0.75),
          ScalarFunction::polynomial({0.1, -0.5, 0.3, 0.2}),
          ScalarFunction::gaussian(0.3, 0.8),
          ScalarFunction::smooth_abs(0.1)};
}

std::vector<CylinderFunction> nonlinear_cylinders() {
  const auto sin = ScalarFunction::sin();
  const auto cos = ScalarFunction::cos();
  const CylinderFunction sc({sin, cos}, OuterMap::product(2));
  const CylinderFunction t2({ScalarFunction::tanh()}, OuterMap::power(3));
  const CylinderFunction ridge({ScalarFunction::gaussian(0.0, 1.0), cos},
                               OuterMap::exp_of({0.4, -0.6}));
  return {sc, t2, ridge, CylinderFunction::scaled_sum(-1.5, sc, ridge),
          CylinderFunction::product(t2, ridge)};
}

}  // namespace

TEST_CASE("scalar functions: derivatives match finite differences") {
  constexpr double h = 1e-4;
  for (const ScalarFunction& f : catalog()) {
    CAPTURE(f.name());
    Rng rng(3);
    for (int i = 0; i < 200; ++i) {
      const double x = rng.uniform(-3.0, 3.0);
      const double fd = testing::five_point_difference([&](double t) { return f(t); }, x, h);
      CHECK(std::abs(f.derivative(x) - fd) <= 1e-8);
      const double fd2 =
          testing::five_point_difference([&](double t) { return f.derivative(t); }, x, h);
      CHECK(std::abs(f.second_derivative(x) - fd2) <= 1e-8);
    }
  }
}

TEST_CASE("scalar functions: Lipschitz bound dominates |f'| on [-10, 10]") {
  for (const ScalarFunction& f : catalog()) {
    CAPTURE(f.name());
    double worst = 0.0;
    for (int i = 0; i <= 200000; ++i) {
      worst = std::max(worst, std::abs(f.derivative(-10.0 + 20.0 * i / 200000.0)));
    }
    CHECK(worst <= f.lipschitz_bound() * (1.0 + 1e-12));
  }
  CHECK(ScalarFunction::smooth_abs(0.1).lipschitz_bound() == 1.0);
  CHECK(ScalarFunction::affine(-2.5, 1.0).lipschitz_bound() == 2.5);
}

TEST_CASE("scalar functions: parameter validation") {
  CHECK_THROWS_AS(ScalarFunction::gaussian(0.0, 0.0), InvalidInput);
  CHECK_THROWS_AS(ScalarFunction::smooth_abs(-1.0), InvalidInput);
  CHECK_THROWS_AS(ScalarFunction::polynomial({}), InvalidInput);
  CHECK_THROWS_AS(ScalarFunction::affine(std::nan(""), 0.0), InvalidInput);
  CHECK(ScalarFunction::smooth_abs(0.5)(0.0) == 0.0);
  CHECK(ScalarFunction::polynomial({1.0, 2.0, 3.0})(2.0) == 17.0);
}

TEST_CASE("outer map jets match finite differences") {
  const std::vector<OuterMap> maps{
      OuterMap::linear({0.5, -2.0, 1.0}, 0.25),
      OuterMap::product(3),
      OuterMap::sin_of({0.7, -0.4, 1.1}),
      OuterMap::exp_of({0.3, 0.2, -0.5}),
      OuterMap::scaled_sum(2.0, OuterMap::power(3), OuterMap::product(2)),
      OuterMap::product_of(OuterMap::sin_of({1.0}), OuterMap::exp_of({0.5, 0.5})),
  };
  constexpr double h = 1e-5;
  Rng rng(5);
  for (const OuterMap& g : maps) {
    REQUIRE(g.arity() == 3);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<double> v{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
      const Jet j = g.jet(v);
      for (std::size_t a = 0; a < 3; ++a) {
        auto shifted = [&](double delta) {
          std::vector<double> w = v;
          w[a] += delta;
          return g.jet(w);
        };
        const double grad_fd = (shifted(h).value - shifted(-h).value) / (2 * h);
        CHECK(j.gradient[a] == doctest::Approx(grad_fd).epsilon(1e-8));
        for (std::size_t b = 0; b < 3; ++b) {
          const double hess_fd = (shifted(h).gradient[b] - shifted(-h).gradient[b]) / (2 * h);
          CHECK(std::abs(j.hess(a, b) - hess_fd) <= 1e-8);
          CHECK(j.hess(a, b) == j.hess(b, a));
        }
      }
    }
  }
  CHECK(OuterMap::constant(4.0).arity() == 0);
  CHECK_THROWS_AS(OuterMap::power(-1), InvalidInput);
  CHECK_THROWS_AS((void)OuterMap::product(2).jet(std::vector<double>{1.0}), InvalidInput);
}

TEST_CASE("cylinder evaluate") {
  CHECK(CylinderFunction::moment(ScalarFunction::sin()).evaluate(dirac(0.0)) == 0.0);
  const CylinderFunction sc({ScalarFunction::sin(), ScalarFunction::cos()}, OuterMap::product(2));
  CHECK(sc.evaluate(dirac(1.0)) == doctest::Approx(0.4546487134128409).epsilon(1e-15));
  const DiscreteMeasure m({{-0.3, 0.4}, {2.0, 0.6}});
  CHECK(CylinderFunction::constant(2.5).evaluate(m) == 2.5);
  CHECK_THROWS_AS(CylinderFunction({ScalarFunction::sin()}, OuterMap::product(2)), InvalidInput);
}

TEST_CASE("exact_delta") {
  const auto sin = ScalarFunction::sin();
  const CylinderFunction f = CylinderFunction::moment(sin);
  CHECK(f.exact_delta(dirac(0.0), std::numbers::pi / 2) == 1.0);
  CHECK(CylinderFunction::constant(3.0).exact_delta(dirac(0.7), 1.2) == 0.0);

  SUBCASE("single moment: phi(x) - <phi, m>") {
    Rng rng(8);
    for (int i = 0; i < 100; ++i) {
      const DiscreteMeasure m = random_measure(rng, 2.0, 10);
      const double x = rng.uniform(-2, 2);
      CHECK(f.exact_delta(m, x) == std::sin(x) - integrate(m, sin));
    }
  }

  SUBCASE("integrates to zero against m") {
    Rng rng(9);
    for (const CylinderFunction& g : nonlinear_cylinders()) {
      for (int i = 0; i < 100; ++i) {
        const DiscreteMeasure m = random_measure(rng, 2.0, 12);
        CHECK(std::abs(integrate_with(m, [&](double x) { return g.exact_delta(m, x); })) <= 1e-12);
      }
    }
  }
}

TEST_CASE("calculus rules") {
  const CylinderFunction a({ScalarFunction::sin(), ScalarFunction::tanh()},
                           OuterMap::sin_of({0.8, 1.3}));
  const CylinderFunction b({ScalarFunction::gaussian(0.5, 0.7)}, OuterMap::power(2));
  const CylinderFunction ab = CylinderFunction::product(a, b);
  const double alpha = -1.75;
  const CylinderFunction lin = CylinderFunction::scaled_sum(alpha, a, b);
  Rng rng(21);
  for (int i = 0; i < 200; ++i) {
    const DiscreteMeasure m = random_measure(rng, 2.0, 12);
    const double x = rng.uniform(-2, 2);
    CHECK(ab.evaluate(m) == doctest::Approx(a.evaluate(m) * b.evaluate(m)).epsilon(1e-14));
    CHECK(std::abs(ab.exact_delta(m, x) - (a.evaluate(m) * b.exact_delta(m, x) +
                                           b.evaluate(m) * a.exact_delta(m, x))) <= 1e-12);
    CHECK(std::abs(lin.exact_delta(m, x) - (alpha * a.exact_delta(m, x) + b.exact_delta(m, x))) <=
          1e-12);
  }
}

TEST_CASE("exact_delta2") {
  const auto phi = ScalarFunction::cos();
  const CylinderFunction f = CylinderFunction::moment(phi);
  Rng rng(31);
  for (int i = 0; i < 50; ++i) {
    const DiscreteMeasure m = random_measure(rng, 2.0, 8);
    const double x = rng.uniform(-2, 2);
    const double y = rng.uniform(-2, 2);
    CHECK(f.exact_delta2(m, x, y) == doctest::Approx(-f.exact_delta(m, y)).epsilon(1e-14));
    CHECK(CylinderFunction::constant(1.0).exact_delta2(m, x, y) == 0.0);
  }

  SUBCASE("symmetry residual vanishes") {
    for (const CylinderFunction& g : nonlinear_cylinders()) {
      for (int i = 0; i < 1000; ++i) {
        const DiscreteMeasure m = random_measure(rng, 2.0, 12);
        const double x = rng.uniform(-2, 2);
        const double y = rng.uniform(-2, 2);
        const double r =
            g.exact_delta2(m, x, y) - g.exact_delta(m, x) - g.exact_delta2(m, y, x) + g.exact_delta(m, y);
        CHECK(std::abs(r) <= 1e-10);
      }
    }
  }

  SUBCASE("matches the Dawson quotient of m -> dF(m, x)") {
    const CylinderFunction g = nonlinear_cylinders()[4];
    for (int i = 0; i < 20; ++i) {
      const DiscreteMeasure m = random_measure(rng, 1.0, 6);
      const double x = rng.uniform(-1, 1);
      const double y = rng.uniform(-1, 1);
      const MeasureFunction dx([&](const DiscreteMeasure& mm) { return g.exact_delta(mm, x); });
      CHECK(std::abs(dawson_extrapolated(dx, m, y, 1e-3) - g.exact_delta2(m, x, y)) <= 1e-5);
    }
  }
}

TEST_CASE("lift_to_field") {
  const DerivativeField h = lift_to_field(CylinderFunction::moment(ScalarFunction::sin()));
  CHECK(h.value(dirac(0.0), std::numbers::pi / 2) == 1.0);
  CHECK(h.has_linear_delta());

  Rng rng(41);
  constexpr double step = 1e-5;
  for (const CylinderFunction& g : nonlinear_cylinders()) {
    const DerivativeField field = lift_to_field(g);
    for (int i = 0; i < 50; ++i) {
      const DiscreteMeasure m = random_measure(rng, 1.5, 12);
      const double x = rng.uniform(-1.5, 1.5);
      const double y = rng.uniform(-1.5, 1.5);
      CHECK(std::abs(field_mass(field, m)) <= 1e-12);
      const double fd =
          testing::central_difference([&](double t) { return field.value(m, t); }, x, step);
      CHECK(std::abs(field.dx(m, x) - fd) <= 1e-8);
      CHECK(std::abs(symmetry_residual(field, m, x, y).value) <= 1e-10);
      CHECK(std::abs(integrate_with(m, [&](double z) { return field.linear_delta(m, x, z); })) <=
            1e-10);
    }
  }
}
