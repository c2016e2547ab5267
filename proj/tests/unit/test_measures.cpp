#include <doctest.h>

#include <cmath>
#include <limits>

#include "oracles.hpp"
#include "wcalc/errors.hpp"
#include "wcalc/measure.hpp"
#include "wcalc/sampling.hpp"
#include "wcalc/scalar_function.hpp"

using namespace wcalc;

TEST_CASE("dirac") {
  const DiscreteMeasure d0 = dirac(0.0);
  REQUIRE(d0.size() == 1);
  CHECK(d0.atoms()[0] == Atom{0.0, 1.0});
  CHECK(dirac(0.5).support_bound() == 0.5);
  CHECK(dirac(-3.25).total_mass() == 1.0);
  CHECK_THROWS_AS(dirac(std::numeric_limits<double>::infinity()), InvalidInput);
  CHECK_THROWS_AS(dirac(std::numeric_limits<double>::quiet_NaN()), InvalidInput);
}

TEST_CASE("construction enforces the invariants") {
  SUBCASE("sorted, merged, zero weights dropped") {
    const DiscreteMeasure m({{1.0, 0.25}, {-1.0, 0.5}, {1.0 + 1e-13, 0.25}, {0.0, 0.0}});
    REQUIRE(m.size() == 2);
    CHECK(m.atoms()[0] == Atom{-1.0, 0.5});
    CHECK(m.atoms()[1].position == 1.0);
    CHECK(m.atoms()[1].weight == 0.5);
    CHECK(m.support_bound() == 1.0);
  }
  SUBCASE("positions further apart than the tolerance stay distinct") {
    const DiscreteMeasure m({{0.0, 0.5}, {1e-11, 0.5}});
    CHECK(m.size() == 2);
  }
  SUBCASE("rejections") {
    CHECK_THROWS_AS(DiscreteMeasure({}), InvalidInput);
    CHECK_THROWS_AS(DiscreteMeasure({{0.0, 0.5}}), InvalidInput);
    CHECK_THROWS_AS(DiscreteMeasure({{0.0, 1.5}, {1.0, -0.5}}), InvalidInput);
    CHECK_THROWS_AS(DiscreteMeasure({{std::nan(""), 1.0}}), InvalidInput);
  }
  SUBCASE("normalized rescales") {
    const DiscreteMeasure m = DiscreteMeasure::normalized({{0.0, 2.0}, {1.0, 6.0}});
    CHECK(m.atoms()[0].weight == 0.25);
    CHECK(m.atoms()[1].weight == 0.75);
    CHECK_THROWS_AS(DiscreteMeasure::normalized({{0.0, 0.0}}), InvalidInput);
  }
}

TEST_CASE("mix") {
  CHECK(mix(dirac(0.0), dirac(1.0), 0.0) == dirac(0.0));
  CHECK(mix(dirac(0.0), dirac(1.0), 1.0) == dirac(1.0));
  CHECK(mix(dirac(0.0), dirac(1.0), 0.25) == DiscreteMeasure({{0.0, 0.75}, {1.0, 0.25}}));

  const DiscreteMeasure m({{-0.5, 0.2}, {0.3, 0.3}, {0.9, 0.5}});
  for (double t : {0.0, 0.1, 0.5, 0.77, 1.0}) {
    const DiscreteMeasure same = mix(m, m, t);
    REQUIRE(same.size() == m.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
      CHECK(same.atoms()[i].position == m.atoms()[i].position);
      CHECK(same.atoms()[i].weight == doctest::Approx(m.atoms()[i].weight).epsilon(1e-15));
    }
  }
  CHECK_THROWS_AS(mix(m, m, -0.1), InvalidInput);
  CHECK_THROWS_AS(mix(m, m, 1.1), InvalidInput);
}

TEST_CASE("integrate") {
  CHECK(integrate(dirac(0.0), ScalarFunction::sin()) == 0.0);
  CHECK(integrate(DiscreteMeasure({{-1.0, 0.5}, {1.0, 0.5}}), ScalarFunction::identity()) == 0.0);
  // 0.5 sin(1), direct weighted sum
  CHECK(integrate(DiscreteMeasure({{0.0, 0.5}, {1.0, 0.5}}), ScalarFunction::sin()) ==
        doctest::Approx(0.42073549240394825).epsilon(1e-15));

  SUBCASE("non-finite values are evaluation errors") {
    const auto huge = ScalarFunction::polynomial({0.0, 0.0, 1e300});
    CHECK_THROWS_AS(integrate(dirac(1e10), huge), EvaluationError);
  }
}

TEST_CASE("w1 examples") {
  CHECK(w1(dirac(0.0), dirac(1.0)) == 1.0);
  const DiscreteMeasure m({{-0.5, 0.2}, {0.3, 0.3}, {0.9, 0.5}});
  CHECK(w1(m, m) == 0.0);
  // |F_a - F_b| = 1/2 on [-1, 1]
  CHECK(w1(DiscreteMeasure({{-1.0, 0.5}, {1.0, 0.5}}), dirac(0.0)) == 1.0);
}

TEST_CASE("w1 agrees with the quantile-coupling oracle") {
  for (std::uint64_t s = 0; s < 500; ++s) {
    Rng rng(split_seed(7, s));
    const DiscreteMeasure a = random_measure(rng, 3.0, 40);
    const DiscreteMeasure b = random_measure(rng, 3.0, 40);
    const double d = w1(a, b);
    CHECK(d == doctest::Approx(testing::quantile_w1(a, b)).epsilon(1e-12));
    CHECK(d == w1(b, a));
    CHECK(d >= 0.0);
  }
}

TEST_CASE("kr_lower_bound") {
  CHECK(kr_lower_bound(dirac(1.0), dirac(0.0), ScalarFunction::identity()) == 1.0);
  const DiscreteMeasure sym({{-1.0, 0.5}, {1.0, 0.5}});
  CHECK(kr_lower_bound(sym, sym, ScalarFunction::sin()) == 0.0);

  const double lower = kr_lower_bound(sym, dirac(0.0), ScalarFunction::smooth_abs(1e-3));
  CHECK(lower <= w1(sym, dirac(0.0)));
  CHECK(lower == doctest::Approx(std::hypot(1.0, 1e-3) - 1e-3).epsilon(1e-14));

  CHECK_THROWS_AS(kr_lower_bound(sym, dirac(0.0), ScalarFunction::affine(2.0, 0.0)), InvalidInput);
  CHECK_THROWS_AS(kr_lower_bound(sym, dirac(0.0), ScalarFunction::gaussian(0.0, 0.5)),
                  InvalidInput);
}

TEST_CASE("metric properties on random triples") {
  const ScalarFunction lipschitz[] = {ScalarFunction::sin(), ScalarFunction::tanh(),
                                      ScalarFunction::smooth_abs(0.05),
                                      ScalarFunction::affine(-1.0, 2.0)};
  for (std::uint64_t s = 0; s < 300; ++s) {
    Rng rng(split_seed(11, s));
    const DiscreteMeasure a = random_measure(rng, 2.0, 12);
    const DiscreteMeasure b = random_measure(rng, 2.0, 12);
    const DiscreteMeasure c = random_measure(rng, 2.0, 12);
    CHECK(w1(a, c) <= w1(a, b) + w1(b, c) + 1e-12);
    for (const ScalarFunction& f : lipschitz) CHECK(kr_lower_bound(a, b, f) <= w1(a, b) + 1e-12);

    const double t = rng.uniform();
    CHECK(w1(mix(a, b, t), b) <= (1.0 - t) * w1(a, b) + 1e-12);

    const ScalarFunction g = ScalarFunction::cos();
    CHECK(integrate(mix(a, b, t), g) ==
          doctest::Approx((1.0 - t) * integrate(a, g) + t * integrate(b, g)).epsilon(1e-12));
  }
}

TEST_CASE("w1 scales exactly along a mixture of two diracs") {
  for (double t : {0.0, 0.125, 0.3, 0.5, 0.9, 1.0}) {
    const DiscreteMeasure a = dirac(-0.7);
    const DiscreteMeasure b = dirac(1.9);
    CHECK(w1(mix(a, b, t), b) == doctest::Approx((1.0 - t) * w1(a, b)).epsilon(1e-15));
  }
}

TEST_CASE("compensated accumulation over many atoms") {
  std::vector<Atom> atoms;
  for (int i = 0; i < 5000; ++i) atoms.push_back({i * 1e-3, 1.0});
  const DiscreteMeasure m = DiscreteMeasure::normalized(std::move(atoms));
  CHECK(std::abs(m.total_mass() - 1.0) <= 1e-15);
  // mean of 0, 1e-3, ..., 4.999 is 2.4995
  CHECK(integrate(m, ScalarFunction::identity()) == doctest::Approx(2.4995).epsilon(1e-14));
  CHECK(w1(m, dirac(2.4995)) == doctest::Approx(testing::quantile_w1(m, dirac(2.4995))).epsilon(1e-12));
}
