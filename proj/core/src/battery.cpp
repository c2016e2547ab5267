#include "wcalc/battery.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <numbers>

#include "wcalc/ftc.hpp"
#include "wcalc/json_io.hpp"
#include "wcalc/parallel.hpp"
#include "wcalc/partition.hpp"
#include "wcalc/sampling.hpp"

namespace wcalc {
namespace {

using nlohmann::json;

// Disjoint index ranges of split_seed per criterion.
constexpr std::uint64_t stream(int criterion) {
  return static_cast<std::uint64_t>(criterion) << 40;
}

constexpr std::size_t kMaxAtoms = 12;

double max_of(const std::vector<double>& values) {
  double best = 0.0;
  for (double v : values) {
    if (std::isnan(v)) return v;
    best = std::max(best, v);
  }
  return best;
}

}  // namespace

std::vector<NamedCylinder> cylinder_battery() {
  const auto sin = ScalarFunction::sin();
  const auto cos = ScalarFunction::cos();
  const CylinderFunction sin_times_cos({sin, cos}, OuterMap::product(2));
  const CylinderFunction tanh_squared({ScalarFunction::tanh()}, OuterMap::power(2));
  const CylinderFunction sin_ridge({ScalarFunction::gaussian(0.3, 0.8), ScalarFunction::identity()},
                                   OuterMap::sin_of({0.7, -0.4}));
  const CylinderFunction exp_ridge({cos, ScalarFunction::smooth_abs(0.1)},
                                   OuterMap::exp_of({0.5, 0.3}));
  const CylinderFunction triple_product(
      {ScalarFunction::polynomial({0.1, -0.5, 0.3, 0.2}), sin, ScalarFunction::gaussian(0.0, 1.0)},
      OuterMap::product(3));

  return {
      {"moment_sin", CylinderFunction::moment(sin), false},
      {"constant", CylinderFunction::constant(1.5), false},
      {"sin_times_cos", sin_times_cos, true},
      {"tanh_squared", tanh_squared, true},
      {"sin_ridge", sin_ridge, true},
      {"exp_ridge", exp_ridge, true},
      {"triple_product", triple_product, true},
      {"scaled_sum", CylinderFunction::scaled_sum(2.0, sin_times_cos, tanh_squared), true},
      {"nested_product", CylinderFunction::product(sin_ridge, exp_ridge), true},
  };
}

CriterionResult check_discretization_bound(const BatteryOptions& options) {
  constexpr std::size_t kMeasuresPerCell = 100;
  constexpr std::int64_t kMaxN = 64;
  constexpr double kSlack = 1e-10;
  constexpr double kRuntimeBudgetSeconds = 10.0;
  const auto start = std::chrono::steady_clock::now();

  struct Cell {
    std::int64_t K;
    std::int64_t n;
    BumpShape shape;
  };
  std::vector<Cell> cells;
  for (std::int64_t K : {1, 2}) {
    for (BumpShape shape : {BumpShape::smooth_bump, BumpShape::linear_hat}) {
      for (std::int64_t n = K + 1; n <= kMaxN; ++n) cells.push_back({K, n, shape});
    }
  }

  struct CellResult {
    double excess;  // max of w1 - 3/n
    double ratio;   // max of w1 n / 3
    double mass_error;
  };
  std::vector<CellResult> results(cells.size());
  parallel_for(cells.size(), options.threads, [&](std::size_t c) {
    const Cell& cell = cells[c];
    const PartitionScheme scheme(cell.n, cell.K, cell.shape);
    const auto Kd = static_cast<double>(cell.K);
    std::vector<DiscreteMeasure> measures{dirac(Kd), dirac(-Kd),
                                          DiscreteMeasure({{-Kd, 0.5}, {Kd, 0.5}})};
    for (std::size_t i = 0; i < kMeasuresPerCell; ++i) {
      // Same measures for both bump shapes.
      Rng rng(split_seed(options.seed, stream(1) + static_cast<std::uint64_t>(cell.K) * 100000 +
                                           static_cast<std::uint64_t>(cell.n) * 1000 + i));
      measures.push_back(random_measure(rng, Kd, 24));
    }
    CellResult r{-1.0, 0.0, 0.0};
    for (const DiscreteMeasure& m : measures) {
      const DiscreteMeasure grid = scheme.discretize(m);
      const double d = w1(m, grid);
      r.excess = std::max(r.excess, d - scheme.w1_bound());
      r.ratio = std::max(r.ratio, d / scheme.w1_bound());
      r.mass_error = std::max(r.mass_error, std::abs(grid.total_mass() - 1.0));
    }
    results[c] = r;
  });

  json per_shape = json::object();
  bool pass = true;
  for (BumpShape shape : {BumpShape::smooth_bump, BumpShape::linear_hat}) {
    double excess = -1.0;
    double ratio = 0.0;
    double mass = 0.0;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (cells[c].shape != shape) continue;
      excess = std::max(excess, results[c].excess);
      ratio = std::max(ratio, results[c].ratio);
      mass = std::max(mass, results[c].mass_error);
    }
    pass = pass && excess <= kSlack && mass <= 1e-10;
    per_shape[std::string(to_string(shape))] = {
        {"max_w1_minus_bound", excess}, {"max_ratio_to_bound", ratio}, {"max_mass_error", mass}};
  }
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool in_budget = elapsed <= kRuntimeBudgetSeconds;

  return {1,
          "discretization_bound",
          pass && in_budget,
          {{"shapes", per_shape},
           {"cells", cells.size()},
           {"measures_per_cell", kMeasuresPerCell + 3},
           {"tolerance", kSlack},
           {"runtime_budget_s", kRuntimeBudgetSeconds},
           {"within_runtime_budget", in_budget}}};
}

CriterionResult check_dawson_consistency(const BatteryOptions& options) {
  constexpr std::size_t kSamples = 200;
  constexpr double kEps = 1e-3;
  constexpr double kTolerance = 1e-5;
  constexpr std::array<double, 3> kOrderEps{1e-2, 5e-3, 2.5e-3};
  constexpr double kOrderLo = 0.9;
  constexpr double kOrderHi = 1.1;

  struct Sample {
    DiscreteMeasure m;
    double x;
  };
  std::vector<Sample> samples;
  for (std::size_t i = 0; i < kSamples; ++i) {
    Rng rng(split_seed(options.seed, stream(2) + i));
    DiscreteMeasure m = random_measure(rng, 1.0, kMaxAtoms);
    const double x = rng.uniform(-1.0, 1.0);
    samples.push_back({std::move(m), x});
  }

  bool pass = true;
  json per_function = json::object();
  for (const NamedCylinder& entry : cylinder_battery()) {
    const MeasureFunction f = as_measure_function(entry.function);
    const double err = parallel_max(kSamples, options.threads, [&](std::size_t i) {
      const Sample& s = samples[i];
      return std::abs(dawson_extrapolated(f, s.m, s.x, kEps) -
                      entry.function.exact_delta(s.m, s.x));
    });
    json d = {{"max_error", err}};
    pass = pass && err <= kTolerance;

    if (entry.nontrivial_hessian) {
      std::array<double, 3> mean_error{};
      for (std::size_t e = 0; e < kOrderEps.size(); ++e) {
        const std::vector<double> errors =
            parallel_map(kSamples, options.threads, [&](std::size_t i) {
              const Sample& s = samples[i];
              return std::abs(dawson(f, s.m, s.x, kOrderEps[e]) -
                              entry.function.exact_delta(s.m, s.x));
            });
        CompensatedSum acc;
        for (double v : errors) acc += v;
        mean_error[e] = acc.value() / static_cast<double>(kSamples);
      }
      const double order_a = std::log2(mean_error[0] / mean_error[1]);
      const double order_b = std::log2(mean_error[1] / mean_error[2]);
      pass = pass && order_a >= kOrderLo && order_a <= kOrderHi && order_b >= kOrderLo &&
             order_b <= kOrderHi;
      d["mean_error"] = mean_error;
      d["observed_order"] = {order_a, order_b};
    }
    per_function[entry.name] = d;
  }
  return {2,
          "dawson_equals_linear_derivative",
          pass,
          {{"functions", per_function},
           {"samples", kSamples},
           {"eps", kEps},
           {"tolerance", kTolerance},
           {"order_eps", kOrderEps},
           {"order_range", {kOrderLo, kOrderHi}}}};
}

CriterionResult check_deriv2_identity(const BatteryOptions& options) {
  constexpr std::size_t kTriples = 100;
  constexpr int kQuad = 32;
  constexpr double kTolerance = 1e-9;
  const std::vector<NamedCylinder> battery = cylinder_battery();

  const double residual = parallel_max(kTriples, options.threads, [&](std::size_t i) {
    Rng rng(split_seed(options.seed, stream(3) + i));
    const NamedCylinder& entry = battery[i % battery.size()];
    const DiscreteMeasure m = random_measure(rng, 2.0, kMaxAtoms);
    const DiscreteMeasure mu = random_measure(rng, 2.0, kMaxAtoms);
    return verify_deriv2(as_measure_function(entry.function), lift_to_field(entry.function), m, mu,
                         kQuad);
  });
  return {3,
          "linear_derivative_identity",
          residual <= kTolerance,
          {{"residual_max", residual},
           {"triples", kTriples},
           {"quad_order", kQuad},
           {"tolerance", kTolerance}}};
}

CriterionResult check_canonical_normalization(const BatteryOptions& options) {
  constexpr std::size_t kSamples = 200;
  constexpr double kEps = 1e-3;
  constexpr double kExactTolerance = 1e-12;
  constexpr double kDawsonTolerance = 1e-5;

  bool pass = true;
  json per_function = json::object();
  for (const NamedCylinder& entry : cylinder_battery()) {
    const MeasureFunction f = as_measure_function(entry.function);
    const std::vector<double> exact = parallel_map(kSamples, options.threads, [&](std::size_t i) {
      Rng rng(split_seed(options.seed, stream(4) + i));
      const DiscreteMeasure m = random_measure(rng, 1.0, kMaxAtoms);
      return std::abs(
          integrate_with(m, [&](double x) { return entry.function.exact_delta(m, x); }));
    });
    const std::vector<double> estimated =
        parallel_map(kSamples, options.threads, [&](std::size_t i) {
          Rng rng(split_seed(options.seed, stream(4) + i));
          const DiscreteMeasure m = random_measure(rng, 1.0, kMaxAtoms);
          return std::abs(
              integrate_with(m, [&](double x) { return dawson_extrapolated(f, m, x, kEps); }));
        });
    const double exact_max = max_of(exact);
    const double estimated_max = max_of(estimated);
    pass = pass && exact_max <= kExactTolerance && estimated_max <= kDawsonTolerance;
    per_function[entry.name] = {{"exact_mass_max", exact_max},
                                {"dawson_mass_max", estimated_max}};
  }
  return {4,
          "canonical_normalization",
          pass,
          {{"functions", per_function},
           {"samples", kSamples},
           {"eps", kEps},
           {"exact_tolerance", kExactTolerance},
           {"dawson_tolerance", kDawsonTolerance}}};
}

CriterionResult check_ftc_soundness(const BatteryOptions& options) {
  constexpr double kMismatchTolerance = 1e-5;
  constexpr double kRecoveryTolerance = 1e-9;
  constexpr std::size_t kRecoverySamples = 100;

  FtcOptions ftc;
  ftc.K = 1.0;
  ftc.quad_order = 32;
  ftc.eps = 1e-3;
  ftc.samples = 200;
  ftc.seed = options.seed;
  ftc.threads = options.threads;

  bool pass = true;
  json per_function = json::object();
  const DiscreteMeasure base = dirac(0.0);
  for (const NamedCylinder& entry : cylinder_battery()) {
    const DerivativeField h = lift_to_field(entry.function);
    const FtcReport report = ftc_check(h, ftc);
    const MeasureFunction anti = antiderivative(h, ftc.quad_order);
    const double f0 = entry.function.evaluate(base);
    const double recovery = parallel_max(kRecoverySamples, options.threads, [&](std::size_t i) {
      Rng rng(split_seed(options.seed, stream(5) + i));
      const DiscreteMeasure m = random_measure(rng, ftc.K, kMaxAtoms);
      const DiscreteMeasure mu = random_measure(rng, ftc.K, kMaxAtoms);
      const double absolute = std::abs(anti(m) - (entry.function.evaluate(m) - f0));
      const double relative =
          std::abs((anti(m) - anti(mu)) - (entry.function.evaluate(m) - entry.function.evaluate(mu)));
      return std::max(absolute, relative);
    });
    pass = pass && report.mismatch_max <= kMismatchTolerance && recovery <= kRecoveryTolerance &&
           report.verdict == "derivative";
    per_function[entry.name] = {{"ftc", report_to_json(report)}, {"recovery_max", recovery}};
  }
  return {5,
          "ftc_soundness",
          pass,
          {{"functions", per_function},
           {"mismatch_tolerance", kMismatchTolerance},
           {"recovery_tolerance", kRecoveryTolerance}}};
}

CriterionResult check_counterexample(const BatteryOptions& options) {
  constexpr double kProbeExpected = -2.0;
  constexpr double kProbeTolerance = 1e-10;

  FtcOptions ftc;
  ftc.K = std::numbers::pi;
  ftc.quad_order = 32;
  ftc.eps = 1e-3;
  ftc.samples = 200;
  ftc.seed = options.seed;
  ftc.threads = options.threads;

  const CounterexampleReport report =
      counterexample_report(ScalarFunction::sin(), ScalarFunction::cos(), ftc);
  const bool probe_ok = std::abs(report.symmetry_probe - kProbeExpected) <= kProbeTolerance;
  const bool pass = report.ok && probe_ok && report.ftc.verdict == "not-a-derivative";
  return {6,
          "counterexample",
          pass,
          {{"report", report_to_json(report)},
           {"quadrature_gap_tolerance", 1e-10},
           {"dawson_gap_tolerance", 1e-5},
           {"derivative_gap_floor", 0.1},
           {"symmetry_probe_expected", kProbeExpected},
           {"symmetry_probe_tolerance", kProbeTolerance}}};
}

CriterionResult check_second_derivative_symmetry(const BatteryOptions& options) {
  constexpr std::size_t kSamples = 1000;
  constexpr double kTolerance = 1e-10;
  constexpr double kK = 2.0;

  bool pass = true;
  json per_function = json::object();
  for (const NamedCylinder& entry : cylinder_battery()) {
    if (!entry.nontrivial_hessian) continue;
    const CylinderFunction& f = entry.function;
    const DerivativeField h = lift_to_field(f);
    const std::vector<double> residuals =
        parallel_map(kSamples, options.threads, [&](std::size_t i) {
          Rng rng(split_seed(options.seed, stream(7) + i));
          const DiscreteMeasure m = random_measure(rng, kK, kMaxAtoms);
          const double x = rng.uniform(-kK, kK);
          const double y = rng.uniform(-kK, kK);
          const double exact = f.exact_delta2(m, x, y) - f.exact_delta(m, x) -
                               f.exact_delta2(m, y, x) + f.exact_delta(m, y);
          const double field = symmetry_residual(h, m, x, y).value;
          return std::max(std::abs(exact), std::abs(field));
        });
    const double worst = max_of(residuals);
    pass = pass && worst <= kTolerance;
    per_function[entry.name] = {{"residual_max", worst}};
  }
  return {7,
          "second_derivative_symmetry",
          pass,
          {{"functions", per_function}, {"samples", kSamples}, {"tolerance", kTolerance}}};
}

CriterionResult check_metric_properties(const BatteryOptions& options) {
  constexpr std::size_t kSamples = 1000;
  constexpr double kSlack = 1e-12;
  constexpr double kK = 3.0;
  const std::vector<ScalarFunction> lipschitz{
      ScalarFunction::sin(),           ScalarFunction::cos(),
      ScalarFunction::tanh(),          ScalarFunction::identity(),
      ScalarFunction::affine(-1.0, 0.3), ScalarFunction::smooth_abs(0.1),
      ScalarFunction::gaussian(0.2, 0.61)};

  const std::vector<double> kr_excess =
      parallel_map(kSamples, options.threads, [&](std::size_t i) {
        Rng rng(split_seed(options.seed, stream(8) + i));
        const DiscreteMeasure a = random_measure(rng, kK, kMaxAtoms);
        const DiscreteMeasure b = random_measure(rng, kK, kMaxAtoms);
        const double d = w1(a, b);
        double worst = -d;
        for (const ScalarFunction& f : lipschitz) {
          worst = std::max(worst, kr_lower_bound(a, b, f) - d);
          worst = std::max(worst, kr_lower_bound(b, a, f) - d);
        }
        return worst;
      });
  const std::vector<double> triangle_excess =
      parallel_map(kSamples, options.threads, [&](std::size_t i) {
        Rng rng(split_seed(options.seed, stream(8) + kSamples + i));
        const DiscreteMeasure a = random_measure(rng, kK, kMaxAtoms);
        const DiscreteMeasure b = random_measure(rng, kK, kMaxAtoms);
        const DiscreteMeasure c = random_measure(rng, kK, kMaxAtoms);
        return w1(a, c) - w1(a, b) - w1(b, c);
      });

  double kr_worst = kr_excess.front();
  double tri_worst = triangle_excess.front();
  for (double v : kr_excess) kr_worst = std::max(kr_worst, v);
  for (double v : triangle_excess) tri_worst = std::max(tri_worst, v);
  return {8,
          "metric_properties",
          kr_worst <= kSlack && tri_worst <= kSlack,
          {{"kr_minus_w1_max", kr_worst},
           {"triangle_excess_max", tri_worst},
           {"samples", kSamples},
           {"lipschitz_functions", lipschitz.size()},
           {"tolerance", kSlack}}};
}

std::vector<CriterionResult> run_battery(const BatteryOptions& options) {
  return {check_discretization_bound(options),     check_dawson_consistency(options),
          check_deriv2_identity(options),          check_canonical_normalization(options),
          check_ftc_soundness(options),            check_counterexample(options),
          check_second_derivative_symmetry(options), check_metric_properties(options)};
}

CriterionResult check_determinism(const BatteryOptions& options,
                                  const std::vector<CriterionResult>& reference) {
  BatteryOptions other = options;
  other.threads = resolve_threads(options.threads) == 1 ? 4 : 1;
  const std::vector<CriterionResult> rerun = run_battery(other);
  bool identical = rerun.size() == reference.size();
  for (std::size_t i = 0; identical && i < rerun.size(); ++i) {
    identical = criterion_to_json(rerun[i]).dump() == criterion_to_json(reference[i]).dump();
  }
  return {9, "determinism", identical, {{"identical_across_thread_counts", identical}}};
}

json criterion_to_json(const CriterionResult& r) {
  return {{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"details", r.details}};
}

json battery_to_json(const BatteryOptions& options, const std::vector<CriterionResult>& results) {
  json criteria = json::array();
  bool all = true;
  for (const CriterionResult& r : results) {
    criteria.push_back(criterion_to_json(r));
    all = all && r.pass;
  }
  return {{"seed", options.seed}, {"criteria", criteria}, {"all_pass", all}};
}

}  // namespace wcalc
