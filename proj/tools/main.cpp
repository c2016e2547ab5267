// wcalc: batch driver for the measure-calculus checks.
//
// Exit codes: 0 success, 1 a check failed, 2 invalid input. Results go to
// stdout as JSON; errors go to stderr as {"error": kind, "message": text}.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "wcalc/battery.hpp"
#include "wcalc/cylinder.hpp"
#include "wcalc/derivative.hpp"
#include "wcalc/errors.hpp"
#include "wcalc/ftc.hpp"
#include "wcalc/json_io.hpp"
#include "wcalc/parallel.hpp"
#include "wcalc/partition.hpp"
#include "wcalc/sampling.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitInvalidInput = 2;

constexpr double kDeriv2Tolerance = 1e-9;
constexpr double kFtcMismatchTolerance = 1e-5;

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw wcalc::InvalidInput("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw wcalc::InvalidInput("'" + path + "' is not valid JSON: " + e.what());
  }
}

std::string csv_field(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<json>& rows) {
  std::ofstream out(path);
  if (!out) throw wcalc::InvalidInput("cannot write '" + path + "'");
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << '\n';
  for (const json& row : rows) {
    for (std::size_t i = 0; i < header.size(); ++i) {
      out << (i ? "," : "") << csv_field(row.at(header[i]));
    }
    out << '\n';
  }
}

void emit(const json& j) { std::cout << j.dump(2) << '\n'; }

wcalc::ScalarFunction parse_function_arg(const std::string& text) {
  if (!text.empty() && text.front() == '{') {
    try {
      return wcalc::function_from_json(json::parse(text));
    } catch (const json::parse_error& e) {
      throw wcalc::InvalidInput("function argument is not valid JSON: " + std::string(e.what()));
    }
  }
  return wcalc::function_from_json(json(text));
}

// Options a config file may supply. A value given on the command line wins;
// otherwise the config file's value is used; otherwise the built-in default.
class ConfigBinder {
 public:
  template <typename T>
  CLI::Option* bind(CLI::App* sub, const std::string& flag, T& target, const std::string& help) {
    CLI::Option* opt = sub->add_option("--" + flag, target, help)->capture_default_str();
    binders_[sub].push_back({flag, opt, [&target](const json& v) { target = v.get<T>(); }});
    return opt;
  }

  void apply(const CLI::App* sub, const json& config) const {
    const auto it = binders_.find(sub);
    if (it == binders_.end()) return;
    for (const Binding& b : it->second) {
      if (b.option->count() == 0 && config.contains(b.key)) {
        try {
          b.assign(config.at(b.key));
        } catch (const json::exception& e) {
          throw wcalc::InvalidInput("config key '" + b.key + "': " + e.what());
        }
      }
    }
  }

 private:
  struct Binding {
    std::string key;
    CLI::Option* option;
    std::function<void(const json&)> assign;
  };
  std::map<const CLI::App*, std::vector<Binding>> binders_;
};

struct Common {
  std::uint64_t seed = wcalc::kDefaultSeed;
  unsigned threads = 1;
  std::string csv;
  std::string config;
};

int run_w1(const std::string& a_path, const std::string& b_path, const Common& common) {
  const auto a = wcalc::measure_from_json(read_json_file(a_path));
  const auto b = wcalc::measure_from_json(read_json_file(b_path));
  const json out = {{"w1", wcalc::w1(a, b)}};
  if (!common.csv.empty()) write_csv(common.csv, {"w1"}, {out});
  emit(out);
  return kExitOk;
}

struct DiscretizeArgs {
  std::int64_t n = 8;
  std::int64_t K = 1;
  std::string bump = "smooth_bump";
  bool sweep = false;
  std::string measure;
};

int run_discretize(const DiscretizeArgs& args, const Common& common) {
  const auto m = wcalc::measure_from_json(read_json_file(args.measure));
  const wcalc::BumpShape shape = wcalc::parse_bump_shape(args.bump);

  std::vector<json> rows;
  json last;
  bool ok = true;
  const std::int64_t first = args.sweep ? args.K + 1 : args.n;
  for (std::int64_t n = first; n <= args.n; ++n) {
    const wcalc::PartitionScheme scheme(n, args.K, shape);
    const auto grid = scheme.discretize(m);
    const double actual = wcalc::w1(m, grid);
    const bool row_ok = actual <= scheme.w1_bound() + 1e-10;
    ok = ok && row_ok;
    rows.push_back({{"n", n},
                    {"K", args.K},
                    {"w1_bound", scheme.w1_bound()},
                    {"w1_actual", actual},
                    {"atoms_out", grid.size()}});
    last = rows.back();
    last["bump"] = std::string(wcalc::to_string(shape));
    last["ok"] = row_ok;
    last["measure"] = wcalc::measure_to_json(grid);
  }
  if (!common.csv.empty()) {
    write_csv(common.csv, {"n", "K", "w1_bound", "w1_actual", "atoms_out"}, rows);
  }
  json out = last;
  if (args.sweep) {
    out["rows"] = rows;
    out["ok"] = ok;
  }
  emit(out);
  return ok ? kExitOk : kExitCheckFailed;
}

struct DawsonArgs {
  double eps = wcalc::kDefaultDawsonEps;
  double x = 0.0;
  std::string function;
  std::string measure;
};

int run_dawson(const DawsonArgs& args, const Common& common) {
  const auto f = wcalc::cylinder_from_json(read_json_file(args.function));
  const auto m = wcalc::measure_from_json(read_json_file(args.measure));
  const auto mf = wcalc::as_measure_function(f);
  const double exact = f.exact_delta(m, args.x);
  const double plain = wcalc::dawson(mf, m, args.x, args.eps);
  const double extrapolated = wcalc::dawson_extrapolated(mf, m, args.x, args.eps);
  const json out = {{"x", args.x},
                    {"eps", args.eps},
                    {"dawson", plain},
                    {"dawson_extrapolated", extrapolated},
                    {"exact_delta", exact},
                    {"abs_error_extrapolated", std::abs(extrapolated - exact)}};
  if (!common.csv.empty()) {
    write_csv(common.csv,
              {"x", "eps", "dawson", "dawson_extrapolated", "exact_delta", "abs_error_extrapolated"},
              {out});
  }
  emit(out);
  return kExitOk;
}

struct Deriv2Args {
  std::string function;
  int quad = wcalc::kDefaultQuadOrder;
  std::size_t samples = 100;
  double K = 1.0;
};

int run_deriv2(const Deriv2Args& args, const Common& common) {
  std::vector<wcalc::CylinderFunction> functions;
  if (args.function.empty()) {
    for (const auto& entry : wcalc::cylinder_battery()) functions.push_back(entry.function);
  } else {
    functions.push_back(wcalc::cylinder_from_json(read_json_file(args.function)));
  }
  if (args.samples < 1) throw wcalc::InvalidInput("--samples must be at least 1");
  if (!(args.K > 0.0)) throw wcalc::InvalidInput("--K must be positive");

  std::vector<double> residuals(args.samples);
  wcalc::parallel_for(args.samples, common.threads, [&](std::size_t i) {
    wcalc::Rng rng(wcalc::split_seed(common.seed, i));
    const auto& f = functions[i % functions.size()];
    const auto m = wcalc::random_measure(rng, args.K, 12);
    const auto mu = wcalc::random_measure(rng, args.K, 12);
    residuals[i] = wcalc::verify_deriv2(wcalc::as_measure_function(f), wcalc::lift_to_field(f), m,
                                        mu, args.quad);
  });
  wcalc::CheckReport report{"deriv2", common.seed, 0.0, 0.0, args.samples};
  for (double r : residuals) report.residual_max = std::max(report.residual_max, r);

  json out = wcalc::report_to_json(report);
  out["quad_order"] = args.quad;
  out["tolerance"] = kDeriv2Tolerance;
  out["ok"] = report.residual_max <= kDeriv2Tolerance;
  if (!common.csv.empty()) {
    write_csv(common.csv, {"check", "seed", "eps", "residual_max", "samples"}, {out});
  }
  emit(out);
  return out["ok"].get<bool>() ? kExitOk : kExitCheckFailed;
}

struct FtcArgs {
  double K = 1.0;
  double eps = wcalc::kDefaultDawsonEps;
  int quad = wcalc::kDefaultQuadOrder;
  std::size_t samples = 200;
  std::string field;
};

wcalc::FtcOptions ftc_options(double K, double eps, int quad, std::size_t samples,
                              const Common& common) {
  wcalc::FtcOptions o;
  o.K = K;
  o.eps = eps;
  o.quad_order = quad;
  o.samples = samples;
  o.seed = common.seed;
  o.threads = common.threads;
  return o;
}

const std::vector<std::string> kFtcColumns{"mismatch_max", "symmetry_max", "seed", "quad_order",
                                           "eps",          "K",            "samples", "verdict"};

int run_ftc(const FtcArgs& args, const Common& common) {
  const auto h = wcalc::field_from_json(read_json_file(args.field));
  const auto report =
      wcalc::ftc_check(h, ftc_options(args.K, args.eps, args.quad, args.samples, common));
  json out = wcalc::report_to_json(report);
  out["ok"] = report.mismatch_max <= kFtcMismatchTolerance;
  if (!common.csv.empty()) write_csv(common.csv, kFtcColumns, {out});
  emit(out);
  return out["ok"].get<bool>() ? kExitOk : kExitCheckFailed;
}

struct CounterexampleArgs {
  std::string phi = "sin";
  std::string psi = "cos";
  double K = std::numbers::pi;
  double eps = wcalc::kDefaultDawsonEps;
  int quad = wcalc::kDefaultQuadOrder;
  std::size_t samples = 200;
};

int run_counterexample(const CounterexampleArgs& args, const Common& common) {
  const auto report = wcalc::counterexample_report(
      parse_function_arg(args.phi), parse_function_arg(args.psi),
      ftc_options(args.K, args.eps, args.quad, args.samples, common));
  const json out = wcalc::report_to_json(report);
  if (!common.csv.empty()) {
    std::vector<std::string> columns = kFtcColumns;
    columns.insert(columns.end(), {"quadrature_gap_max", "dawson_gap_max", "derivative_gap_max",
                                   "symmetry_probe", "ok"});
    write_csv(common.csv, columns, {out});
  }
  emit(out);
  return report.ok ? kExitOk : kExitCheckFailed;
}

int run_sweep(const std::string& out_path, const Common& common) {
  const wcalc::BatteryOptions options{common.seed, common.threads};
  std::vector<wcalc::CriterionResult> results = wcalc::run_battery(options);
  results.push_back(wcalc::check_determinism(options, results));
  const json report = wcalc::battery_to_json(options, results);
  const std::string text = report.dump(2) + "\n";
  if (!out_path.empty()) {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw wcalc::InvalidInput("cannot write '" + out_path + "'");
    out << text;
  }
  if (!common.csv.empty()) {
    std::vector<json> rows;
    for (const auto& r : results) rows.push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass}});
    write_csv(common.csv, {"id", "name", "pass"}, rows);
  }
  std::cout << text;
  return report["all_pass"].get<bool>() ? kExitOk : kExitCheckFailed;
}

void report_error(const std::string& kind, const std::string& message) {
  std::cerr << json{{"error", kind}, {"message", message}}.dump() << '\n';
}

// --config must be read before parsing so its path is known; scan argv for it.
std::optional<std::string> find_config_path(int argc, char** argv) {
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--config" && i + 1 < argc) return std::string(argv[i + 1]);
    if (arg.rfind("--config=", 0) == 0) return arg.substr(9);
  }
  return std::nullopt;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Calculus on the Wasserstein-1 space of probability measures on the real line"};
  app.require_subcommand(1);
  app.fallthrough();

  Common common;
  ConfigBinder binder;
  binder.bind(&app, "seed", common.seed, "Root seed for every sampled check");
  binder.bind(&app, "threads", common.threads, "Worker threads (0 = one per core)");
  app.add_option("--csv", common.csv, "Also write a CSV table to this path");
  app.add_option("--config", common.config, "JSON file supplying option defaults");

  std::string w1_a;
  std::string w1_b;
  auto* w1_cmd = app.add_subcommand("w1", "Exact Wasserstein-1 distance between two measures");
  w1_cmd->add_option("a", w1_a, "First measure (JSON)")->required();
  w1_cmd->add_option("b", w1_b, "Second measure (JSON)")->required();

  DiscretizeArgs disc;
  auto* disc_cmd = app.add_subcommand("discretize", "Grid discretization and its 3/n bound");
  binder.bind(disc_cmd, "n", disc.n, "Grid resolution (n >= K + 1)");
  binder.bind(disc_cmd, "K", disc.K, "Integer support bound");
  binder.bind(disc_cmd, "bump", disc.bump, "smooth_bump or linear_hat");
  disc_cmd->add_flag("--sweep", disc.sweep, "Report every resolution from K + 1 to n");
  disc_cmd->add_option("measure", disc.measure, "Measure (JSON)")->required();

  DawsonArgs daw;
  auto* daw_cmd = app.add_subcommand("dawson", "Dawson difference quotients of a cylinder function");
  binder.bind(daw_cmd, "eps", daw.eps, "Mixture weight");
  binder.bind(daw_cmd, "x", daw.x, "Dirac location");
  daw_cmd->add_option("function", daw.function, "Cylinder function (JSON)")->required();
  daw_cmd->add_option("measure", daw.measure, "Measure (JSON)")->required();

  Deriv2Args d2;
  auto* d2_cmd = app.add_subcommand(
      "deriv2-check", "Quadrature check of F(m) - F(mu) against the exact derivative");
  binder.bind(d2_cmd, "quad", d2.quad, "Gauss-Legendre order");
  binder.bind(d2_cmd, "samples", d2.samples, "Number of seeded (m, mu) pairs");
  binder.bind(d2_cmd, "K", d2.K, "Support bound of sampled measures");
  d2_cmd->add_option("function", d2.function, "Cylinder function (JSON); default: built-in set");

  FtcArgs ftc;
  auto* ftc_cmd = app.add_subcommand("ftc-check", "Antiderivative and symmetry check of a field");
  binder.bind(ftc_cmd, "K", ftc.K, "Support bound of sampled measures");
  binder.bind(ftc_cmd, "eps", ftc.eps, "Dawson eps");
  binder.bind(ftc_cmd, "quad", ftc.quad, "Gauss-Legendre order");
  binder.bind(ftc_cmd, "samples", ftc.samples, "Number of seeded samples");
  ftc_cmd->add_option("field", ftc.field, "Derivative field (JSON)")->required();

  CounterexampleArgs cex;
  auto* cex_cmd =
      app.add_subcommand("counterexample", "Field violating the symmetry condition");
  binder.bind(cex_cmd, "phi", cex.phi, "Catalog function name or JSON");
  binder.bind(cex_cmd, "psi", cex.psi, "Catalog function name or JSON");
  binder.bind(cex_cmd, "K", cex.K, "Support bound of sampled measures");
  binder.bind(cex_cmd, "eps", cex.eps, "Dawson eps");
  binder.bind(cex_cmd, "quad", cex.quad, "Gauss-Legendre order");
  binder.bind(cex_cmd, "samples", cex.samples, "Number of seeded samples");

  std::string sweep_out;
  auto* sweep_cmd = app.add_subcommand("sweep", "Run the full acceptance battery");
  sweep_cmd->add_option("--out", sweep_out, "Also write the report to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    report_error("invalid_input", e.what());
    return kExitInvalidInput;
  }

  try {
    if (const auto path = find_config_path(argc, argv)) {
      const json config = read_json_file(*path);
      if (!config.is_object()) throw wcalc::InvalidInput("config file must hold a JSON object");
      binder.apply(&app, config);
      for (const CLI::App* sub : app.get_subcommands()) binder.apply(sub, config);
    }

    if (w1_cmd->parsed()) return run_w1(w1_a, w1_b, common);
    if (disc_cmd->parsed()) return run_discretize(disc, common);
    if (daw_cmd->parsed()) return run_dawson(daw, common);
    if (d2_cmd->parsed()) return run_deriv2(d2, common);
    if (ftc_cmd->parsed()) return run_ftc(ftc, common);
    if (cex_cmd->parsed()) return run_counterexample(cex, common);
    if (sweep_cmd->parsed()) return run_sweep(sweep_out, common);
  } catch (const wcalc::InvalidInput& e) {
    report_error("invalid_input", e.what());
    return kExitInvalidInput;
  } catch (const wcalc::EvaluationError& e) {
    report_error("evaluation_error", e.what());
    return kExitInvalidInput;
  } catch (const nlohmann::json::exception& e) {
    report_error("invalid_input", e.what());
    return kExitInvalidInput;
  }
  return kExitInvalidInput;
}
