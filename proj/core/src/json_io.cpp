#include "wcalc/json_io.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "wcalc/errors.hpp"

namespace wcalc {
namespace {

using nlohmann::json;

double number(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number()) {
    throw InvalidInput(std::string("expected numeric field '") + key + "'");
  }
  return j.at(key).get<double>();
}

double number_or(const json& j, const char* key, double fallback) {
  return j.contains(key) ? number(j, key) : fallback;
}

std::vector<double> numbers(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array()) {
    throw InvalidInput(std::string("expected numeric array '") + key + "'");
  }
  std::vector<double> out;
  for (const json& v : j.at(key)) {
    if (!v.is_number()) throw InvalidInput(std::string("non-numeric entry in '") + key + "'");
    out.push_back(v.get<double>());
  }
  return out;
}

const json& member(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw InvalidInput(std::string("missing field '") + key + "'");
  }
  return j.at(key);
}

std::string kind_of(const json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string()) {
    throw InvalidInput("expected an object with a string 'kind'");
  }
  return j.at("kind").get<std::string>();
}

OuterMap outer_from_json(const json& j, std::size_t arity) {
  const std::string kind = kind_of(j);
  auto weights_or_ones = [&] {
    return j.is_object() && j.contains("weights") ? numbers(j, "weights")
                                                  : std::vector<double>(arity, 1.0);
  };
  if (kind == "identity") return OuterMap::linear({1.0});
  if (kind == "linear") return OuterMap::linear(weights_or_ones(), number_or(j, "constant", 0.0));
  if (kind == "product") return OuterMap::product(arity);
  if (kind == "power") {
    const double e = number(j, "exponent");
    if (e != std::floor(e) || e < 0.0 || e > 64.0) {
      throw InvalidInput("power exponent must be an integer in [0, 64]");
    }
    return OuterMap::power(static_cast<int>(e));
  }
  if (kind == "sin") return OuterMap::sin_of(weights_or_ones());
  if (kind == "exp") return OuterMap::exp_of(weights_or_ones());
  if (kind == "constant") return OuterMap::constant(number(j, "value"));
  throw InvalidInput("unknown outer map kind '" + kind + "'");
}

}  // namespace

json measure_to_json(const DiscreteMeasure& m) {
  json atoms = json::array();
  for (const Atom& a : m.atoms()) atoms.push_back(json::array({a.position, a.weight}));
  return json{{"atoms", std::move(atoms)}};
}

DiscreteMeasure measure_from_json(const json& j) {
  if (!j.is_object() || !j.contains("atoms") || !j.at("atoms").is_array()) {
    throw InvalidInput("measure must be an object with an 'atoms' array");
  }
  std::vector<Atom> atoms;
  for (const json& entry : j.at("atoms")) {
    if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() ||
        !entry[1].is_number()) {
      throw InvalidInput("each atom must be a [position, weight] pair of numbers");
    }
    const Atom a{entry[0].get<double>(), entry[1].get<double>()};
    if (!atoms.empty() && a.position < atoms.back().position) {
      throw InvalidInput("atom positions must be ascending");
    }
    atoms.push_back(a);
  }
  if (atoms.empty()) throw InvalidInput("measure needs at least one atom");
  CompensatedSum mass;
  for (const Atom& a : atoms) {
    if (!std::isfinite(a.position) || !std::isfinite(a.weight) || a.weight < 0.0) {
      throw InvalidInput("atoms need finite positions and non-negative finite weights");
    }
    mass += a.weight;
  }
  if (std::abs(mass.value() - 1.0) > kJsonMassTolerance) {
    throw InvalidInput("measure weights sum to " + std::to_string(mass.value()) +
                       ", not within 1e-9 of 1");
  }
  return DiscreteMeasure::normalized(std::move(atoms));
}

json function_to_json(const ScalarFunction& f) {
  return std::visit(
      [](const auto& k) -> json {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, scalar::Polynomial>) {
          return {{"kind", "polynomial"}, {"coeffs", k.coeffs}};
        } else if constexpr (std::is_same_v<T, scalar::Gaussian>) {
          return {{"kind", "gaussian"}, {"center", k.center}, {"width", k.width}};
        } else if constexpr (std::is_same_v<T, scalar::Affine>) {
          return {{"kind", "affine"}, {"slope", k.slope}, {"intercept", k.intercept}};
        } else if constexpr (std::is_same_v<T, scalar::SmoothAbs>) {
          return {{"kind", "smooth_abs"}, {"eps", k.eps}};
        } else if constexpr (std::is_same_v<T, scalar::Sin>) {
          return {{"kind", "sin"}};
        } else if constexpr (std::is_same_v<T, scalar::Cos>) {
          return {{"kind", "cos"}};
        } else {
          return {{"kind", "tanh"}};
        }
      },
      f.kind());
}

ScalarFunction function_from_json(const json& j) {
  const std::string kind = kind_of(j);
  if (kind == "sin") return ScalarFunction::sin();
  if (kind == "cos") return ScalarFunction::cos();
  if (kind == "tanh") return ScalarFunction::tanh();
  if (kind == "identity" || kind == "id") return ScalarFunction::identity();
  if (j.is_string()) throw InvalidInput("function kind '" + kind + "' needs parameters");
  if (kind == "polynomial") return ScalarFunction::polynomial(numbers(j, "coeffs"));
  if (kind == "gaussian") {
    return ScalarFunction::gaussian(number_or(j, "center", 0.0), number_or(j, "width", 1.0));
  }
  if (kind == "affine") {
    return ScalarFunction::affine(number_or(j, "slope", 1.0), number_or(j, "intercept", 0.0));
  }
  if (kind == "smooth_abs") return ScalarFunction::smooth_abs(number(j, "eps"));
  throw InvalidInput("unknown function kind '" + kind + "'");
}

CylinderFunction cylinder_from_json(const json& j) {
  if (!j.is_object()) throw InvalidInput("cylinder function must be a JSON object");
  if (j.contains("scaled_sum")) {
    const json& s = j.at("scaled_sum");
    return CylinderFunction::scaled_sum(number_or(s, "alpha", 1.0), cylinder_from_json(member(s, "f")),
                                        cylinder_from_json(member(s, "g")));
  }
  if (j.contains("product")) {
    const json& p = j.at("product");
    return CylinderFunction::product(cylinder_from_json(member(p, "f")),
                                     cylinder_from_json(member(p, "g")));
  }
  if (!j.contains("inner") || !j.at("inner").is_array() || !j.contains("outer")) {
    throw InvalidInput("cylinder function needs 'inner' and 'outer'");
  }
  std::vector<ScalarFunction> inner;
  for (const json& f : j.at("inner")) inner.push_back(function_from_json(f));
  OuterMap outer = outer_from_json(j.at("outer"), inner.size());
  return CylinderFunction(std::move(inner), std::move(outer));
}

DerivativeField field_from_json(const json& j) {
  const std::string kind = kind_of(j);
  DerivativeField h;
  if (kind == "lift") {
    if (!j.contains("cylinder")) throw InvalidInput("lift field needs a 'cylinder'");
    h = lift_to_field(cylinder_from_json(j.at("cylinder")));
  } else if (kind == "counterexample") {
    if (!j.contains("phi") || !j.contains("psi")) {
      throw InvalidInput("counterexample field needs 'phi' and 'psi'");
    }
    h = counterexample_field(function_from_json(j.at("phi")), function_from_json(j.at("psi")));
  } else if (kind == "zero") {
    h = zero_field();
  } else if (kind == "moment") {
    if (!j.contains("phi")) throw InvalidInput("moment field needs 'phi'");
    const ScalarFunction phi = function_from_json(j.at("phi"));
    h.value = [phi](const DiscreteMeasure&, double x) { return phi(x); };
    h.dx = [phi](const DiscreteMeasure&, double x) { return phi.derivative(x); };
    h.linear_delta = [](const DiscreteMeasure&, double, double) { return 0.0; };
  } else {
    throw InvalidInput("unknown field kind '" + kind + "'");
  }
  if (j.is_object() && j.value("canonicalize", false)) h = canonicalize(h);
  if (j.is_object() && j.value("drop_linear_delta", false)) h.linear_delta = nullptr;
  return h;
}

json report_to_json(const CheckReport& r) {
  return {{"check", r.check},
          {"seed", r.seed},
          {"eps", r.eps},
          {"residual_max", r.residual_max},
          {"samples", r.samples}};
}

json report_to_json(const FtcReport& r) {
  return {{"mismatch_max", r.mismatch_max},
          {"symmetry_max", r.symmetry_max},
          {"symmetry_mode", r.symmetry_estimated ? "estimated" : "exact"},
          {"seed", r.seed},
          {"quad_order", r.quad_order},
          {"eps", r.eps},
          {"K", r.K},
          {"samples", r.samples},
          {"verdict", r.verdict}};
}

json report_to_json(const CounterexampleReport& r) {
  json j = report_to_json(r.ftc);
  j["quadrature_gap_max"] = r.quadrature_gap_max;
  j["dawson_gap_max"] = r.dawson_gap_max;
  j["derivative_gap_max"] = r.derivative_gap_max;
  j["symmetry_probe"] = r.symmetry_probe;
  j["mismatch_threshold"] = r.mismatch_threshold;
  j["ok"] = r.ok;
  return j;
}

}  // namespace wcalc
