#pragma once

#include <nlohmann/json.hpp>

#include "wcalc/cylinder.hpp"
#include "wcalc/derivative.hpp"
#include "wcalc/ftc.hpp"
#include "wcalc/measure.hpp"
#include "wcalc/scalar_function.hpp"

namespace wcalc {

/// Weight sums within this distance of one are rescaled on input.
inline constexpr double kJsonMassTolerance = 1e-9;

// All parsers throw InvalidInput on malformed or out-of-contract documents.

/// {"atoms": [[position, weight], ...]} with ascending positions.
nlohmann::json measure_to_json(const DiscreteMeasure& m);
DiscreteMeasure measure_from_json(const nlohmann::json& j);

/// {"kind": "sin"}, {"kind": "polynomial", "coeffs": [...]},
/// {"kind": "gaussian", "center": c, "width": w}, {"kind": "affine", "slope": a,
/// "intercept": b}, {"kind": "smooth_abs", "eps": e}; "identity" is affine(1, 0).
/// A bare string such as "sin" is accepted for parameterless kinds.
nlohmann::json function_to_json(const ScalarFunction& f);
ScalarFunction function_from_json(const nlohmann::json& j);

/// Leaf: {"inner": [...], "outer": {"kind": "linear" | "product" | "power" |
/// "sin" | "exp" | "constant" | "identity", ...}}.
/// Composites: {"scaled_sum": {"alpha": a, "f": F, "g": G}} and
/// {"product": {"f": F, "g": G}}.
CylinderFunction cylinder_from_json(const nlohmann::json& j);

/// {"kind": "lift", "cylinder": F} | {"kind": "counterexample", "phi": f, "psi": g}
/// | {"kind": "zero"} | {"kind": "moment", "phi": f}  (H(m, x) = phi(x))
/// Optional flags: "canonicalize": true, "drop_linear_delta": true.
DerivativeField field_from_json(const nlohmann::json& j);

nlohmann::json report_to_json(const CheckReport& r);
nlohmann::json report_to_json(const FtcReport& r);
nlohmann::json report_to_json(const CounterexampleReport& r);

}  // namespace wcalc
