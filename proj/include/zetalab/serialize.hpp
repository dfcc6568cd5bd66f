#pragma once

#include <string>

#include <json.hpp>

#include "zetalab/composed.hpp"
#include "zetalab/zeros.hpp"

namespace zetalab {

/// Shortest round-trip decimal text with 17 significant digits.
std::string format_double(double x);

/// {q, label, values: [[num, den] | null, ...], kappa, conductor}; values are turn fractions of χ(n).
nlohmann::json character_to_json(const DirichletCharacter& chi);

/// {kind, a: "r/q", chi: {q, label}, l: [...], N, ...}; only the fields the kind uses.
nlohmann::json handle_to_json(const FunctionHandle& h);
/// Inverse of handle_to_json; validates through the factories.
FunctionHandle handle_from_json(const nlohmann::json& j);

nlohmann::json complex_to_json(Complex z);
nlohmann::json rectangle_to_json(const Rectangle& r);
nlohmann::json zero_to_json(const ZeroRecord& z);
nlohmann::json count_to_json(const CountResult& c);

}  // namespace zetalab
