#pragma once

#include <json.hpp>

#include "bentforge/cyclo.hpp"
#include "bentforge/dillon.hpp"
#include "bentforge/gf.hpp"

namespace bentforge {

// {"p": int, "n": int, "modulus": [c0, ..., cn]}
nlohmann::json to_json(const FieldSpec& spec);
FieldSpec field_spec_from_json(const nlohmann::json& j);

// {"p": int, "coeffs": [c0, ..., c_{p-2}]}
nlohmann::json to_json(const CycInt& z);
CycInt cycint_from_json(const nlohmann::json& j);

// {"field": spec, "d": int, "a": [[i, [coeffs]], ...], "b": [coeffs]}
nlohmann::json to_json(const DillonFunction& f);
DillonFunction dillon_from_json(const nlohmann::json& j);

nlohmann::json to_json(const CriterionReport& r);

} // namespace bentforge
