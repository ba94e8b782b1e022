#pragma once

#include "wha/examples.hpp"

#include <json.hpp>

namespace wha::io {

using Json = nlohmann::json;

// Complex numbers are [re, im] pairs. Coefficients below 1e-14 in magnitude are written as 0.
Json to_json(cx z);
Json to_json(const Vec& v);
// Row-major nested array of a matrix.
Json to_json(const Mat& m);
Json to_json(const Report& r);

// All readers throw InputError with a path-like location on malformed input.
cx complex_from(const Json& j, const std::string& where);
Vec vector_from(const Json& j, int expected, const std::string& where);

// {"dim", "labels", "mult"[i][j][k], "unit", "star"[i][k]}
Json star_algebra_json(const StarAlgebra& a);
StarAlgebra star_algebra_from_json(const Json& j, bool check_cstar = true);

// Star algebra record plus "coproduct"[j][i * dim + k], "counit", "antipode"[i][k].
Json weak_hopf_json(const WeakHopf& w);
WeakHopf weak_hopf_from_json(const Json& j);

// {"hopf": record, "algebra": record, "action"[i][p][q]} with action[i][p][q] the coefficient of
// e_q in e_i |> e_p. The action is not verified here.
Json module_json(const ModuleAlgebra& ma);
ModuleAlgebra module_from_json(const Json& j);

// {"order", "mult"} with optional "names".
Json group_json(const FiniteGroup& g);
FiniteGroup group_from_json(const Json& j);
// {"z": |H| x |H|, "c": |G| x |H|}
Cocycle cocycle_from_json(const Json& j);
Json cocycle_json(const Cocycle& cc);

// Which record kind a parsed document holds: "module", "weak_hopf" or "star_algebra".
std::string record_kind(const Json& j);

}  // namespace wha::io
