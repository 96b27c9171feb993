#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "stc/order.hpp"

namespace stc {

using Json = nlohmann::json;

/// Parses the algebra-spec JSON: {base_ring, degree, basis, mult_table, sigma_matrix,
/// embeddings, u} plus optional name and claims_division.  Unknown keys are rejected.
AlgebraPtr parse_algebra_spec(const Json& j);
/// A path to a JSON file, or the name of a shipped algebra.
AlgebraPtr load_algebra_spec(const std::string& path_or_name);
/// Same extension with a different u.
AlgebraPtr with_u(const AlgebraPtr& alg, const BaseElement& u);

std::vector<std::string> builtin_algebra_names();
/// Raw JSON text of a shipped algebra; empty when the name is unknown.
std::string builtin_algebra_json(const std::string& name);

/// Integers may be JSON numbers or decimal strings; an O_F element is "a+bi", [a] or [a, b].
BaseElement base_from_json(BaseRingKind kind, const Json& j);
Json base_to_json(const BaseElement& x);
OKElement ok_from_json(const ExtensionPtr& ext, const Json& j);
Json ok_to_json(const OKElement& x);
/// [[O_K coords of x_0], [O_K coords of x_1], ...].
OrderElement order_from_json(const AlgebraPtr& alg, const Json& j);
Json order_to_json(const OrderElement& x);

}  // namespace stc
