#pragma once

#include <json.hpp>
#include <string>
#include <string_view>

#include "boxprod/perm_group.hpp"

namespace boxprod {

/// Parses `degree; (1 2)(3 4); (1 2 3)` with 1-based points. An empty
/// generator or `()` denotes the identity. Throws ParseError.
PermGroup parse_group_spec(std::string_view text);
std::string to_group_spec(const PermGroup& G);

/// {"degree": 3, "generators": [[[1,2]], [[1,2,3]]]}, 1-based.
PermGroup group_from_json(const nlohmann::json& j);
nlohmann::json group_to_json(const PermGroup& G);

/// Accepts either the text form or a JSON object.
PermGroup parse_group_any(std::string_view text);

}  // namespace boxprod
