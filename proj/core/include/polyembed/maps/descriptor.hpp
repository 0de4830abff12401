#pragma once

#include <nlohmann/json.hpp>

#include "polyembed/maps/map_node.hpp"

namespace polyembed {

/// {kind, params, domain, target, children}, recursively; shapes as literals.
nlohmann::json to_descriptor(const MapNode& m);

/// Rebuilds a map tree; replaying a descriptor reproduces evaluation
/// bit-for-bit. Throws ParseError on malformed input and the constructors'
/// errors on invalid parameters.
MapPtr map_from_descriptor(const nlohmann::json& j);

}  // namespace polyembed
