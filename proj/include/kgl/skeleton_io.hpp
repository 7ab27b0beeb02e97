#pragma once

#include <json.hpp>
#include <string>

#include "kgl/kgraph.hpp"

namespace kgl {

using Json = nlohmann::ordered_json;

/// Skeleton file schema:
/// {"rank": k, "vertices": [id...],
///  "edges": [{"id","color","src","rng"}...],
///  "squares": [{"e","f","fp","ep"}...]}
KGraph skeleton_from_json(const Json& j);
Json skeleton_to_json(const KGraph& g);

/// {"vertex_map": {id: id}, "edge_map": {id: id}}
Automorphism automorphism_from_json(const KGraph& g, const Json& j);
Json automorphism_to_json(const KGraph& g, const Automorphism& a);

/// Colored skeleton in DOT: color 1 solid, color 2 dashed, color 3 dotted
/// (stand-in for dash-dotted), drawn source -> range.
std::string dot_export(const KGraph& g);

Json load_json_file(const std::string& path);

}  // namespace kgl
