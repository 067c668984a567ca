#pragma once

#include "lcert/geom/types.hpp"

#include <json.hpp>

namespace lcert::geom {

nlohmann::json to_json(const Vector& v);
nlohmann::json to_json(const HPolytope& P);
nlohmann::json to_json(const VPolytope& V);
nlohmann::json to_json(const PolyUnion& U);

Vector vector_from_json(const nlohmann::json& j);
Matrix matrix_from_json(const nlohmann::json& j);
HPolytope hpolytope_from_json(const nlohmann::json& j);
VPolytope vpolytope_from_json(const nlohmann::json& j);
PolyUnion polyunion_from_json(const nlohmann::json& j);

}  // namespace lcert::geom
