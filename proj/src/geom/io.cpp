#include "lcert/geom/io.hpp"

#include "lcert/util/error.hpp"

namespace lcert::geom {

using nlohmann::json;

json to_json(const Vector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

json to_json(const HPolytope& P) {
  json A = json::array();
  for (int i = 0; i < P.rows(); ++i) A.push_back(to_json(Vector(P.A().row(i).transpose())));
  return {{"A", A}, {"b", to_json(P.b())}};
}

json to_json(const VPolytope& V) {
  json verts = json::array();
  for (const auto& v : V.vertices) verts.push_back(to_json(v));
  return {{"vertices", verts}};
}

json to_json(const PolyUnion& U) {
  json parts = json::array();
  for (const auto& P : U.parts) parts.push_back(to_json(P));
  return {{"parts", parts}};
}

Vector vector_from_json(const json& j) {
  if (!j.is_array()) throw Error(ErrorCode::ConfigError, "expected a numeric array");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
  return v;
}

Matrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw Error(ErrorCode::ConfigError, "expected a nonempty array of rows");
  const std::size_t cols = j[0].size();
  Matrix M(static_cast<Eigen::Index>(j.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < j.size(); ++r) {
    if (!j[r].is_array() || j[r].size() != cols) throw Error(ErrorCode::ConfigError, "ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c)
      M(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = j[r][c].get<double>();
  }
  return M;
}

HPolytope hpolytope_from_json(const json& j) {
  if (!j.contains("A") || !j.contains("b")) throw Error(ErrorCode::ConfigError, "polytope needs A and b");
  return HPolytope(matrix_from_json(j.at("A")), vector_from_json(j.at("b")));
}

VPolytope vpolytope_from_json(const json& j) {
  VPolytope V;
  for (const auto& v : j.at("vertices")) V.vertices.push_back(vector_from_json(v));
  return V;
}

PolyUnion polyunion_from_json(const json& j) {
  PolyUnion U;
  for (const auto& p : j.at("parts")) U.parts.push_back(hpolytope_from_json(p));
  return U;
}

}  // namespace lcert::geom
