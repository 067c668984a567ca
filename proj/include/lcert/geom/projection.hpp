#pragma once

#include "lcert/geom/types.hpp"

namespace lcert::geom {

struct Projection {
  Vector point;
  double distance = 0.0;
};

/// Euclidean projection of x onto {y : A y <= b} (primal active-set QP).
/// Throws Empty for an infeasible polytope.
Projection project_point(const HPolytope& P, const Vector& x);

/// min over parts of the projection distance. Throws Precondition on an empty union.
double dist_point_to_polyunion(const Vector& x, const PolyUnion& U);

}  // namespace lcert::geom
