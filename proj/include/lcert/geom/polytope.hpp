#pragma once

#include "lcert/geom/types.hpp"

#include <span>

namespace lcert::geom {

struct ChebyshevBall {
  bool feasible = false;
  Vector center;
  double radius = 0.0;  ///< capped at 1e9 for unbounded sets
};

ChebyshevBall chebyshev_ball(const HPolytope& P);

/// True when P has no interior point at radius above tol (infeasible or flat).
bool has_no_interior(const HPolytope& P, double tol);

/// Normalizes rows to unit norm, removes redundant rows and sorts them
/// lexicographically. Infeasible input yields HPolytope::empty(); flat but
/// feasible input keeps its normalized rows.
HPolytope canonicalize(const HPolytope& P, const Tolerances& tol = {});

/// Regular polygon with `facets` edges. Inscribed in the circle of `radius`
/// (vertices on the circle) unless `circumscribed`.
HPolytope regular_polygon(double radius, int facets, bool circumscribed = false);

/// max_{w in W} d'w.
double support(const VPolytope& W, const Vector& d);

/// Pontryagin difference P - W = {x : x + w in P for all w in W}. May be empty.
HPolytope erode(const HPolytope& P, const HPolytope& W, const Tolerances& tol = {});
HPolytope erode(const HPolytope& P, const VPolytope& W_vertices, const Tolerances& tol = {});

/// {x : M x in P}. Throws SingularMatrix when |det M| is below tol.singular
/// relative to the product of the column norms.
HPolytope linear_preimage(const Matrix& M, const HPolytope& P, const Tolerances& tol = {});

HPolytope intersect(const HPolytope& P, const Box& X, const Tolerances& tol = {});
HPolytope intersect(const HPolytope& P, const HPolytope& Q, const Tolerances& tol = {});

/// Vertex enumeration. Throws Unbounded or Empty.
VPolytope vrep(const HPolytope& P, const Tolerances& tol = {});
/// Facet enumeration of the convex hull of V (full-dimensional input).
HPolytope hrep(const VPolytope& V, const Tolerances& tol = {});
/// Extreme points of the convex hull of `points`.
VPolytope convex_hull(std::span<const Vector> points, const Tolerances& tol = {});

Eigen::AlignedBox<double, Eigen::Dynamic> bounding_box(const HPolytope& P, const Tolerances& tol = {});

bool contains_point(const PolyUnion& U, const Vector& x, double tol = 1e-9);

}  // namespace lcert::geom
