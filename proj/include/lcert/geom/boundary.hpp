#pragma once

#include "lcert/geom/cover.hpp"
#include "lcert/geom/polygon2d.hpp"

#include <vector>

namespace lcert::geom {

/// Boundary of a planar union as segments: every part edge minus the portions
/// whose outward offset by delta falls inside another part.
std::vector<Segment2> union_boundary_2d(const IndexedUnion& U, double delta = 1e-9);

/// Boundary samples for any dimension: per_facet deterministic points on each
/// facet, kept when their outward offset by delta leaves every other part.
std::vector<Vector> union_boundary_samples(const IndexedUnion& U, int per_facet, double delta = 1e-9);

struct BoundaryDistance {
  double value = 0.0;
  bool nested = false;  ///< false when the inner boundary is not inside the outer interior; value is then 0
};

/// Minimum distance between the boundaries of U1 and U2. Planar unions use the
/// exact boundary segments; otherwise nsamples points per facet.
BoundaryDistance boundary_set_distance(const IndexedUnion& U1, const IndexedUnion& U2, int nsamples = 64);
BoundaryDistance boundary_set_distance(const PolyUnion& U1, const PolyUnion& U2, int nsamples = 64);
/// Planar form on precomputed boundaries; U2 is the outer union.
BoundaryDistance boundary_set_distance(const std::vector<Segment2>& b1, const std::vector<Segment2>& b2,
                                       const IndexedUnion& U2);

/// min over y on the boundary of U of d(y, S).
double boundary_to_set_distance(const IndexedUnion& U, const PolyUnion& S, int nsamples = 64);
/// Planar form on a precomputed boundary.
double boundary_to_set_distance(const std::vector<Segment2>& boundary, const IndexedUnion& S);

}  // namespace lcert::geom
