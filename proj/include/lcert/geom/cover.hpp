#pragma once

#include "lcert/geom/polygon2d.hpp"
#include "lcert/geom/types.hpp"

#include <optional>

namespace lcert::geom {

/// A union prepared for repeated coverage and membership queries: parts keep
/// their bounding boxes and, in the plane, their vertex lists.
class IndexedUnion {
 public:
  IndexedUnion() = default;
  explicit IndexedUnion(PolyUnion U, const Tolerances& tol = {});

  const PolyUnion& polyunion() const { return u_; }
  std::size_t size() const { return u_.size(); }
  const Eigen::AlignedBox<double, Eigen::Dynamic>& bbox(std::size_t i) const { return boxes_[i]; }
  const Polygon2& polygon(std::size_t i) const { return polys_[i]; }
  bool planar() const { return planar_; }

  bool contains(const Vector& x, double tol = 1e-9) const;

  /// Index of the first part containing x, if any.
  std::optional<std::size_t> first_containing(const Vector& x, double tol = 1e-9) const;

  /// True iff inner, with every facet offset raised by eps, is covered by the
  /// union. Recursive set difference; leftovers thinner than tol.empty_radius
  /// count as empty.
  bool covers(const HPolytope& inner, double eps) const;

 private:
  bool covers_planar(const Polygon2& piece) const;
  bool covers_general(const HPolytope& piece) const;

  PolyUnion u_;
  Tolerances tol_;
  bool planar_ = false;
  std::vector<Eigen::AlignedBox<double, Eigen::Dynamic>> boxes_;
  std::vector<Polygon2> polys_;
};

/// One-shot form of IndexedUnion::covers.
bool union_covers_with_margin(const HPolytope& inner, const PolyUnion& U, double eps, const Tolerances& tol = {});

/// Inflates every facet offset by eps (in units of the row norm).
HPolytope inflate(const HPolytope& P, double eps);

}  // namespace lcert::geom
