#pragma once

#include "lcert/geom/types.hpp"

#include <optional>
#include <vector>

namespace lcert::geom {

using Point2 = Eigen::Vector2d;

struct Segment2 {
  Point2 p;
  Point2 q;
};

/// Convex polygon with counter-clockwise vertices. Used as the fast path for
/// planar polytopes; an empty vertex list is the empty set.
class Polygon2 {
 public:
  Polygon2() = default;
  explicit Polygon2(std::vector<Point2> ccw_vertices) : v_(std::move(ccw_vertices)) {}

  /// Exact vertex enumeration of a bounded 2-D H-polytope. Returns nullopt when
  /// the polytope is unbounded. Infeasible input yields an empty polygon.
  static std::optional<Polygon2> from_hpolytope(const HPolytope& P, double tol);

  const std::vector<Point2>& vertices() const { return v_; }
  bool empty() const { return v_.empty(); }

  /// Keep the part with a'x <= b.
  Polygon2 clip(const Point2& a, double b) const;

  double area() const;
  /// Minimum width over all directions (0 for points and segments).
  double width() const;
  bool contains(const Point2& x, double tol) const;
  Eigen::AlignedBox2d bbox() const;

 private:
  std::vector<Point2> v_;
};

/// Sorts points counter-clockwise around their centroid and removes near-duplicates.
std::vector<Point2> order_ccw(std::vector<Point2> pts, double tol);

/// Andrew's monotone chain; collinear and interior points are dropped.
std::vector<Point2> convex_hull_2d(std::vector<Point2> pts, double tol);

double point_segment_distance(const Point2& x, const Segment2& s);
double segment_segment_distance(const Segment2& s, const Segment2& t);

/// Parameter interval [t0, t1] of the points p + t (q - p) + offset, t in [0,1],
/// that satisfy A y <= b + tol; empty optional when the segment misses the polytope.
std::optional<std::pair<double, double>> clip_segment(const HPolytope& P, const Segment2& s,
                                                      const Point2& offset, double tol);

}  // namespace lcert::geom
