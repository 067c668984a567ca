#include "lcert/geom/boundary.hpp"

#include "lcert/geom/polytope.hpp"
#include "lcert/geom/projection.hpp"
#include "lcert/util/error.hpp"

#include <algorithm>
#include <limits>
#include <random>

namespace lcert::geom {
namespace {

bool boxes_overlap(const Eigen::AlignedBox<double, Eigen::Dynamic>& a,
                   const Eigen::AlignedBox<double, Eigen::Dynamic>& b, double pad) {
  if (a.isEmpty() || b.isEmpty()) return false;
  return ((a.min().array() - pad) <= b.max().array()).all() && ((b.min().array() - pad) <= a.max().array()).all();
}

// Complement of a set of subintervals of [0,1].
std::vector<std::pair<double, double>> uncovered(std::vector<std::pair<double, double>> covered) {
  std::sort(covered.begin(), covered.end());
  std::vector<std::pair<double, double>> out;
  double t = 0.0;
  for (const auto& [lo, hi] : covered) {
    if (lo > t) out.emplace_back(t, lo);
    t = std::max(t, hi);
    if (t >= 1.0) break;
  }
  if (t < 1.0) out.emplace_back(t, 1.0);
  return out;
}

double segment_polygon_distance(const Segment2& s, const HPolytope& P, const Polygon2& poly) {
  if (clip_segment(P, s, Point2::Zero(), 0.0)) return 0.0;
  const auto& v = poly.vertices();
  if (v.size() == 1) return point_segment_distance(v[0], s);
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < v.size(); ++i)
    best = std::min(best, segment_segment_distance(s, {v[i], v[(i + 1) % v.size()]}));
  return best;
}

}  // namespace

std::vector<Segment2> union_boundary_2d(const IndexedUnion& U, double delta) {
  if (!U.planar()) throw Error(ErrorCode::DimensionMismatch, "union_boundary_2d needs a planar union");
  const auto& parts = U.polyunion().parts;
  std::vector<Segment2> out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    std::vector<std::size_t> near;
    for (std::size_t j = 0; j < parts.size(); ++j)
      if (j != i && boxes_overlap(U.bbox(i), U.bbox(j), 2.0 * delta)) near.push_back(j);
    const auto& v = U.polygon(i).vertices();
    if (v.size() < 2) continue;
    for (std::size_t e = 0; e < v.size(); ++e) {
      const Segment2 seg{v[e], v[(e + 1) % v.size()]};
      const Point2 d = seg.q - seg.p;
      const double len = d.norm();
      if (len <= 0.0) continue;
      const Point2 outward = Point2(d.y(), -d.x()) / len * delta;
      std::vector<std::pair<double, double>> covered;
      bool whole = false;
      for (std::size_t j : near) {
        if (auto iv = clip_segment(parts[j], seg, outward, 0.0)) {
          if (iv->first <= 0.0 && iv->second >= 1.0) {
            whole = true;
            break;
          }
          covered.push_back(*iv);
        }
      }
      if (whole) continue;
      for (const auto& [lo, hi] : uncovered(std::move(covered)))
        if ((hi - lo) * len > 1e-12) out.push_back({seg.p + lo * d, seg.p + hi * d});
      if (v.size() == 2) break;
    }
  }
  return out;
}

std::vector<Vector> union_boundary_samples(const IndexedUnion& U, int per_facet, double delta) {
  const auto& parts = U.polyunion().parts;
  std::vector<Vector> out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const HPolytope& P = parts[i];
    const VPolytope V = vrep(P);
    std::mt19937_64 rng(0x9e3779b97f4a7c15ULL + i);
    std::exponential_distribution<double> expo(1.0);
    for (int r = 0; r < P.rows(); ++r) {
      const Vector a = P.A().row(r).transpose();
      const double an = a.norm();
      std::vector<const Vector*> fv;
      for (const auto& v : V.vertices)
        if (std::abs(a.dot(v) - P.b()(r)) <= 1e-9 * std::max(1.0, an)) fv.push_back(&v);
      if (fv.empty()) continue;
      for (int s = 0; s < per_facet; ++s) {
        // Uniform weights on the simplex of facet vertices.
        Vector y = Vector::Zero(P.dim());
        double total = 0.0;
        for (const Vector* v : fv) {
          const double wgt = expo(rng);
          y += wgt * *v;
          total += wgt;
        }
        y /= total;
        const Vector probe = y + a / an * delta;
        bool inside_other = false;
        for (std::size_t j = 0; j < parts.size() && !inside_other; ++j)
          inside_other = j != i && parts[j].contains(probe, 0.0);
        if (!inside_other) out.push_back(std::move(y));
      }
    }
  }
  return out;
}

BoundaryDistance boundary_set_distance(const std::vector<Segment2>& b1, const std::vector<Segment2>& b2,
                                       const IndexedUnion& U2) {
  double best = std::numeric_limits<double>::infinity();
  bool inside = true;
  for (const auto& s : b1) {
    if (inside && !U2.contains(Vector(0.5 * (s.p + s.q)), 0.0)) inside = false;
    for (const auto& t : b2) best = std::min(best, segment_segment_distance(s, t));
  }
  if (!std::isfinite(best)) best = 0.0;
  BoundaryDistance res;
  res.nested = inside && best > 1e-12;
  res.value = res.nested ? best : 0.0;
  return res;
}

BoundaryDistance boundary_set_distance(const IndexedUnion& U1, const IndexedUnion& U2, int nsamples) {
  if (U1.planar() && U2.planar()) return boundary_set_distance(union_boundary_2d(U1), union_boundary_2d(U2), U2);
  const auto b1 = union_boundary_samples(U1, nsamples);
  const auto b2 = union_boundary_samples(U2, nsamples);
  double best = std::numeric_limits<double>::infinity();
  bool inside = true;
  for (const auto& y : b1) {
    if (inside && !U2.contains(y, 0.0)) inside = false;
    for (const auto& z : b2) best = std::min(best, (y - z).norm());
  }
  if (!std::isfinite(best)) best = 0.0;
  BoundaryDistance res;
  res.nested = inside && best > 1e-12;
  res.value = res.nested ? best : 0.0;
  return res;
}

BoundaryDistance boundary_set_distance(const PolyUnion& U1, const PolyUnion& U2, int nsamples) {
  return boundary_set_distance(IndexedUnion(U1), IndexedUnion(U2), nsamples);
}

double boundary_to_set_distance(const std::vector<Segment2>& boundary, const IndexedUnion& S) {
  double best = std::numeric_limits<double>::infinity();
  const auto& parts = S.polyunion().parts;
  for (const auto& s : boundary) {
    for (std::size_t j = 0; j < parts.size(); ++j) {
      best = std::min(best, segment_polygon_distance(s, parts[j], S.polygon(j)));
      if (best == 0.0) return 0.0;
    }
  }
  return std::isfinite(best) ? best : 0.0;
}

double boundary_to_set_distance(const IndexedUnion& U, const PolyUnion& S, int nsamples) {
  if (U.planar()) return boundary_to_set_distance(union_boundary_2d(U), IndexedUnion(S));
  double best = std::numeric_limits<double>::infinity();
  for (const auto& y : union_boundary_samples(U, nsamples)) best = std::min(best, dist_point_to_polyunion(y, S));
  return std::isfinite(best) ? best : 0.0;
}

}  // namespace lcert::geom
