#include "lcert/geom/cover.hpp"

#include "lcert/geom/lp.hpp"
#include "lcert/geom/polytope.hpp"
#include "lcert/util/error.hpp"

#include <utility>

namespace lcert::geom {
namespace {

constexpr double kInsideTol = 1e-12;

bool thin(const Polygon2& p, double empty_radius) {
  return p.vertices().size() < 3 || p.width() <= empty_radius;
}

Eigen::AlignedBox<double, Eigen::Dynamic> to_dynamic(const Eigen::AlignedBox2d& b) {
  Eigen::AlignedBox<double, Eigen::Dynamic> out(2);
  if (!b.isEmpty()) {
    out.extend(Vector(b.min()));
    out.extend(Vector(b.max()));
  }
  return out;
}

HPolytope stack(const HPolytope& P, const Matrix& extraA, const Vector& extrab) {
  Matrix A(P.rows() + extraA.rows(), P.dim());
  Vector b(P.rows() + extrab.size());
  A << P.A(), extraA;
  b << P.b(), extrab;
  return HPolytope(std::move(A), std::move(b));
}

}  // namespace

HPolytope inflate(const HPolytope& P, double eps) {
  if (eps == 0.0 || P.is_canonical_empty()) return P;
  Vector b = P.b();
  for (int i = 0; i < P.rows(); ++i) b(i) += eps * P.A().row(i).norm();
  return HPolytope(P.A(), std::move(b));
}

IndexedUnion::IndexedUnion(PolyUnion U, const Tolerances& tol) : u_(std::move(U)), tol_(tol) {
  planar_ = u_.dim() == 2;
  boxes_.reserve(u_.size());
  for (const auto& P : u_.parts) {
    if (planar_) {
      auto poly = Polygon2::from_hpolytope(P, tol_.membership);
      if (!poly) throw Error(ErrorCode::Unbounded, "IndexedUnion: unbounded part");
      boxes_.push_back(to_dynamic(poly->bbox()));
      polys_.push_back(std::move(*poly));
    } else {
      boxes_.push_back(bounding_box(P, tol_));
    }
  }
}

bool IndexedUnion::contains(const Vector& x, double tol) const { return first_containing(x, tol).has_value(); }

std::optional<std::size_t> IndexedUnion::first_containing(const Vector& x, double tol) const {
  for (std::size_t i = 0; i < u_.size(); ++i) {
    const auto& box = boxes_[i];
    if (box.isEmpty()) continue;
    if (((x - box.max()).array() > tol).any() || ((box.min() - x).array() > tol).any()) continue;
    if (u_.parts[i].contains(x, tol)) return i;
  }
  return std::nullopt;
}

bool IndexedUnion::covers(const HPolytope& inner, double eps) const {
  if (inner.is_canonical_empty()) return true;
  const HPolytope grown = inflate(inner, eps);
  if (planar_) {
    auto poly = Polygon2::from_hpolytope(grown, tol_.membership);
    if (!poly) throw Error(ErrorCode::Unbounded, "covers: unbounded inner set");
    if (thin(*poly, tol_.empty_radius)) return true;
    return covers_planar(*poly);
  }
  if (has_no_interior(grown, tol_.empty_radius)) return true;
  return covers_general(grown);
}

bool IndexedUnion::covers_planar(const Polygon2& start) const {
  // Pieces still to be covered, each with the first part index it may use.
  std::vector<std::pair<Polygon2, std::size_t>> todo;
  todo.emplace_back(start, 0);
  while (!todo.empty()) {
    auto [piece, first] = std::move(todo.back());
    todo.pop_back();
    const Eigen::AlignedBox2d pbox = piece.bbox();
    bool handled = false;
    for (std::size_t j = first; j < u_.size() && !handled; ++j) {
      const auto& box = boxes_[j];
      if (box.isEmpty()) continue;
      if (pbox.min().x() > box.max()(0) || pbox.max().x() < box.min()(0) || pbox.min().y() > box.max()(1) ||
          pbox.max().y() < box.min()(1))
        continue;
      const HPolytope& part = u_.parts[j];
      bool inside = true;
      for (const auto& v : piece.vertices())
        if (part.max_violation(v) > kInsideTol) {
          inside = false;
          break;
        }
      if (inside) {
        handled = true;
        break;
      }
      Polygon2 overlap = piece;
      for (int r = 0; r < part.rows() && !overlap.empty(); ++r)
        overlap = overlap.clip(part.A().row(r).transpose(), part.b()(r));
      if (thin(overlap, tol_.empty_radius)) continue;
      // piece \ part, one fragment per violated facet.
      Polygon2 rest = piece;
      for (int r = 0; r < part.rows() && !rest.empty(); ++r) {
        const Point2 a = part.A().row(r).transpose();
        const double b = part.b()(r);
        Polygon2 frag = rest.clip(-a, -b);
        if (!thin(frag, tol_.empty_radius)) todo.emplace_back(std::move(frag), j + 1);
        rest = rest.clip(a, b);
      }
      handled = true;
    }
    if (!handled) return false;
  }
  return true;
}

bool IndexedUnion::covers_general(const HPolytope& start) const {
  std::vector<std::pair<HPolytope, std::size_t>> todo;
  todo.emplace_back(start, 0);
  while (!todo.empty()) {
    auto [piece, first] = std::move(todo.back());
    todo.pop_back();
    bool handled = false;
    for (std::size_t j = first; j < u_.size() && !handled; ++j) {
      const HPolytope& part = u_.parts[j];
      bool inside = true;
      for (int r = 0; r < part.rows() && inside; ++r) {
        const LpResult res = solve_lp(part.A().row(r).transpose(), piece.A(), piece.b());
        inside = res.status == LpStatus::Optimal && res.value <= part.b()(r) + kInsideTol;
      }
      if (inside) {
        handled = true;
        break;
      }
      if (has_no_interior(stack(piece, part.A(), part.b()), tol_.empty_radius)) continue;
      HPolytope rest = piece;
      for (int r = 0; r < part.rows(); ++r) {
        const Matrix a = part.A().row(r);
        Vector b(1);
        b(0) = part.b()(r);
        HPolytope frag = stack(rest, -a, -b);
        if (!has_no_interior(frag, tol_.empty_radius)) todo.emplace_back(std::move(frag), j + 1);
        rest = stack(rest, a, b);
      }
      handled = true;
    }
    if (!handled) return false;
  }
  return true;
}

bool union_covers_with_margin(const HPolytope& inner, const PolyUnion& U, double eps, const Tolerances& tol) {
  return IndexedUnion(U, tol).covers(inner, eps);
}

}  // namespace lcert::geom
