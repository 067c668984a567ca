#include "lcert/geom/polygon2d.hpp"

#include "lcert/geom/lp.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace lcert::geom {
namespace {

double cross(const Point2& o, const Point2& a, const Point2& b) {
  return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
}

bool lex_less(const Point2& a, const Point2& b) {
  return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
}

}  // namespace

std::vector<Point2> convex_hull_2d(std::vector<Point2> pts, double tol) {
  std::sort(pts.begin(), pts.end(), lex_less);
  std::vector<Point2> uniq;
  for (const auto& p : pts)
    if (uniq.empty() || (p - uniq.back()).norm() > tol) uniq.push_back(p);
  if (uniq.size() <= 2) {
    if (uniq.size() == 2 && (uniq[0] - uniq[1]).norm() <= tol) uniq.pop_back();
    return uniq;
  }
  // Collinearity is judged relative to the edge lengths involved.
  auto turns_left = [](const Point2& o, const Point2& a, const Point2& b) {
    const double scale = (a - o).norm() * (b - o).norm();
    return cross(o, a, b) > 1e-12 * scale;
  };
  std::vector<Point2> hull(2 * uniq.size());
  std::size_t k = 0;
  for (const auto& p : uniq) {
    while (k >= 2 && !turns_left(hull[k - 2], hull[k - 1], p)) --k;
    hull[k++] = p;
  }
  for (std::size_t i = uniq.size() - 1, lower = k + 1; i-- > 0;) {
    const auto& p = uniq[i];
    while (k >= lower && !turns_left(hull[k - 2], hull[k - 1], p)) --k;
    hull[k++] = p;
  }
  hull.resize(k - 1);
  // Near-duplicate vertices can survive the lexicographic pass at the seam.
  std::vector<Point2> out;
  for (const auto& p : hull)
    if (out.empty() || (p - out.back()).norm() > tol) out.push_back(p);
  while (out.size() > 1 && (out.front() - out.back()).norm() <= tol) out.pop_back();
  return out;
}

std::vector<Point2> order_ccw(std::vector<Point2> pts, double tol) {
  if (pts.empty()) return pts;
  Point2 c = Point2::Zero();
  for (const auto& p : pts) c += p;
  c /= static_cast<double>(pts.size());
  std::sort(pts.begin(), pts.end(), [&](const Point2& a, const Point2& b) {
    return std::atan2(a.y() - c.y(), a.x() - c.x()) < std::atan2(b.y() - c.y(), b.x() - c.x());
  });
  std::vector<Point2> out;
  for (const auto& p : pts)
    if (out.empty() || (p - out.back()).norm() > tol) out.push_back(p);
  while (out.size() > 1 && (out.front() - out.back()).norm() <= tol) out.pop_back();
  return out;
}

std::optional<Polygon2> Polygon2::from_hpolytope(const HPolytope& P, double tol) {
  std::vector<Point2> normals;
  std::vector<double> offsets;
  for (int i = 0; i < P.rows(); ++i) {
    const Point2 a = P.A().row(i).transpose();
    const double nrm = a.norm();
    if (nrm < 1e-14) {
      if (P.b()(i) < -tol) return Polygon2{};
      continue;
    }
    normals.push_back(a / nrm);
    offsets.push_back(P.b()(i) / nrm);
  }
  const std::size_t m = normals.size();

  // Bounded iff the outward normals leave no angular gap of pi or more.
  bool bounded = m >= 3;
  if (bounded) {
    std::vector<double> ang(m);
    for (std::size_t i = 0; i < m; ++i) ang[i] = std::atan2(normals[i].y(), normals[i].x());
    std::sort(ang.begin(), ang.end());
    double gap = ang.front() + 2.0 * std::numbers::pi - ang.back();
    for (std::size_t i = 1; i < m; ++i) gap = std::max(gap, ang[i] - ang[i - 1]);
    bounded = gap < std::numbers::pi - 1e-12;
  }
  if (!bounded) {
    Matrix A(static_cast<Eigen::Index>(m), 2);
    Vector b(static_cast<Eigen::Index>(m));
    for (std::size_t i = 0; i < m; ++i) {
      A.row(static_cast<Eigen::Index>(i)) = normals[i].transpose();
      b(static_cast<Eigen::Index>(i)) = offsets[i];
    }
    if (m > 0 && solve_lp(Vector::Zero(2), A, b).status == LpStatus::Infeasible) return Polygon2{};
    return std::nullopt;
  }

  std::vector<Point2> candidates;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      const double det = normals[i].x() * normals[j].y() - normals[i].y() * normals[j].x();
      if (std::abs(det) < 1e-12) continue;
      const Point2 v((offsets[i] * normals[j].y() - offsets[j] * normals[i].y()) / det,
                     (normals[i].x() * offsets[j] - normals[j].x() * offsets[i]) / det);
      bool feasible = true;
      for (std::size_t k = 0; k < m && feasible; ++k)
        feasible = normals[k].dot(v) <= offsets[k] + tol;
      if (feasible) candidates.push_back(v);
    }
  }
  return Polygon2(convex_hull_2d(std::move(candidates), tol));
}

Polygon2 Polygon2::clip(const Point2& a, double b) const {
  std::vector<Point2> out;
  const std::size_t n = v_.size();
  if (n == 0) return {};
  if (n == 1) {
    if (a.dot(v_[0]) <= b) out.push_back(v_[0]);
    return Polygon2(std::move(out));
  }
  for (std::size_t i = 0; i < n; ++i) {
    const Point2& p = v_[i];
    const Point2& q = v_[(i + 1) % n];
    const double fp = a.dot(p) - b;
    const double fq = a.dot(q) - b;
    if (fp <= 0.0) out.push_back(p);
    if ((fp < 0.0 && fq > 0.0) || (fp > 0.0 && fq < 0.0)) {
      const double t = fp / (fp - fq);
      out.push_back(p + t * (q - p));
    }
    if (n == 2) break;
  }
  if (n == 2) {
    if (a.dot(v_[1]) - b <= 0.0) out.push_back(v_[1]);
  }
  // Drop exact duplicates introduced when a vertex lies on the cutting line.
  std::vector<Point2> dedup;
  for (const auto& p : out)
    if (dedup.empty() || (p - dedup.back()).norm() > 0.0) dedup.push_back(p);
  while (dedup.size() > 1 && (dedup.front() - dedup.back()).norm() == 0.0) dedup.pop_back();
  return Polygon2(std::move(dedup));
}

double Polygon2::area() const {
  double s = 0.0;
  const std::size_t n = v_.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& p = v_[i];
    const auto& q = v_[(i + 1) % n];
    s += p.x() * q.y() - q.x() * p.y();
  }
  return 0.5 * s;
}

double Polygon2::width() const {
  const std::size_t n = v_.size();
  if (n < 3) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2& p = v_[i];
    const Point2 e = v_[(i + 1) % n] - p;
    const double len = e.norm();
    if (len == 0.0) continue;
    double far = 0.0;
    for (const auto& w : v_) far = std::max(far, std::abs(cross(p, p + e, w)) / len);
    best = std::min(best, far);
  }
  return std::isfinite(best) ? best : 0.0;
}

bool Polygon2::contains(const Point2& x, double tol) const {
  const std::size_t n = v_.size();
  if (n == 0) return false;
  if (n == 1) return (x - v_[0]).norm() <= tol;
  if (n == 2) return point_segment_distance(x, {v_[0], v_[1]}) <= tol;
  for (std::size_t i = 0; i < n; ++i) {
    const Point2& p = v_[i];
    const Point2 e = v_[(i + 1) % n] - p;
    const double len = e.norm();
    if (len == 0.0) continue;
    if (cross(p, p + e, x) / len < -tol) return false;
  }
  return true;
}

Eigen::AlignedBox2d Polygon2::bbox() const {
  Eigen::AlignedBox2d box;
  for (const auto& p : v_) box.extend(p);
  return box;
}

double point_segment_distance(const Point2& x, const Segment2& s) {
  const Point2 d = s.q - s.p;
  const double len2 = d.squaredNorm();
  if (len2 == 0.0) return (x - s.p).norm();
  const double t = std::clamp((x - s.p).dot(d) / len2, 0.0, 1.0);
  return (x - (s.p + t * d)).norm();
}

double segment_segment_distance(const Segment2& s, const Segment2& t) {
  const Point2 d1 = s.q - s.p;
  const Point2 d2 = t.q - t.p;
  const double den = d1.x() * d2.y() - d1.y() * d2.x();
  if (den != 0.0) {
    const Point2 r = t.p - s.p;
    const double u = (r.x() * d2.y() - r.y() * d2.x()) / den;
    const double v = (r.x() * d1.y() - r.y() * d1.x()) / den;
    if (u >= 0.0 && u <= 1.0 && v >= 0.0 && v <= 1.0) return 0.0;
  }
  return std::min({point_segment_distance(s.p, t), point_segment_distance(s.q, t),
                   point_segment_distance(t.p, s), point_segment_distance(t.q, s)});
}

std::optional<std::pair<double, double>> clip_segment(const HPolytope& P, const Segment2& s,
                                                      const Point2& offset, double tol) {
  double t0 = 0.0;
  double t1 = 1.0;
  const Point2 p = s.p + offset;
  const Point2 d = s.q - s.p;
  for (int i = 0; i < P.rows(); ++i) {
    const Point2 a = P.A().row(i).transpose();
    const double num = P.b()(i) + tol - a.dot(p);
    const double den = a.dot(d);
    if (std::abs(den) < 1e-300) {
      if (num < 0.0) return std::nullopt;
      continue;
    }
    const double t = num / den;
    if (den > 0.0) t1 = std::min(t1, t);
    else t0 = std::max(t0, t);
    if (t0 > t1) return std::nullopt;
  }
  return std::make_pair(t0, t1);
}

}  // namespace lcert::geom
