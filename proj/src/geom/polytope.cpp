#include "lcert/geom/polytope.hpp"

#include "lcert/geom/lp.hpp"
#include "lcert/geom/polygon2d.hpp"
#include "lcert/util/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace lcert::geom {

// ---------------------------------------------------------------------------
// Basic types

HPolytope::HPolytope(Matrix A, Vector b) : A_(std::move(A)), b_(std::move(b)) {
  if (A_.rows() != b_.size())
    throw Error(ErrorCode::DimensionMismatch, "HPolytope: A has " + std::to_string(A_.rows()) +
                                                  " rows but b has " + std::to_string(b_.size()));
}

HPolytope HPolytope::empty(int dim) {
  Matrix A = Matrix::Zero(1, dim);
  Vector b(1);
  b(0) = -1.0;
  return HPolytope(std::move(A), std::move(b));
}

bool HPolytope::is_canonical_empty() const {
  return rows() == 1 && A_.row(0).isZero(0.0) && b_(0) < 0.0;
}

bool HPolytope::contains(const Vector& x, double tol) const {
  if (rows() == 0) return true;
  return ((A_ * x - b_).array() <= tol).all();
}

double HPolytope::max_violation(const Vector& x) const {
  if (rows() == 0) return -std::numeric_limits<double>::infinity();
  return (A_ * x - b_).maxCoeff();
}

Box::Box(Vector lo, Vector hi) : lower(std::move(lo)), upper(std::move(hi)) {
  if (lower.size() != upper.size()) throw Error(ErrorCode::DimensionMismatch, "Box bounds differ in size");
  if (((upper - lower).array() < 0.0).any()) throw Error(ErrorCode::Precondition, "Box lower > upper");
}

bool Box::contains(const Vector& x, double tol) const {
  return ((x - upper).array() <= tol).all() && ((lower - x).array() <= tol).all();
}

HPolytope Box::to_hpolytope() const {
  const int n = dim();
  Matrix A = Matrix::Zero(2 * n, n);
  Vector b(2 * n);
  for (int i = 0; i < n; ++i) {
    A(i, i) = 1.0;
    b(i) = upper(i);
    A(n + i, i) = -1.0;
    b(n + i) = -lower(i);
  }
  return HPolytope(std::move(A), std::move(b));
}

std::vector<Vector> Box::corners() const {
  const int n = dim();
  std::vector<Vector> out;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    Vector c(n);
    for (int i = 0; i < n; ++i) c(i) = (mask >> i) & 1u ? upper(i) : lower(i);
    out.push_back(std::move(c));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Helpers

namespace {

struct NormalizedRows {
  Matrix A;
  Vector b;
  bool infeasible = false;
};

NormalizedRows normalize_rows(const HPolytope& P, double tol) {
  const int n = P.dim();
  std::vector<std::pair<Vector, double>> rows;
  NormalizedRows out;
  for (int i = 0; i < P.rows(); ++i) {
    Vector a = P.A().row(i).transpose();
    const double nrm = a.norm();
    if (nrm < 1e-14) {
      if (P.b()(i) < -tol) out.infeasible = true;
      continue;
    }
    rows.emplace_back(a / nrm, P.b()(i) / nrm);
  }
  // Parallel duplicates: keep the tighter offset.
  std::vector<bool> drop(rows.size(), false);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (drop[i]) continue;
    for (std::size_t j = i + 1; j < rows.size(); ++j) {
      if (drop[j]) continue;
      if ((rows[i].first - rows[j].first).cwiseAbs().maxCoeff() <= 1e-12) {
        rows[i].second = std::min(rows[i].second, rows[j].second);
        drop[j] = true;
      }
    }
  }
  std::size_t kept = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) kept += drop[i] ? 0 : 1;
  out.A.resize(static_cast<Eigen::Index>(kept), n);
  out.b.resize(static_cast<Eigen::Index>(kept));
  Eigen::Index r = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (drop[i]) continue;
    out.A.row(r) = rows[i].first.transpose();
    out.b(r) = rows[i].second;
    ++r;
  }
  return out;
}

HPolytope sorted_rows(const Matrix& A, const Vector& b, const std::vector<int>& keep) {
  std::vector<int> order = keep;
  std::sort(order.begin(), order.end(), [&](int i, int j) {
    for (Eigen::Index c = 0; c < A.cols(); ++c) {
      if (A(i, c) != A(j, c)) return A(i, c) < A(j, c);
    }
    return b(i) < b(j);
  });
  Matrix As(static_cast<Eigen::Index>(order.size()), A.cols());
  Vector bs(static_cast<Eigen::Index>(order.size()));
  for (std::size_t r = 0; r < order.size(); ++r) {
    As.row(static_cast<Eigen::Index>(r)) = A.row(order[r]);
    bs(static_cast<Eigen::Index>(r)) = b(order[r]);
  }
  return HPolytope(std::move(As), std::move(bs));
}

std::vector<int> all_rows(Eigen::Index m) {
  std::vector<int> v(static_cast<std::size_t>(m));
  for (Eigen::Index i = 0; i < m; ++i) v[static_cast<std::size_t>(i)] = static_cast<int>(i);
  return v;
}

// Calls f(indices) for every k-subset of {0..m-1} in lexicographic order.
template <class F>
void for_each_subset(int m, int k, F&& f) {
  if (k > m || k <= 0) return;
  std::vector<int> idx(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
  while (true) {
    f(idx);
    int i = k - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == m - k + i) --i;
    if (i < 0) return;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
}

bool is_bounded_lp(const Matrix& A, const Vector& b) {
  const Eigen::Index n = A.cols();
  for (Eigen::Index i = 0; i < n; ++i) {
    for (double s : {1.0, -1.0}) {
      Vector c = Vector::Zero(n);
      c(i) = s;
      if (solve_lp(c, A, b).status == LpStatus::Unbounded) return false;
    }
  }
  return true;
}

void push_unique(std::vector<Vector>& pts, const Vector& p, double tol) {
  for (const auto& q : pts)
    if ((q - p).norm() <= tol) return;
  pts.push_back(p);
}

}  // namespace

// ---------------------------------------------------------------------------
// Chebyshev ball / emptiness

ChebyshevBall chebyshev_ball(const HPolytope& P) {
  const int n = P.dim();
  const int m = P.rows();
  constexpr double kCap = 1e9;
  Matrix A = Matrix::Zero(m + 2, n + 1);
  Vector b = Vector::Zero(m + 2);
  for (int i = 0; i < m; ++i) {
    A.row(i).head(n) = P.A().row(i);
    A(i, n) = P.A().row(i).norm();
    b(i) = P.b()(i);
  }
  A(m, n) = -1.0;  // r >= 0
  A(m + 1, n) = 1.0;
  b(m + 1) = kCap;
  Vector c = Vector::Zero(n + 1);
  c(n) = 1.0;
  const LpResult res = solve_lp(c, A, b);
  ChebyshevBall ball;
  if (res.status != LpStatus::Optimal) return ball;
  ball.feasible = true;
  ball.center = res.x.head(n);
  ball.radius = res.x(n);
  return ball;
}

bool has_no_interior(const HPolytope& P, double tol) {
  if (P.is_canonical_empty()) return true;
  if (P.dim() == 2) {
    if (auto poly = Polygon2::from_hpolytope(P, 1e-12)) return poly->width() <= 2.0 * tol;
  }
  const ChebyshevBall ball = chebyshev_ball(P);
  return !ball.feasible || ball.radius <= tol;
}

// ---------------------------------------------------------------------------
// Canonical form

HPolytope canonicalize(const HPolytope& P, const Tolerances& tol) {
  const int n = P.dim();
  NormalizedRows nr = normalize_rows(P, tol.membership);
  if (nr.infeasible) return HPolytope::empty(n);
  const Eigen::Index m = nr.A.rows();
  if (m == 0) return HPolytope(nr.A, nr.b);

  if (n == 2) {
    const HPolytope Q(nr.A, nr.b);
    if (auto poly = Polygon2::from_hpolytope(Q, tol.redundancy)) {
      const auto& v = poly->vertices();
      if (v.empty()) return HPolytope::empty(n);
      if (v.size() < 3) return sorted_rows(nr.A, nr.b, all_rows(m));
      std::vector<int> keep;
      for (std::size_t k = 0; k < v.size(); ++k) {
        const Point2& p = v[k];
        const Point2& q = v[(k + 1) % v.size()];
        int best = -1;
        double best_res = std::numeric_limits<double>::infinity();
        for (Eigen::Index i = 0; i < m; ++i) {
          const Point2 a = nr.A.row(i).transpose();
          const double res = std::max(std::abs(a.dot(p) - nr.b(i)), std::abs(a.dot(q) - nr.b(i)));
          if (res < best_res) {
            best_res = res;
            best = static_cast<int>(i);
          }
        }
        if (best >= 0 && std::find(keep.begin(), keep.end(), best) == keep.end()) keep.push_back(best);
      }
      return sorted_rows(nr.A, nr.b, keep);
    }
  }

  if (solve_lp(Vector::Zero(n), nr.A, nr.b).status == LpStatus::Infeasible) return HPolytope::empty(n);

  std::vector<bool> removed(static_cast<std::size_t>(m), false);
  for (Eigen::Index i = 0; i < m; ++i) {
    // Maximize a_i x over the other surviving rows, capped at b_i + 1.
    std::vector<int> rows;
    for (Eigen::Index j = 0; j < m; ++j)
      if (j != i && !removed[static_cast<std::size_t>(j)]) rows.push_back(static_cast<int>(j));
    Matrix A(static_cast<Eigen::Index>(rows.size()) + 1, n);
    Vector b(static_cast<Eigen::Index>(rows.size()) + 1);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      A.row(static_cast<Eigen::Index>(r)) = nr.A.row(rows[r]);
      b(static_cast<Eigen::Index>(r)) = nr.b(rows[r]);
    }
    A.row(A.rows() - 1) = nr.A.row(i);
    b(b.size() - 1) = nr.b(i) + 1.0;
    const LpResult res = solve_lp(nr.A.row(i).transpose(), A, b);
    if (res.status == LpStatus::Optimal && res.value <= nr.b(i) + tol.redundancy)
      removed[static_cast<std::size_t>(i)] = true;
  }
  std::vector<int> keep;
  for (Eigen::Index i = 0; i < m; ++i)
    if (!removed[static_cast<std::size_t>(i)]) keep.push_back(static_cast<int>(i));
  return sorted_rows(nr.A, nr.b, keep);
}

HPolytope regular_polygon(double radius, int facets, bool circumscribed) {
  if (facets < 3) throw Error(ErrorCode::Precondition, "regular_polygon needs at least 3 facets");
  if (!(radius > 0.0)) throw Error(ErrorCode::Precondition, "regular_polygon needs a positive radius");
  // Facet normals at angles 2*pi*(i + 1/2)/m put vertices at 2*pi*i/m.
  const double apothem = circumscribed ? radius : radius * std::cos(std::numbers::pi / facets);
  Matrix A(facets, 2);
  Vector b(facets);
  for (int i = 0; i < facets; ++i) {
    const double th = 2.0 * std::numbers::pi * (i + 0.5) / facets;
    A(i, 0) = std::cos(th);
    A(i, 1) = std::sin(th);
    b(i) = apothem;
  }
  return canonicalize(HPolytope(std::move(A), std::move(b)));
}

// ---------------------------------------------------------------------------
// Set operations

double support(const VPolytope& W, const Vector& d) {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& w : W.vertices) best = std::max(best, d.dot(w));
  return best;
}

HPolytope erode(const HPolytope& P, const VPolytope& Wv, const Tolerances& tol) {
  if (P.is_canonical_empty()) return P;
  Vector b = P.b();
  for (int i = 0; i < P.rows(); ++i) b(i) -= support(Wv, P.A().row(i).transpose());
  return canonicalize(HPolytope(P.A(), std::move(b)), tol);
}

HPolytope erode(const HPolytope& P, const HPolytope& W, const Tolerances& tol) {
  return erode(P, vrep(W, tol), tol);
}

HPolytope linear_preimage(const Matrix& M, const HPolytope& P, const Tolerances& tol) {
  if (M.rows() != M.cols() || M.cols() != P.dim())
    throw Error(ErrorCode::DimensionMismatch, "linear_preimage: matrix and polytope dimensions differ");
  double scale = 1.0;
  for (Eigen::Index j = 0; j < M.cols(); ++j) scale *= M.col(j).norm();
  if (std::abs(M.determinant()) <= tol.singular * scale)
    throw Error(ErrorCode::SingularMatrix, "linear_preimage: |det M| below relative threshold");
  if (P.is_canonical_empty()) return P;
  return canonicalize(HPolytope(P.A() * M, P.b()), tol);
}

HPolytope intersect(const HPolytope& P, const HPolytope& Q, const Tolerances& tol) {
  if (P.dim() != Q.dim()) throw Error(ErrorCode::DimensionMismatch, "intersect: dimensions differ");
  Matrix A(P.rows() + Q.rows(), P.dim());
  Vector b(P.rows() + Q.rows());
  A << P.A(), Q.A();
  b << P.b(), Q.b();
  return canonicalize(HPolytope(std::move(A), std::move(b)), tol);
}

HPolytope intersect(const HPolytope& P, const Box& X, const Tolerances& tol) {
  return intersect(P, X.to_hpolytope(), tol);
}

// ---------------------------------------------------------------------------
// Representations

VPolytope vrep(const HPolytope& P, const Tolerances& tol) {
  const int n = P.dim();
  if (P.is_canonical_empty()) throw Error(ErrorCode::Empty, "vrep of an empty polytope");
  if (n == 2) {
    auto poly = Polygon2::from_hpolytope(P, tol.membership);
    if (!poly) throw Error(ErrorCode::Unbounded, "vrep of an unbounded polytope");
    if (poly->empty()) throw Error(ErrorCode::Empty, "vrep of an empty polytope");
    VPolytope V;
    for (const auto& p : poly->vertices()) V.vertices.emplace_back(p);
    return V;
  }
  NormalizedRows nr = normalize_rows(P, tol.membership);
  if (nr.infeasible) throw Error(ErrorCode::Empty, "vrep of an empty polytope");
  if (solve_lp(Vector::Zero(n), nr.A, nr.b).status == LpStatus::Infeasible)
    throw Error(ErrorCode::Empty, "vrep of an empty polytope");
  if (!is_bounded_lp(nr.A, nr.b)) throw Error(ErrorCode::Unbounded, "vrep of an unbounded polytope");

  VPolytope V;
  const int m = static_cast<int>(nr.A.rows());
  for_each_subset(m, n, [&](const std::vector<int>& idx) {
    Matrix S(n, n);
    Vector r(n);
    for (int k = 0; k < n; ++k) {
      S.row(k) = nr.A.row(idx[static_cast<std::size_t>(k)]);
      r(k) = nr.b(idx[static_cast<std::size_t>(k)]);
    }
    Eigen::FullPivLU<Matrix> lu(S);
    if (lu.rank() < n) return;
    const Vector x = lu.solve(r);
    if (((nr.A * x - nr.b).array() <= tol.membership).all()) push_unique(V.vertices, x, 1e-9);
  });
  if (V.vertices.empty()) throw Error(ErrorCode::Empty, "vrep found no vertices");
  return V;
}

HPolytope hrep(const VPolytope& V, const Tolerances& tol) {
  if (V.empty()) throw Error(ErrorCode::Empty, "hrep of an empty vertex set");
  const int n = V.dim();
  if (n == 2) {
    std::vector<Point2> pts;
    for (const auto& v : V.vertices) pts.emplace_back(v(0), v(1));
    const auto hull = convex_hull_2d(std::move(pts), 1e-12);
    if (hull.size() <= 2) {
      // Point or segment: describe it by its supporting lines and end caps.
      const Point2 p = hull.front();
      const Point2 q = hull.back();
      Point2 d = q - p;
      if (d.norm() == 0.0) d = Point2(1.0, 0.0);
      d.normalize();
      const Point2 nrm(-d.y(), d.x());
      Matrix A(4, 2);
      Vector b(4);
      A.row(0) = nrm.transpose();
      b(0) = nrm.dot(p);
      A.row(1) = -nrm.transpose();
      b(1) = -nrm.dot(p);
      A.row(2) = d.transpose();
      b(2) = d.dot(q);
      A.row(3) = -d.transpose();
      b(3) = -d.dot(p);
      return HPolytope(std::move(A), std::move(b));
    }
    Matrix A(static_cast<Eigen::Index>(hull.size()), 2);
    Vector b(static_cast<Eigen::Index>(hull.size()));
    for (std::size_t k = 0; k < hull.size(); ++k) {
      const Point2 e = hull[(k + 1) % hull.size()] - hull[k];
      const Point2 nrm = Point2(e.y(), -e.x()).normalized();
      A.row(static_cast<Eigen::Index>(k)) = nrm.transpose();
      b(static_cast<Eigen::Index>(k)) = nrm.dot(hull[k]);
    }
    return canonicalize(HPolytope(std::move(A), std::move(b)), tol);
  }
  if (n == 1) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const auto& v : V.vertices) {
      lo = std::min(lo, v(0));
      hi = std::max(hi, v(0));
    }
    Matrix A(2, 1);
    A << 1.0, -1.0;
    Vector b(2);
    b << hi, -lo;
    return HPolytope(std::move(A), std::move(b));
  }

  // General dimension: every n-subset spanning a supporting hyperplane is a facet.
  const auto& pts = V.vertices;
  const int N = static_cast<int>(pts.size());
  std::vector<std::pair<Vector, double>> facets;
  for_each_subset(N, n, [&](const std::vector<int>& idx) {
    Matrix D(n - 1, n);
    for (int k = 1; k < n; ++k) D.row(k - 1) = (pts[idx[k]] - pts[idx[0]]).transpose();
    Eigen::FullPivLU<Matrix> lu(D);
    if (lu.rank() < n - 1) return;
    Vector nrm = lu.kernel().col(0).normalized();
    double off = nrm.dot(pts[idx[0]]);
    double lo = 0.0;
    double hi = 0.0;
    for (const auto& p : pts) {
      const double s = nrm.dot(p) - off;
      lo = std::min(lo, s);
      hi = std::max(hi, s);
    }
    if (hi > 1e-9 && lo < -1e-9) return;
    if (hi > 1e-9) {
      nrm = -nrm;
      off = -off;
    }
    for (const auto& f : facets)
      if ((f.first - nrm).norm() <= 1e-9 && std::abs(f.second - off) <= 1e-9) return;
    facets.emplace_back(nrm, off);
  });
  if (facets.empty()) throw Error(ErrorCode::Precondition, "hrep needs a full-dimensional vertex set");
  Matrix A(static_cast<Eigen::Index>(facets.size()), n);
  Vector b(static_cast<Eigen::Index>(facets.size()));
  for (std::size_t k = 0; k < facets.size(); ++k) {
    A.row(static_cast<Eigen::Index>(k)) = facets[k].first.transpose();
    b(static_cast<Eigen::Index>(k)) = facets[k].second;
  }
  return canonicalize(HPolytope(std::move(A), std::move(b)), tol);
}

VPolytope convex_hull(std::span<const Vector> points, const Tolerances& tol) {
  VPolytope V;
  if (points.empty()) return V;
  const int n = static_cast<int>(points.front().size());
  if (n == 2) {
    std::vector<Point2> pts;
    pts.reserve(points.size());
    for (const auto& p : points) pts.emplace_back(p(0), p(1));
    for (const auto& p : convex_hull_2d(std::move(pts), 1e-12)) V.vertices.emplace_back(p);
    return V;
  }
  if (n == 1) {
    auto [lo, hi] = std::minmax_element(points.begin(), points.end(),
                                        [](const Vector& a, const Vector& b) { return a(0) < b(0); });
    V.vertices.push_back(*lo);
    if ((*hi - *lo).norm() > 0.0) V.vertices.push_back(*hi);
    return V;
  }
  // A point is extreme iff it is not a convex combination of the others.
  std::vector<Vector> uniq;
  for (const auto& p : points) push_unique(uniq, p, 1e-12);
  const int N = static_cast<int>(uniq.size());
  for (int i = 0; i < N; ++i) {
    if (N == 1) {
      V.vertices.push_back(uniq[0]);
      break;
    }
    const int k = N - 1;
    Matrix A = Matrix::Zero(k + 2 + 2 * n, k);
    Vector b = Vector::Zero(k + 2 + 2 * n);
    A.topRows(k) = -Matrix::Identity(k, k);
    A.row(k).setOnes();
    b(k) = 1.0;
    A.row(k + 1).setConstant(-1.0);
    b(k + 1) = -1.0;
    int col = 0;
    for (int j = 0; j < N; ++j) {
      if (j == i) continue;
      A.block(k + 2, col, n, 1) = uniq[j];
      A.block(k + 2 + n, col, n, 1) = -uniq[j];
      ++col;
    }
    b.segment(k + 2, n) = uniq[i].array() + tol.membership;
    b.segment(k + 2 + n, n) = -uniq[i].array() + tol.membership;
    if (solve_lp(Vector::Zero(k), A, b).status == LpStatus::Infeasible) V.vertices.push_back(uniq[i]);
  }
  return V;
}

Eigen::AlignedBox<double, Eigen::Dynamic> bounding_box(const HPolytope& P, const Tolerances& tol) {
  Eigen::AlignedBox<double, Eigen::Dynamic> box(P.dim());
  for (const auto& v : vrep(P, tol).vertices) box.extend(v);
  return box;
}

bool contains_point(const PolyUnion& U, const Vector& x, double tol) {
  return std::any_of(U.parts.begin(), U.parts.end(), [&](const HPolytope& P) { return P.contains(x, tol); });
}

}  // namespace lcert::geom
