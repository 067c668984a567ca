#include "lcert/geom/projection.hpp"

#include "lcert/geom/lp.hpp"
#include "lcert/util/error.hpp"

#include <algorithm>
#include <limits>
#include <vector>

namespace lcert::geom {
namespace {

constexpr double kFeas = 1e-12;

// Closest point to x on the affine set {y : A_W y = b_W}; also the multipliers.
void equality_projection(const Matrix& A, const Vector& b, const std::vector<int>& work, const Vector& x,
                         Vector& y, Vector& lambda) {
  if (work.empty()) {
    y = x;
    lambda.resize(0);
    return;
  }
  const Eigen::Index k = static_cast<Eigen::Index>(work.size());
  Matrix Aw(k, A.cols());
  Vector bw(k);
  for (Eigen::Index i = 0; i < k; ++i) {
    Aw.row(i) = A.row(work[static_cast<std::size_t>(i)]);
    bw(i) = b(work[static_cast<std::size_t>(i)]);
  }
  const Matrix G = Aw * Aw.transpose();
  lambda = G.completeOrthogonalDecomposition().solve(Aw * x - bw);
  y = x - Aw.transpose() * lambda;
}

}  // namespace

Projection project_point(const HPolytope& P, const Vector& x) {
  const Matrix& A = P.A();
  const Vector& b = P.b();
  const int m = P.rows();
  if (P.contains(x, 0.0)) return {x, 0.0};

  // Any feasible vertex will do as a start.
  const LpResult start = solve_lp(Vector::Zero(P.dim()), A, b);
  if (start.status != LpStatus::Optimal) throw Error(ErrorCode::Empty, "project_point onto an empty polytope");
  Vector y = start.x;

  std::vector<int> work;
  for (int i = 0; i < m; ++i)
    if (A.row(i).dot(y) - b(i) >= -kFeas && static_cast<int>(work.size()) < P.dim()) {
      // Only keep independent constraints in the initial working set.
      std::vector<int> trial = work;
      trial.push_back(i);
      Matrix Aw(static_cast<Eigen::Index>(trial.size()), P.dim());
      for (std::size_t r = 0; r < trial.size(); ++r) Aw.row(static_cast<Eigen::Index>(r)) = A.row(trial[r]);
      if (Eigen::FullPivLU<Matrix>(Aw).rank() == static_cast<Eigen::Index>(trial.size())) work = trial;
    }

  const int max_iter = 10 * (m + P.dim()) + 50;
  for (int iter = 0; iter < max_iter; ++iter) {
    Vector target;
    Vector lambda;
    equality_projection(A, b, work, x, target, lambda);
    // With the working set held as equalities, the minimizer of |y - x| is target
    // restricted to the working affine set; step towards it.
    Vector step = target - y;
    if (step.norm() <= 1e-13 * (1.0 + y.norm())) {
      if (work.empty()) break;
      Eigen::Index worst = 0;
      const double minl = lambda.minCoeff(&worst);
      if (minl >= -1e-12) break;
      work.erase(work.begin() + worst);
      continue;
    }
    double alpha = 1.0;
    int blocking = -1;
    for (int i = 0; i < m; ++i) {
      if (std::find(work.begin(), work.end(), i) != work.end()) continue;
      const double ad = A.row(i).dot(step);
      if (ad <= 1e-15) continue;
      const double t = (b(i) - A.row(i).dot(y)) / ad;
      if (t < alpha) {
        alpha = std::max(t, 0.0);
        blocking = i;
      }
    }
    y += alpha * step;
    if (blocking >= 0) work.push_back(blocking);
  }
  return {y, (y - x).norm()};
}

double dist_point_to_polyunion(const Vector& x, const PolyUnion& U) {
  if (U.empty()) throw Error(ErrorCode::Precondition, "distance to an empty union");
  double best = std::numeric_limits<double>::infinity();
  for (const auto& P : U.parts) {
    if (P.contains(x, 0.0)) return 0.0;
    best = std::min(best, project_point(P, x).distance);
  }
  return best;
}

}  // namespace lcert::geom
