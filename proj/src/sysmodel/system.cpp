#include "lcert/sysmodel/system.hpp"

#include "lcert/geom/polytope.hpp"
#include "lcert/util/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace lcert::sysmodel {

LinearSwitchedSystem::LinearSwitchedSystem(std::vector<Matrix> modes, Box X, HPolytope W)
    : modes_(std::move(modes)), X_(std::move(X)), W_(std::move(W)) {
  if (modes_.size() < 2) throw Error(ErrorCode::Precondition, "a switched system needs at least two modes");
  const int n = X_.dim();
  for (std::size_t i = 0; i < modes_.size(); ++i) {
    const Matrix& A = modes_[i];
    if (A.rows() != n || A.cols() != n)
      throw Error(ErrorCode::DimensionMismatch, "mode " + std::to_string(i + 1) + " is not " + std::to_string(n) +
                                                    "x" + std::to_string(n));
    double scale = 1.0;
    for (Eigen::Index j = 0; j < n; ++j) scale *= A.col(j).norm();
    if (std::abs(A.determinant()) <= 1e-12 * scale)
      throw Error(ErrorCode::SingularMatrix, "mode " + std::to_string(i + 1) + " is singular");
  }
  if (W_.dim() != n) throw Error(ErrorCode::DimensionMismatch, "W dimension differs from X");
  if (!((X_.lower.array() < 0.0).all() && (X_.upper.array() > 0.0).all()))
    throw Error(ErrorCode::Precondition, "X must contain the origin in its interior");
  if (!W_.contains(Vector::Zero(n), 1e-12)) throw Error(ErrorCode::Precondition, "W must contain the origin");
  Wv_ = geom::vrep(W_);
}

const Matrix& LinearSwitchedSystem::A(int sigma) const {
  if (sigma < 1 || sigma > num_modes())
    throw Error(ErrorCode::ModeOutOfRange, "mode " + std::to_string(sigma) + " not in 1.." +
                                               std::to_string(num_modes()));
  return modes_[static_cast<std::size_t>(sigma - 1)];
}

Vector step_linear(const LinearSwitchedSystem& sys, const Vector& x, int sigma, const Vector& w) {
  const Matrix& A = sys.A(sigma);
  if (x.size() != sys.dim() || w.size() != sys.dim())
    throw Error(ErrorCode::DimensionMismatch, "state or noise has the wrong dimension");
  if (!sys.W().contains(w, 1e-9)) throw Error(ErrorCode::UncertaintyOutOfSet, "w is not in W");
  return A * x + w;
}

void AMRParams::validate() const {
  if (!(alpha > 0.0)) throw Error(ErrorCode::Precondition, "alpha must be positive");
  if (!(beta > alpha)) throw Error(ErrorCode::Precondition, "beta must exceed alpha");
  if (!(D_M > alpha)) throw Error(ErrorCode::Precondition, "D_M must exceed alpha");
  if (!(mu > 0.0)) throw Error(ErrorCode::Precondition, "mu must be positive");
  if (!(K > 0.0 && K < N)) throw Error(ErrorCode::Precondition, "need 0 < K < N");
}

double immune_rate(const AMRParams& p, double b) {
  if (b < 0.0) throw Error(ErrorCode::NegativeLoad, "bacterial load is negative");
  return p.beta * p.K / (p.K + b);
}

Vector amr_vector_field(const AMRParams& p, const Vector& x, int sigma) {
  if (sigma < 1 || sigma > 2) throw Error(ErrorCode::ModeOutOfRange, "AMR modes are 1 and 2");
  const double b = x(0);
  const double s = x(1);
  const double slack = 1e-9 * std::max(1.0, p.N);
  if (s < -slack || s > b + slack || b > p.N + slack)
    throw Error(ErrorCode::DomainViolation, "(b, s) outside 0 <= s <= b <= N");
  const double I = immune_rate(p, std::max(b, 0.0));
  const double logistic = 1.0 - b / p.N;
  Vector f(2);
  f(0) = p.alpha * b * logistic - I * b;
  f(1) = p.alpha * s * logistic - I * s;
  if (sigma == 2) {
    f(0) -= p.D_M * s;
    f(1) -= (p.D_M + p.mu) * s;
  }
  return f;
}

AMRSwitchedSystem::AMRSwitchedSystem(AMRParams params, double delta, double wb, double ws)
    : params_(params), delta_(delta), wb_(wb), ws_(ws) {
  params_.validate();
  if (!(delta_ >= 0.0)) throw Error(ErrorCode::Precondition, "delta must be nonnegative");
  if (!(wb_ >= 0.0 && ws_ >= 0.0)) throw Error(ErrorCode::Precondition, "noise bounds must be nonnegative");
}

Box AMRSwitchedSystem::W() const {
  Vector lo(2);
  Vector hi(2);
  lo << -wb_, -ws_;
  hi << wb_, ws_;
  return Box(lo, hi);
}

bool AMRSwitchedSystem::in_domain(const Vector& x, double tol) const {
  return x(1) >= -tol && x(1) <= x(0) + tol && x(0) <= params_.N + tol;
}

Vector AMRSwitchedSystem::retract(const Vector& x) const {
  Vector y(2);
  y(0) = std::clamp(x(0), 0.0, params_.N);
  y(1) = std::clamp(x(1), 0.0, y(0));
  return y;
}

Vector step_amr(const AMRSwitchedSystem& sys, const Vector& x, int sigma, const Vector& w) {
  if (!sys.W().contains(w, 1e-9)) throw Error(ErrorCode::UncertaintyOutOfSet, "w is not in W");
  return x + sys.delta() * amr_vector_field(sys.params(), x, sigma) + w;
}

}  // namespace lcert::sysmodel
