#pragma once

#include "lcert/geom/types.hpp"

#include <array>
#include <vector>

namespace lcert::sysmodel {

using geom::Box;
using geom::HPolytope;
using geom::Matrix;
using geom::Vector;
using geom::VPolytope;

/// x+ = A_sigma x + w, sigma in {1..q}, x in X, w in W.
class LinearSwitchedSystem {
 public:
  /// Validates: q >= 2, square nonsingular modes, 0 in int(X), W bounded with 0 in W.
  LinearSwitchedSystem(std::vector<Matrix> modes, Box X, HPolytope W);

  int num_modes() const { return static_cast<int>(modes_.size()); }
  int dim() const { return static_cast<int>(X_.dim()); }
  /// sigma is 1-based.
  const Matrix& A(int sigma) const;
  const Box& X() const { return X_; }
  const HPolytope& W() const { return W_; }
  const VPolytope& W_vertices() const { return Wv_; }

 private:
  std::vector<Matrix> modes_;
  Box X_;
  HPolytope W_;
  VPolytope Wv_;
};

/// A_sigma x + w. Throws ModeOutOfRange or UncertaintyOutOfSet; never clips to X.
Vector step_linear(const LinearSwitchedSystem& sys, const Vector& x, int sigma, const Vector& w);

struct AMRParams {
  double alpha = 0.2;  ///< net growth rate (1/h)
  double N = 1e7;      ///< carrying capacity (cells)
  double beta = 0.45;  ///< max immune kill rate (1/h)
  double K = 1.2e5;    ///< half-max load (cells)
  double D_M = 1.0;    ///< antibiotic kill rate at MIC (1/h)
  double mu = 0.05;    ///< induced-resistance rate (1/h)

  /// Throws Precondition unless beta > alpha > 0, D_M > alpha, mu > 0, 0 < K < N.
  void validate() const;
};

/// beta K / (K + b). Throws NegativeLoad for b < 0.
double immune_rate(const AMRParams& p, double b);

/// Two-mode vector field at (b, s); sigma in {1, 2}. Throws DomainViolation
/// outside 0 <= s <= b <= N.
Vector amr_vector_field(const AMRParams& p, const Vector& x, int sigma);

/// Forward-Euler discretization x+ = x + delta s_sigma(x) + w with W the box
/// [-wb, wb] x [-ws, ws] and X the triangle 0 <= s <= b <= N.
class AMRSwitchedSystem {
 public:
  AMRSwitchedSystem(AMRParams params, double delta, double wb, double ws);

  const AMRParams& params() const { return params_; }
  double delta() const { return delta_; }
  double wb() const { return wb_; }
  double ws() const { return ws_; }
  Box W() const;
  bool in_domain(const Vector& x, double tol = 0.0) const;
  /// Retraction onto X: b <- clamp(b, 0, N), s <- clamp(s, 0, b).
  Vector retract(const Vector& x) const;

 private:
  AMRParams params_;
  double delta_;
  double wb_;
  double ws_;
};

/// Throws DomainViolation (x outside X), ModeOutOfRange, UncertaintyOutOfSet.
/// The successor is not required to lie in X.
Vector step_amr(const AMRSwitchedSystem& sys, const Vector& x, int sigma, const Vector& w);

}  // namespace lcert::sysmodel
