#pragma once

#include "lcert/geom/types.hpp"

namespace lcert::geom {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Vector x;
  double value = 0.0;
};

/// Dense two-phase simplex with Bland's rule:
///   maximize c'x  subject to  A x <= b,  x free.
/// Intended for the small problems the polytope kernel produces (tens of rows).
LpResult solve_lp(const Vector& c, const Matrix& A, const Vector& b);

}  // namespace lcert::geom
