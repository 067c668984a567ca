#include "lcert/geom/lp.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace lcert::geom {
namespace {

constexpr double kPivotTol = 1e-11;
constexpr double kCostTol = 1e-10;
constexpr double kFeasTol = 1e-9;

// Tableau in "z - c'x = 0" form: the last row holds reduced costs, the last
// column holds right-hand sides.
struct Tableau {
  Matrix t;
  std::vector<int> basis;
  int m = 0;
  int ncols = 0;  // structural + slack + artificial columns

  double& obj(int j) { return t(m, j); }
  double rhs(int i) const { return t(i, ncols); }

  void pivot(int row, int col) {
    t.row(row) /= t(row, col);
    for (int i = 0; i <= m; ++i) {
      if (i == row) continue;
      const double f = t(i, col);
      if (f != 0.0) t.row(i) -= f * t.row(row);
    }
    basis[row] = col;
  }

  // Returns false if unbounded. Only columns < allowed may enter.
  bool run(int allowed) {
    const int max_iter = 50 * (m + ncols) + 100;
    for (int iter = 0; iter < max_iter; ++iter) {
      int enter = -1;
      for (int j = 0; j < allowed; ++j) {
        if (t(m, j) < -kCostTol) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return true;
      int leave = -1;
      double best = std::numeric_limits<double>::infinity();
      for (int i = 0; i < m; ++i) {
        const double a = t(i, enter);
        if (a <= kPivotTol) continue;
        const double ratio = t(i, ncols) / a;
        if (ratio < best - 1e-14 || (std::abs(ratio - best) <= 1e-14 && leave >= 0 && basis[i] < basis[leave])) {
          best = ratio;
          leave = i;
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
    return true;
  }
};

}  // namespace

LpResult solve_lp(const Vector& c, const Matrix& A, const Vector& b) {
  const int m = static_cast<int>(A.rows());
  const int n = static_cast<int>(A.cols());
  LpResult result;

  // Columns: x+ (n), x- (n), slack (m), artificial (one per negative rhs).
  std::vector<int> negative_rows;
  for (int i = 0; i < m; ++i)
    if (b(i) < 0.0) negative_rows.push_back(i);
  const int nart = static_cast<int>(negative_rows.size());
  const int structural = 2 * n + m;

  Tableau tab;
  tab.m = m;
  tab.ncols = structural + nart;
  tab.t = Matrix::Zero(m + 1, tab.ncols + 1);
  tab.basis.assign(m, -1);

  int art = 0;
  for (int i = 0; i < m; ++i) {
    const double sign = b(i) < 0.0 ? -1.0 : 1.0;
    for (int j = 0; j < n; ++j) {
      tab.t(i, j) = sign * A(i, j);
      tab.t(i, n + j) = -sign * A(i, j);
    }
    tab.t(i, 2 * n + i) = sign;
    tab.t(i, tab.ncols) = sign * b(i);
    if (sign < 0.0) {
      const int col = structural + art++;
      tab.t(i, col) = 1.0;
      tab.basis[i] = col;
    } else {
      tab.basis[i] = 2 * n + i;
    }
  }

  if (nart > 0) {
    // Phase 1: maximize -sum(artificial).
    for (int k = 0; k < nart; ++k) tab.obj(structural + k) = 1.0;
    for (int i = 0; i < m; ++i)
      if (tab.basis[i] >= structural) tab.t.row(m) -= tab.t.row(i);
    tab.run(tab.ncols);
    if (tab.t(m, tab.ncols) < -kFeasTol) {
      result.status = LpStatus::Infeasible;
      return result;
    }
    // Drive zero-level artificials out of the basis where possible.
    for (int i = 0; i < m; ++i) {
      if (tab.basis[i] < structural) continue;
      for (int j = 0; j < structural; ++j) {
        if (std::abs(tab.t(i, j)) > 1e-9) {
          tab.pivot(i, j);
          break;
        }
      }
    }
  }

  // Phase 2.
  tab.t.row(m).setZero();
  for (int j = 0; j < n; ++j) {
    tab.obj(j) = -c(j);
    tab.obj(n + j) = c(j);
  }
  for (int i = 0; i < m; ++i) {
    const int col = tab.basis[i];
    const double f = tab.t(m, col);
    if (f != 0.0) tab.t.row(m) -= f * tab.t.row(i);
  }
  if (!tab.run(structural)) {
    result.status = LpStatus::Unbounded;
    return result;
  }

  result.x = Vector::Zero(n);
  for (int i = 0; i < m; ++i) {
    const int col = tab.basis[i];
    if (col < n) result.x(col) += tab.rhs(i);
    else if (col < 2 * n) result.x(col - n) -= tab.rhs(i);
  }
  result.value = c.dot(result.x);
  result.status = LpStatus::Optimal;
  return result;
}

}  // namespace lcert::geom
