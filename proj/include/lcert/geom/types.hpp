#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <vector>

namespace lcert::geom {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Numerical tolerances shared by the polytope kernel. Every field can be
/// overridden from a scenario file.
struct Tolerances {
  double membership = 1e-9;    ///< absolute slack for point-in-halfspace tests
  double redundancy = 1e-9;    ///< slack when deciding that a row is implied by the others
  double singular = 1e-12;     ///< relative |det| threshold for preimages
  double empty_radius = 1e-9;  ///< sets thinner than this have no interior
  double margin = 1e-6;        ///< default interior margin for contractivity checks
};

/// Convex polytope {x : A x <= b}.
///
/// The empty set has a canonical form: a single row 0'x <= -1. Construction does
/// not canonicalize; use canonicalize() for a normalized, nonredundant, sorted form.
class HPolytope {
 public:
  HPolytope() = default;
  HPolytope(Matrix A, Vector b);

  static HPolytope empty(int dim);

  int dim() const { return static_cast<int>(A_.cols()); }
  int rows() const { return static_cast<int>(A_.rows()); }
  const Matrix& A() const { return A_; }
  const Vector& b() const { return b_; }

  /// True for the canonical empty form produced by canonicalize().
  bool is_canonical_empty() const;

  bool contains(const Vector& x, double tol) const;

  /// Largest violation max_i (a_i x - b_i); negative inside.
  double max_violation(const Vector& x) const;

 private:
  Matrix A_;
  Vector b_;
};

struct VPolytope {
  std::vector<Vector> vertices;

  int dim() const { return vertices.empty() ? 0 : static_cast<int>(vertices.front().size()); }
  bool empty() const { return vertices.empty(); }
};

struct Box {
  Vector lower;
  Vector upper;

  Box() = default;
  Box(Vector lo, Vector hi);

  int dim() const { return static_cast<int>(lower.size()); }
  bool contains(const Vector& x, double tol) const;
  HPolytope to_hpolytope() const;
  std::vector<Vector> corners() const;
};

/// Finite union of polytopes. Parts are nonempty and may overlap.
struct PolyUnion {
  std::vector<HPolytope> parts;

  PolyUnion() = default;
  explicit PolyUnion(std::vector<HPolytope> p) : parts(std::move(p)) {}

  std::size_t size() const { return parts.size(); }
  bool empty() const { return parts.empty(); }
  int dim() const { return parts.empty() ? 0 : parts.front().dim(); }
};

}  // namespace lcert::geom
