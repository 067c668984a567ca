#pragma once

#include "lcert/geom/polygon2d.hpp"
#include "lcert/geom/types.hpp"
#include "lcert/sysmodel/system.hpp"

#include <json.hpp>

#include <array>
#include <filesystem>
#include <functional>
#include <optional>
#include <vector>

namespace lcert::gridcert {

using geom::Vector;
using sysmodel::AMRSwitchedSystem;

struct GridSpec {
  double b_max = 150000.0;
  int per_axis = 150;
};

/// Points (b_i, s_j) with b_i = i b_max / (per_axis - 1) and s_j <= b_i, row-major
/// in b then s; per_axis (per_axis + 1) / 2 points. Throws Precondition for per_axis < 2.
std::vector<Vector> make_grid(const GridSpec& spec);

/// (wb, 0), (0, ws), (wb, ws).
std::array<Vector, 3> corner_uncertainties(double wb, double ws);

enum class Label { Outside, Inside };

struct PointClass {
  Vector x;
  Label label = Label::Outside;
  std::optional<int> mode;  ///< smallest certifying mode when Inside
};

using Classification = std::vector<PointClass>;

/// Region predicate on retracted successors.
using Region = std::function<bool(const Vector&)>;

/// Inside with the smallest sigma whose three corner successors, retracted onto
/// X, satisfy the target predicate.
PointClass classify_point(const AMRSwitchedSystem& sys, const Vector& x, const Region& target);
Classification classify_grid(const AMRSwitchedSystem& sys, const std::vector<Vector>& grid, const Region& target);

/// Planar hull with a point-membership test.
struct Hull {
  std::vector<geom::Point2> vertices;  ///< counter-clockwise
  bool contains(const Vector& x, double tol = 1e-9) const;
  bool contains(const Hull& other, double tol = 1e-9) const;
};

Hull hull_of_inside(const Classification& c);

struct GridCertificate {
  bool certified = false;
  double b0 = 0.0;
  double eps = 0.0;
  std::size_t inside = 0;
  Classification classification;
  Hull hull;
};

/// Classifies against Omega0 = {b <= b0} and certifies when Omega0 grown by eps
/// (its corners (0,0), (b0+eps, 0), (b0+eps, b0+eps)) lies inside the hull of
/// Inside points. Throws Precondition for b0 >= b_max and TooFewInsidePoints.
GridCertificate certify_rccs_grid(const AMRSwitchedSystem& sys, double b0, const GridSpec& spec, double eps);

struct HullLadder {
  double seed_b0 = 0.0;
  std::vector<Hull> hulls;                 ///< hulls[0] is the one-step hull
  std::vector<std::size_t> inside_counts;
  std::vector<Classification> labels;      ///< per iteration; kept only when requested
  bool fixed_point = false;                ///< stopped because no new Inside points appeared
  std::size_t nesting_violations = 0;      ///< hull k-1 not inside hull k, or an Inside point lost
};

/// Iteration k targets the hull of iteration k-1's Inside points. Stops at
/// k_max or at a fixed point.
HullLadder grow_domain_grid(const AMRSwitchedSystem& sys, double b0, const GridSpec& spec, int k_max, double eps,
                            bool keep_labels = false);

void write_classification_csv(const Classification& c, const std::filesystem::path& path);
nlohmann::json to_json(const Hull& h);

}  // namespace lcert::gridcert
