#include "../common/fixtures.hpp"
#include "../common/oracles.hpp"

#include "lcert/geom/boundary.hpp"
#include "lcert/geom/cover.hpp"
#include "lcert/geom/io.hpp"
#include "lcert/geom/lp.hpp"
#include "lcert/geom/polytope.hpp"
#include "lcert/geom/projection.hpp"
#include "lcert/util/error.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace lcert;
using namespace lcert::testing;
using geom::PolyUnion;

namespace {

bool same_set(const HPolytope& P, const HPolytope& Q) {
  return same_point_sets(geom::vrep(P).vertices, geom::vrep(Q).vertices, 1e-9);
}

// Jarvis march; the reference for the hull tests.
std::vector<Vector> gift_wrap(const std::vector<Vector>& pts) {
  std::size_t start = 0;
  for (std::size_t i = 1; i < pts.size(); ++i)
    if (pts[i](0) < pts[start](0) || (pts[i](0) == pts[start](0) && pts[i](1) < pts[start](1))) start = i;
  std::vector<Vector> hull;
  std::size_t p = start;
  do {
    hull.push_back(pts[p]);
    std::size_t q = (p + 1) % pts.size();
    for (std::size_t r = 0; r < pts.size(); ++r) {
      const Vector a = pts[q] - pts[p];
      const Vector b = pts[r] - pts[p];
      const double cross = a(0) * b(1) - a(1) * b(0);
      if (cross < 0.0 || (cross == 0.0 && b.norm() > a.norm())) q = r;
    }
    p = q;
  } while (p != start && hull.size() <= pts.size());
  return hull;
}

}  // namespace

TEST_CASE("lp solves a bounded problem and reports infeasible and unbounded ones") {
  const auto box = hbox2(-1, -2, 3, 4);
  auto r = geom::solve_lp(vec2(1, 1), box.A(), box.b());
  REQUIRE(r.status == geom::LpStatus::Optimal);
  CHECK(r.value == doctest::Approx(7.0));

  Matrix A(2, 2);
  A << 1, 0, -1, 0;
  CHECK(geom::solve_lp(vec2(1, 0), A, vec2(1, -2)).status == geom::LpStatus::Infeasible);
  CHECK(geom::solve_lp(vec2(0, 1), A, vec2(1, 1)).status == geom::LpStatus::Unbounded);
}

TEST_CASE("canonical form normalizes, drops redundant rows and detects emptiness") {
  Matrix A(6, 2);
  A << 1, 0, -1, 0, 0, 1, 0, -1, 2, 0, 1, 1;
  Vector b(6);
  b << 1, 1, 1, 1, 2, 5;
  const auto C = geom::canonicalize(HPolytope(A, b));
  CHECK(C.rows() == 4);
  for (int i = 0; i < C.rows(); ++i) CHECK(C.A().row(i).norm() == doctest::Approx(1.0));
  CHECK(same_set(C, hbox2(-1, -1, 1, 1)));

  Matrix E(2, 2);
  E << 1, 0, -1, 0;
  CHECK(geom::canonicalize(HPolytope(E, vec2(-1, 0))).is_canonical_empty());
}

TEST_CASE("chebyshev ball and interior detection") {
  const auto c = geom::chebyshev_ball(hbox2(-1, -1, 1, 1));
  REQUIRE(c.feasible);
  CHECK(c.radius == doctest::Approx(1.0));
  CHECK(c.center.norm() == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(geom::has_no_interior(hbox2(0, 0, 1, 0 + 1e-12), 1e-9));
  CHECK_FALSE(geom::has_no_interior(hbox2(0, 0, 1, 1), 1e-9));
}

TEST_CASE("erosion of boxes and over-erosion") {
  const auto W = hbox2(-0.1, -0.1, 0.1, 0.1);
  CHECK(same_set(geom::erode(hbox2(-1, -1, 1, 1), W), hbox2(-0.9, -0.9, 0.9, 0.9)));
  CHECK(same_set(geom::erode(hbox2(-1, -1, 1, 1), hbox2(0, 0, 0, 0)), hbox2(-1, -1, 1, 1)));
  CHECK(geom::has_no_interior(geom::erode(hbox2(0, 0, 1, 1), hbox2(-2, -2, 2, 2)), 1e-9));
}

TEST_CASE("triangle eroded by a box agrees with the translate test") {
  Matrix A(3, 2);
  A << -1, 0, 0, -1, 1, 1;
  const HPolytope T(A, Eigen::Vector3d(0, 0, 4));
  const auto Wv = geom::Box(vec2(-0.5, -0.5), vec2(0.5, 0.5)).corners();
  const auto E = geom::erode(T, hbox2(-0.5, -0.5, 0.5, 0.5));
  // shifting each facet by the box's support in its normal direction
  CHECK(same_point_sets(geom::vrep(E).vertices, {vec2(0.5, 0.5), vec2(2.5, 0.5), vec2(0.5, 2.5)}, 1e-9));

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 3.0);
  int inside = 0;
  for (int i = 0; i < 10000; ++i) {
    const Vector z = vec2(u(rng), u(rng));
    if (!E.contains(z, 0.0)) continue;
    ++inside;
    for (const auto& w : Wv) REQUIRE(T.contains(z + w, 1e-12));
  }
  CHECK(inside > 1000);
}

TEST_CASE("erosion accepts a vertex list for W") {
  const auto P = geom::regular_polygon(1.0, 16);
  const auto W = geom::regular_polygon(0.1, 7, true);
  CHECK(same_set(geom::erode(P, W), geom::erode(P, geom::vrep(W))));
}

TEST_CASE("linear preimage") {
  const auto P = hbox2(-1, -1, 1, 1);
  CHECK(same_set(geom::linear_preimage(Matrix::Identity(2, 2), P), P));
  CHECK(same_set(geom::linear_preimage(2.0 * Matrix::Identity(2, 2), P), hbox2(-0.5, -0.5, 0.5, 0.5)));
  CHECK_THROWS_AS(geom::linear_preimage(mat2(1, 2, 2, 4), P), Error);

  const auto Q = geom::linear_preimage(example1_A1(), P);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  int checked = 0;
  for (int i = 0; i < 10000; ++i) {
    const Vector z = vec2(u(rng), u(rng));
    const double m = margin(P.A(), P.b(), example1_A1() * z);
    if (std::abs(m) < 1e-9) continue;
    ++checked;
    REQUIRE((m < 0.0) == Q.contains(z, 0.0));
  }
  CHECK(checked > 9900);
}

TEST_CASE("intersection with a box") {
  const auto X = box2(-6, -6, 6, 6);
  CHECK(same_set(geom::intersect(hbox2(-1, -1, 1, 1), X), hbox2(-1, -1, 1, 1)));
  CHECK(geom::has_no_interior(geom::intersect(hbox2(10, 10, 11, 11), X), 1e-9));
  CHECK(same_set(geom::intersect(hbox2(0, 0, 2, 2), box2(1, 1, 3, 3)), hbox2(1, 1, 2, 2)));
}

TEST_CASE("vertex and facet enumeration") {
  CHECK(same_point_sets(geom::vrep(hbox2(-1, -1, 1, 1)).vertices,
                        {vec2(-1, -1), vec2(1, -1), vec2(1, 1), vec2(-1, 1)}, 1e-12));
  CHECK(same_point_sets(geom::vrep(hbox2(0.5, 0.25, 0.5, 0.25)).vertices, {vec2(0.5, 0.25)}, 1e-12));

  const auto V = geom::vrep(geom::regular_polygon(1.0, 16));
  CHECK(V.vertices.size() == 16);
  for (const auto& v : V.vertices) CHECK(v.norm() == doctest::Approx(1.0));
  CHECK(geom::hrep(V).rows() == 16);

  Matrix A(1, 2);
  A << 1, 0;
  CHECK_THROWS_AS(geom::vrep(HPolytope(A, Vector::Ones(1))), Error);
  CHECK_THROWS_AS(geom::vrep(HPolytope::empty(2)), Error);
}

TEST_CASE("convex hull") {
  std::vector<Vector> pts{vec2(0, 0), vec2(1, 0), vec2(1, 1), vec2(0, 1), vec2(0.5, 0.5)};
  CHECK(same_point_sets(geom::convex_hull(pts).vertices, {vec2(0, 0), vec2(1, 0), vec2(1, 1), vec2(0, 1)}, 0.0));
  std::vector<Vector> line{vec2(0, 0), vec2(1, 1), vec2(2, 2), vec2(3, 3)};
  CHECK(same_point_sets(geom::convex_hull(line).vertices, {vec2(0, 0), vec2(3, 3)}, 0.0));

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Vector> disc;
  while (disc.size() < 1000) {
    const Vector z = vec2(2 * u(rng) - 1, 2 * u(rng) - 1);
    if (z.norm() <= 1.0) disc.push_back(z);
  }
  CHECK(same_point_sets(geom::convex_hull(disc).vertices, gift_wrap(disc), 0.0));
}

TEST_CASE("union membership and coverage") {
  const PolyUnion U({hbox2(-1, -1, 1, 1), hbox2(0.5, -1, 3, 1)});
  CHECK(geom::contains_point(U, vec2(0, 0)));
  CHECK(geom::contains_point(U, vec2(3, 1)));
  CHECK_FALSE(geom::contains_point(U, vec2(4, 0)));

  CHECK(geom::union_covers_with_margin(hbox2(-0.5, -0.5, 0.5, 0.5), U, 1e-6));
  CHECK(geom::union_covers_with_margin(hbox2(-1, -1, 3, 1), U, 0.0));
  CHECK_FALSE(geom::union_covers_with_margin(hbox2(-1, -1, 3, 1), U, 1e-6));
  CHECK_FALSE(geom::union_covers_with_margin(hbox2(-1, -1, 3, 1.5), U, 0.0));
  // two parts touching along an edge still cover the joint box
  const PolyUnion halves({hbox2(-1, -1, 0, 1), hbox2(0, -1, 1, 1)});
  CHECK(geom::union_covers_with_margin(hbox2(-0.9, -0.9, 0.9, 0.9), halves, 1e-6));
}

TEST_CASE("point to union distance") {
  const PolyUnion U({hbox2(-1, -1, 1, 1)});
  CHECK(geom::dist_point_to_polyunion(vec2(0.2, 0.3), U) == doctest::Approx(0.0));
  CHECK(geom::dist_point_to_polyunion(vec2(2, 0), U) == doctest::Approx(1.0));
  CHECK(geom::dist_point_to_polyunion(vec2(2, 2), U) == doctest::Approx(std::sqrt(2.0)));
  CHECK_THROWS_AS(geom::dist_point_to_polyunion(vec2(0, 0), PolyUnion{}), Error);

  const auto p = geom::project_point(geom::regular_polygon(1.0, 64), vec2(3, 4));
  CHECK(p.distance == doctest::Approx(4.0).epsilon(2e-3));
}

TEST_CASE("boundary distance between nested unions") {
  const PolyUnion inner({hbox2(-1, -1, 1, 1)});
  const auto d = geom::boundary_set_distance(inner, PolyUnion({hbox2(-2, -2, 2, 2)}));
  CHECK(d.nested);
  CHECK(d.value == doctest::Approx(1.0));

  const auto same = geom::boundary_set_distance(inner, inner);
  CHECK_FALSE(same.nested);
  CHECK(same.value == 0.0);

  const auto asym = geom::boundary_set_distance(inner, PolyUnion({hbox2(-1.5, -3, 3, 1.5)}));
  CHECK(asym.nested);
  CHECK(asym.value == doctest::Approx(0.5));

  // the outer set is a union whose internal edges are not boundary
  const PolyUnion split({hbox2(-2, -2, 0, 2), hbox2(0, -2, 2, 2)});
  CHECK(geom::boundary_set_distance(inner, split).value == doctest::Approx(1.0));
}

TEST_CASE("planar union boundary drops shared edges") {
  const geom::IndexedUnion U(PolyUnion({hbox2(0, 0, 1, 1), hbox2(1, 0, 2, 1)}));
  double length = 0.0;
  for (const auto& s : geom::union_boundary_2d(U)) length += (s.q - s.p).norm();
  CHECK(length == doctest::Approx(6.0));
}

TEST_CASE("json round trip keeps a random polygon") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 20; ++i) {
    const auto P = random_polygon(rng);
    const auto Q = geom::hpolytope_from_json(nlohmann::json::parse(geom::to_json(P).dump()));
    CHECK(Q.A() == P.A());
    CHECK(Q.b() == P.b());
  }
  CHECK_THROWS_AS(geom::hpolytope_from_json(nlohmann::json::parse(R"({"A": [[1, 0]], "b": [1, 2]})")), Error);
}

TEST_CASE("randomized erosion, preimage and round-trip oracles") {
  const auto e = erosion_suite(40, 101, 1e-7);
  CHECK_MESSAGE(e.failures == 0, e.first_failure);
  const auto p = preimage_suite(40, 202, 1e-7);
  CHECK_MESSAGE(p.failures == 0, p.first_failure);
  const auto r = roundtrip_suite(40, 303, 1e-7);
  CHECK_MESSAGE(r.failures == 0, r.first_failure);
}
