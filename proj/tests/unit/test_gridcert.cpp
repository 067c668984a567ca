#include "../common/fixtures.hpp"

#include "lcert/gridcert/grid.hpp"
#include "lcert/util/error.hpp"

#include <doctest.h>

#include <fstream>
#include <random>

using namespace lcert;
using namespace lcert::testing;
using namespace lcert::gridcert;

namespace {

const sysmodel::AMRSwitchedSystem& amr() {
  static const sysmodel::AMRSwitchedSystem sys(sysmodel::AMRParams{}, 0.1, 5.0, 5.0);
  return sys;
}

Region below(double b0) {
  return [b0](const Vector& y) { return y(0) <= b0; };
}

}  // namespace

TEST_CASE("triangular grid") {
  const auto g = make_grid({1.0, 2});
  REQUIRE(g.size() == 3);
  CHECK(g[0] == vec2(0, 0));
  CHECK(g[1] == vec2(1, 0));
  CHECK(g[2] == vec2(1, 1));
  CHECK(make_grid({150000.0, 150}).size() == 150u * 151u / 2u);
  CHECK_THROWS_AS(make_grid({1.0, 1}), Error);
}

TEST_CASE("corner uncertainties") {
  const auto c = corner_uncertainties(5, 5);
  CHECK(c[0] == vec2(5, 0));
  CHECK(c[1] == vec2(0, 5));
  CHECK(c[2] == vec2(5, 5));
  for (const auto& w : corner_uncertainties(0, 0)) CHECK(w.norm() == 0.0);
  const auto a = corner_uncertainties(1, 2);
  CHECK(a[0] == vec2(1, 0));
  CHECK(a[1] == vec2(0, 2));
  CHECK(a[2] == vec2(1, 2));
}

TEST_CASE("point classification") {
  const auto origin = classify_point(amr(), vec2(0, 0), below(100));
  CHECK(origin.label == Label::Inside);
  CHECK(origin.mode == 1);

  const auto nothing = [](const Vector&) { return false; };
  for (const auto& p : classify_grid(amr(), make_grid({150000.0, 12}), nothing)) {
    CHECK(p.label == Label::Outside);
    CHECK_FALSE(p.mode.has_value());
  }
}

TEST_CASE("corner labels against dense noise sampling") {
  // Inside labels are checked against the definition; disagreements with
  // interior noise samples are only reported.
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  std::uniform_real_distribution<double> noise(-5.0, 5.0);
  const auto target = below(10000);
  int inside = 0;
  int disagreements = 0;
  for (int i = 0; i < 200; ++i) {
    const double b = 12000.0 * u01(rng);
    const Vector x = vec2(b, b * u01(rng));
    const auto pc = classify_point(amr(), x, target);
    if (pc.label != Label::Inside) continue;
    ++inside;
    for (const auto& w : corner_uncertainties(5, 5))
      REQUIRE(target(amr().retract(sysmodel::step_amr(amr(), x, *pc.mode, w))));
    for (int s = 0; s < 1000; ++s)
      if (!target(amr().retract(sysmodel::step_amr(amr(), x, *pc.mode, vec2(noise(rng), noise(rng)))))) ++disagreements;
  }
  CHECK(inside > 0);
  MESSAGE("dense-noise disagreements: " << disagreements << " over " << inside << " Inside points");
}

TEST_CASE("grid certification outcomes") {
  const GridSpec spec;
  CHECK(certify_rccs_grid(amr(), 1000, spec, 1e-6).certified);
  CHECK_FALSE(certify_rccs_grid(amr(), 120000, spec, 1e-6).certified);
  CHECK_THROWS_WITH_AS(certify_rccs_grid(amr(), 150000, spec, 1e-6), doctest::Contains("Precondition"), Error);
  CHECK_THROWS_WITH_AS(certify_rccs_grid(amr(), 0, spec, 1e-6), doctest::Contains("TooFewInsidePoints"), Error);
}

TEST_CASE("hull soundness and monotonicity in the threshold") {
  const GridSpec spec;
  const auto small = certify_rccs_grid(amr(), 1000, spec, 1e-6);
  const auto large = certify_rccs_grid(amr(), 10000, spec, 1e-6);
  REQUIRE(small.classification.size() == large.classification.size());
  for (std::size_t i = 0; i < small.classification.size(); ++i)
    if (small.classification[i].label == Label::Inside) CHECK(large.classification[i].label == Label::Inside);

  std::size_t inside = 0;
  for (const auto& p : large.classification)
    if (p.label == Label::Inside) {
      ++inside;
      CHECK(large.hull.contains(p.x));
    }
  CHECK(inside == large.inside);
  for (const auto& v : large.hull.vertices) {
    bool found = false;
    for (const auto& p : large.classification)
      found = found || (p.label == Label::Inside && p.x(0) == v(0) && p.x(1) == v(1));
    CHECK(found);
  }
}

TEST_CASE("domain growth") {
  const GridSpec spec;
  const auto one = grow_domain_grid(amr(), 10000, spec, 1, 1e-6);
  const auto cert = certify_rccs_grid(amr(), 10000, spec, 1e-6);
  REQUIRE(one.hulls.size() == 1);
  CHECK(one.hulls[0].vertices == cert.hull.vertices);

  const auto L = grow_domain_grid(amr(), 10000, spec, 40, 1e-6);
  CHECK(L.hulls.size() == 40);
  CHECK(L.nesting_violations == 0);
  for (std::size_t k = 1; k < L.inside_counts.size(); ++k) {
    CHECK(L.inside_counts[k] >= L.inside_counts[k - 1]);
    CHECK(L.hulls[k].contains(L.hulls[k - 1]));
  }
  CHECK_THROWS_AS(grow_domain_grid(amr(), 120000, spec, 5, 1e-6), Error);
}

TEST_CASE("classification csv") {
  const auto c = classify_grid(amr(), make_grid({30000.0, 10}), below(1000));
  const auto path = scratch_dir("grid") / "c.csv";
  write_classification_csv(c, path);
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  CHECK(line == "b,s,label,mode");
  std::getline(in, line);
  CHECK(line == "0,0,inside,1");
}
