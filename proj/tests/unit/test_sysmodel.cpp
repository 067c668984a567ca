#include "../common/fixtures.hpp"

#include "lcert/sysmodel/system.hpp"
#include "lcert/util/error.hpp"

#include <doctest.h>

using namespace lcert;
using namespace lcert::testing;
using namespace lcert::sysmodel;

TEST_CASE("linear step") {
  const auto sys = example1_system();
  for (int sigma = 1; sigma <= 2; ++sigma) CHECK(step_linear(sys, vec2(0, 0), sigma, vec2(0, 0)).norm() == 0.0);
  CHECK(step_linear(sys, vec2(1, 0), 1, vec2(0, 0)).isApprox(vec2(0.3, -0.5)));
  CHECK(step_linear(sys, vec2(1, 0), 1, vec2(0.1, -0.1)).isApprox(vec2(0.4, -0.6)));
  CHECK(step_linear(example2_system(), vec2(0, 1), 3, vec2(0, 0)).isApprox(vec2(0.3912, 1.0409)));
}

TEST_CASE("linear step rejects bad modes and noise outside W") {
  const auto sys = example1_system();
  CHECK_THROWS_WITH_AS(step_linear(sys, vec2(0, 0), 3, vec2(0, 0)), doctest::Contains("ModeOutOfRange"), Error);
  CHECK_THROWS_WITH_AS(step_linear(sys, vec2(0, 0), 0, vec2(0, 0)), doctest::Contains("ModeOutOfRange"), Error);
  CHECK_THROWS_WITH_AS(step_linear(sys, vec2(0, 0), 1, vec2(0.2, 0)), doctest::Contains("UncertaintyOutOfSet"),
                       Error);
}

TEST_CASE("system construction validates its inputs") {
  const auto X = box2(-6, -6, 6, 6);
  const auto W = hbox2(-0.1, -0.1, 0.1, 0.1);
  CHECK_THROWS_AS(LinearSwitchedSystem({example1_A1()}, X, W), Error);
  CHECK_THROWS_AS(LinearSwitchedSystem({example1_A1(), mat2(1, 2, 2, 4)}, X, W), Error);
  CHECK_THROWS_AS(LinearSwitchedSystem({example1_A1(), example1_A2()}, box2(1, 1, 6, 6), W), Error);
  CHECK_THROWS_AS(LinearSwitchedSystem({example1_A1(), example1_A2()}, X, hbox2(0.1, 0.1, 0.2, 0.2)), Error);
  const LinearSwitchedSystem sys({example1_A1(), example1_A2()}, X, W);
  CHECK(sys.num_modes() == 2);
  CHECK(sys.W_vertices().vertices.size() == 4);
}

TEST_CASE("immune response") {
  const AMRParams p;
  CHECK(immune_rate(p, 0.0) == doctest::Approx(p.beta));
  CHECK(immune_rate(p, p.K) == doctest::Approx(p.beta / 2));
  double prev = immune_rate(p, 0.0);
  for (double b = 1000.0; b <= 1e9; b *= 3.0) {
    const double r = immune_rate(p, b);
    CHECK(r < prev);
    prev = r;
  }
  CHECK(prev < 1e-3);
  CHECK_THROWS_WITH_AS(immune_rate(p, -1.0), doctest::Contains("NegativeLoad"), Error);
}

TEST_CASE("parameter invariants") {
  AMRParams p;
  CHECK_NOTHROW(p.validate());
  p.beta = 0.1;  // immune kill below growth
  CHECK_THROWS_AS(p.validate(), Error);
  p = AMRParams{};
  p.K = 2 * p.N;
  CHECK_THROWS_AS(p.validate(), Error);
}

TEST_CASE("bacterial vector field") {
  const AMRParams p;
  for (int sigma = 1; sigma <= 2; ++sigma) CHECK(amr_vector_field(p, vec2(0, 0), sigma).norm() == 0.0);
  for (double b : {10.0, 5e4, 2e6}) CHECK(amr_vector_field(p, vec2(b, 0), 1).isApprox(amr_vector_field(p, vec2(b, 0), 2)));

  const double IN = p.beta * p.K / (p.K + p.N);
  const auto f = amr_vector_field(p, vec2(p.N, 0), 1);
  CHECK(f(0) == doctest::Approx(-IN * p.N));
  CHECK(f(1) == doctest::Approx(0.0));

  // antibiotic terms act on the susceptible load only
  const auto g1 = amr_vector_field(p, vec2(1e5, 4e4), 1);
  const auto g2 = amr_vector_field(p, vec2(1e5, 4e4), 2);
  CHECK(g1(0) - g2(0) == doctest::Approx(p.D_M * 4e4));
  CHECK(g1(1) - g2(1) == doctest::Approx((p.D_M + p.mu) * 4e4));

  CHECK_THROWS_WITH_AS(amr_vector_field(p, vec2(10, 20), 1), doctest::Contains("DomainViolation"), Error);
  CHECK_THROWS_AS(amr_vector_field(p, vec2(10, 5), 3), Error);
}

TEST_CASE("discretized bacterial step") {
  const AMRParams p;
  const AMRSwitchedSystem zero_step(p, 0.0, 5.0, 5.0);
  CHECK(step_amr(zero_step, vec2(3e4, 1e4), 2, vec2(0, 0)).isApprox(vec2(3e4, 1e4)));

  const AMRSwitchedSystem sys(p, 0.1, 5.0, 5.0);
  CHECK(step_amr(sys, vec2(0, 0), 1, vec2(4, -2)).isApprox(vec2(4, -2)));

  const double K = p.K;
  const double logistic = 1.0 - K / p.N;
  const Vector expected = vec2(K + 0.1 * (p.alpha * K * logistic - p.beta / 2 * K),
                               K / 2 + 0.1 * (p.alpha * K / 2 * logistic - p.beta / 2 * K / 2));
  CHECK(step_amr(sys, vec2(K, K / 2), 1, vec2(0, 0)).isApprox(expected, 1e-14));

  CHECK_THROWS_WITH_AS(step_amr(sys, vec2(10, 5), 1, vec2(6, 0)), doctest::Contains("UncertaintyOutOfSet"), Error);
}

TEST_CASE("retraction onto the triangle") {
  const AMRSwitchedSystem sys(AMRParams{}, 0.1, 5.0, 5.0);
  CHECK(sys.retract(vec2(-3, -1)).isApprox(vec2(0, 0)));
  CHECK(sys.retract(vec2(10, 12)).isApprox(vec2(10, 10)));
  CHECK(sys.retract(vec2(2e7, 1)).isApprox(vec2(1e7, 1)));
  CHECK(sys.in_domain(vec2(10, 10)));
  CHECK_FALSE(sys.in_domain(vec2(10, 11)));
}
