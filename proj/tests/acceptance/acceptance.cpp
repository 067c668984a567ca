// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits nonzero if any criterion fails.

#include "../common/fixtures.hpp"
#include "../common/oracles.hpp"

#include "lcert/cli/run.hpp"
#include "lcert/cli/scenario.hpp"
#include "lcert/control/law.hpp"
#include "lcert/gridcert/grid.hpp"
#include "lcert/reach/ladder.hpp"
#include "lcert/util/error.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

using namespace lcert;
using namespace lcert::testing;
namespace fs = std::filesystem;

namespace {

// Pinned thresholds.
constexpr double kExample1Seconds = 60.0;
constexpr double kExample2Seconds = 300.0;
constexpr double kLIncreaseTol = 1e-7;
constexpr int kClosedLoopRuns = 100;
constexpr int kClosedLoopSteps = 50;
constexpr int kKappaStates = 1000;
constexpr int kOracleInstances = 200;
constexpr double kOracleTol = 1e-7;
constexpr double kCertifySeconds = 300.0;
constexpr double kGrowSeconds = 1800.0;
constexpr int kGrowIterations = 100;
constexpr std::size_t kGridPoints = 11325;
constexpr int kCornerPoints = 1000;
constexpr int kCornerNoises = 1000;
constexpr double kCornerFraction = 0.999;

struct Verdict {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v, int prec = 3) {
  std::ostringstream s;
  s.precision(prec);
  s << v;
  return s.str();
}

struct LinearCase {
  cli::Scenario sc;
  std::unique_ptr<sysmodel::LinearSwitchedSystem> sys;
  reach::AlgorithmResult res;
  double seconds = 0.0;
};

LinearCase run_linear(const char* file, bool with_h) {
  LinearCase c;
  c.sc = cli::load_scenario(scenario(file));
  const auto& lin = *c.sc.linear;
  c.sys = std::make_unique<sysmodel::LinearSwitchedSystem>(lin.modes, lin.X, lin.W);
  const auto t0 = std::chrono::steady_clock::now();
  c.res = reach::algorithm1(*c.sys, lin.omega0, lin.k_stop, lin.eps);
  c.seconds = seconds_since(t0);
  if (with_h) reach::compute_h(c.res.ladder);
  return c;
}

struct LawSetup {
  reach::ReachLadder ladder;
  reach::LFunction lf;
};

LawSetup law_ladder(const LinearCase& c) {
  const auto& cert = c.res.certificate;
  const int k = cert.kind == reach::CertificateKind::RCCS ? cert.k_found : cert.rcis_k;
  if (k <= 0) throw Error(ErrorCode::Precondition, "no invariant set to steer into");
  LawSetup s;
  s.ladder = reach::rebase(c.res.ladder, k);
  reach::compute_h(s.ladder);
  s.lf = reach::build_lfunction(s.ladder);
  return s;
}

Verdict criterion1(const LinearCase& k6, const LinearCase& k9) {
  Verdict v{true, ""};
  for (const LinearCase* c : {&k6, &k9}) {
    const auto& cert = c->res.certificate;
    bool counts = true;
    for (const auto& r : cert.iterations) counts = counts && r.computed_cumulative == 2 * ((std::size_t{1} << r.k) - 1);
    counts = counts && static_cast<int>(cert.iterations.size()) == c->sc.linear->k_stop;
    const std::size_t expected = c->sc.linear->k_stop == 6 ? 126 : 1022;
    const bool ok = counts && cert.polytope_count == expected && cert.kind == reach::CertificateKind::Unsuccessful &&
                    c->seconds < kExample1Seconds;
    v.pass = v.pass && ok;
    v.detail += "k_stop=" + std::to_string(c->sc.linear->k_stop) + ": " + std::to_string(cert.polytope_count) +
                " polytopes, verdict " + reach::to_string(cert.kind) + ", " + fmt(c->seconds) + " s; ";
  }
  return v;
}

Verdict criterion2(const LinearCase& k6) {
  const auto& cert = k6.res.certificate;
  const int k = cert.rcis_k;
  const bool within = k >= 2 && k <= 4;
  const std::size_t expected = k > 0 ? 2 * ((std::size_t{1} << k) - 1) : 0;
  Verdict v{within && cert.rcis_polytopes == expected,
            "first eps=0 coverage at k=" + std::to_string(k) + " with " + std::to_string(cert.rcis_polytopes) +
                " polytopes"};
  if (within && k != 3) v.detail += " (one-iteration tolerance used)";
  return v;
}

Verdict criterion3(const LinearCase& ex2) {
  const auto& cert = ex2.res.certificate;
  const auto& L = ex2.res.ladder;
  const bool rccs1 = cert.kind == reach::CertificateKind::RCCS && cert.k_found == 1 && cert.margin == 1e-6;
  const bool nested = L.h_nested.size() > 2 && L.h_nested[2] && L.h_values[2] > 0.0;
  const std::size_t domain = reach::domain_approximation(L).size();
  Verdict v{rccs1 && nested && domain == 5460 && cert.polytope_count == 5460 && ex2.seconds < kExample2Seconds, ""};
  v.detail = "verdict " + reach::to_string(cert.kind) + " at k=" + std::to_string(cert.k_found) + ", margin " +
             fmt(cert.margin) + ", level 1 inside level 2 interior: " + (nested ? "yes" : "no") + " (h=" +
             fmt(L.h_values.size() > 2 ? L.h_values[2] : 0.0) + "), D~ parts " + std::to_string(domain) + ", " +
             fmt(ex2.seconds) + " s";
  return v;
}

std::string closed_loop_summary(const control::BatchSummary& s) {
  std::string d = std::to_string(s.converged) + "/" + std::to_string(s.n_runs) + " converged, max L increase " +
                  fmt(s.max_L_increase);
  if (!s.errors.empty()) d += ", first halt: " + s.errors.front();
  return d;
}

Verdict criterion4(const LinearCase& k6, const LinearCase& k9, const LawSetup& law_setup) {
  const control::SwitchingLaw law(*k6.sys, law_setup.ladder);
  const auto stated = control::batch_simulate(law, law_setup.lf, vec2(-3, -1.2), kClosedLoopSteps, kClosedLoopRuns, 1);
  const auto& s = stated.summary;
  Verdict v{s.converged == kClosedLoopRuns && s.max_L_increase <= kLIncreaseTol, ""};
  const auto k = reach::kappa(law_setup.ladder, vec2(-3, -1.2));
  const auto k_deep = reach::kappa(k9.res.ladder, vec2(-3, -1.2));
  v.detail = "x0=(-3,-1.2): " + closed_loop_summary(s) + "; x0 in domain estimate: " + (k ? "yes" : "no") +
             ", with k_stop=9: " + (k_deep ? "level " + std::to_string(*k_deep) : std::string("no"));
  if (!v.pass) {
    const auto alt = control::batch_simulate(law, law_setup.lf, vec2(-3, 1.2), kClosedLoopSteps, kClosedLoopRuns, 1);
    v.detail += "; diagnostic from (-3,1.2): " + closed_loop_summary(alt.summary);
  }
  return v;
}

// kappa must drop by at least one for every vertex noise under the selected mode.
std::pair<int, int> kappa_violations(const sysmodel::LinearSwitchedSystem& sys, const reach::ReachLadder& ladder,
                                     std::uint64_t seed) {
  const control::SwitchingLaw law(sys, ladder);
  std::mt19937_64 rng(seed);
  const auto& X = sys.X();
  std::uniform_real_distribution<double> ux(X.lower(0), X.upper(0));
  std::uniform_real_distribution<double> uy(X.lower(1), X.upper(1));
  int states = 0;
  int violations = 0;
  long attempts = 0;
  while (states < kKappaStates && attempts < 10'000'000) {
    ++attempts;
    const Vector x = vec2(ux(rng), uy(rng));
    const auto k = reach::kappa(ladder, x);
    if (!k || *k == 0) continue;
    ++states;
    int mode = 0;
    try {
      mode = law.select_mode(x);
    } catch (const Error&) {
      ++violations;
      continue;
    }
    for (const auto& w : sys.W_vertices().vertices) {
      const auto kp = reach::kappa(ladder, sys.A(mode) * x + w);
      if (!kp || *kp > *k - 1) {
        ++violations;
        break;
      }
    }
  }
  return {states, violations};
}

Verdict criterion5(const LinearCase& k6, const LawSetup& l1, const LinearCase& ex2, const LawSetup& l2) {
  const auto [s1, v1] = kappa_violations(*k6.sys, l1.ladder, 5);
  const auto [s2, v2] = kappa_violations(*ex2.sys, l2.ladder, 6);
  return {s1 == kKappaStates && s2 == kKappaStates && v1 == 0 && v2 == 0,
          "first example " + std::to_string(v1) + " violations over " + std::to_string(s1) +
              " states, second example " + std::to_string(v2) + " over " + std::to_string(s2)};
}

Verdict criterion6() {
  const auto e = erosion_suite(kOracleInstances, 1001, kOracleTol);
  const auto p = preimage_suite(kOracleInstances, 2002, kOracleTol);
  const auto r = roundtrip_suite(kOracleInstances, 3003, kOracleTol);
  Verdict v{e.failures == 0 && p.failures == 0 && r.failures == 0 && e.instances == kOracleInstances &&
                p.instances == kOracleInstances && r.instances == kOracleInstances,
            ""};
  v.detail = "erosion " + std::to_string(e.failures) + "/" + std::to_string(e.instances) + " failures (" +
             std::to_string(e.checks) + " samples), preimage " + std::to_string(p.failures) + "/" +
             std::to_string(p.instances) + ", round trip " + std::to_string(r.failures) + "/" +
             std::to_string(r.instances);
  for (const auto* s : {&e, &p, &r})
    if (!s->first_failure.empty()) v.detail += "; " + s->first_failure;
  return v;
}

struct AMRCase {
  std::unique_ptr<sysmodel::AMRSwitchedSystem> sys;
  cli::AMRSpec spec;
};

AMRCase amr_case(const char* file) {
  const auto sc = cli::load_scenario(scenario(file));
  AMRCase c;
  c.spec = *sc.amr;
  c.sys = std::make_unique<sysmodel::AMRSwitchedSystem>(c.spec.params, c.spec.delta, c.spec.wb, c.spec.ws);
  return c;
}

Verdict criterion7(gridcert::HullLadder& grown, AMRCase& grown_case) {
  Verdict v;
  std::string sweep;
  bool any = false;
  double worst = 0.0;
  bool counts = gridcert::make_grid({150000.0, 150}).size() == kGridPoints && 150 * 151 / 2 == kGridPoints;
  for (const char* f : {"amr_fig3_a.json", "amr_fig3_b.json", "amr_fig3_c.json"}) {
    const auto c = amr_case(f);
    const auto t0 = std::chrono::steady_clock::now();
    const auto cert = gridcert::certify_rccs_grid(*c.sys, c.spec.b0, c.spec.grid, c.spec.eps);
    worst = std::max(worst, seconds_since(t0));
    counts = counts && cert.classification.size() == kGridPoints;
    any = any || cert.certified;
    sweep += "b0=" + fmt(c.spec.b0, 6) + (cert.certified ? " certified" : " not certified") + ", ";
  }
  grown_case = amr_case("amr_fig4.json");
  const auto t0 = std::chrono::steady_clock::now();
  grown = gridcert::grow_domain_grid(*grown_case.sys, grown_case.spec.b0, grown_case.spec.grid, grown_case.spec.k_max,
                                     grown_case.spec.eps, true);
  const double grow_s = seconds_since(t0);
  bool monotone = true;
  for (std::size_t k = 1; k < grown.inside_counts.size(); ++k)
    monotone = monotone && grown.inside_counts[k] > grown.inside_counts[k - 1];
  const int iters = static_cast<int>(grown.hulls.size());
  const bool long_enough = iters >= kGrowIterations || grown.fixed_point;
  v.pass = any && counts && monotone && long_enough && grown.nesting_violations == 0 && worst < kCertifySeconds &&
           grow_s < kGrowSeconds;
  v.detail = sweep + "grid " + (counts ? "11325" : "mismatch") + ", growth from b0=" + fmt(grown_case.spec.b0, 6) +
             ": " + std::to_string(iters) + " iterations" + (grown.fixed_point ? " (fixed point)" : "") + ", " +
             std::to_string(grown.nesting_violations) + " nesting violations, certification " + fmt(worst) +
             " s, growth " + fmt(grow_s) + " s";
  return v;
}

// Inside points of the last growth iteration, whose target is the previous hull.
Verdict criterion8(const gridcert::HullLadder& grown, const AMRCase& c) {
  const std::size_t n = grown.labels.size();
  if (n < 2) return {false, "growth produced fewer than two iterations"};
  const auto& labels = grown.labels[n - 1];
  const auto& target = grown.hulls[n - 2];
  std::vector<std::size_t> inside;
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i].label == gridcert::Label::Inside) inside.push_back(i);
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<std::size_t> pick(0, inside.size() - 1);
  std::uniform_real_distribution<double> wb(-c.spec.wb, c.spec.wb);
  std::uniform_real_distribution<double> ws(-c.spec.ws, c.spec.ws);
  long total = 0;
  long ok = 0;
  std::string first;
  for (int i = 0; i < kCornerPoints; ++i) {
    const auto& p = labels[inside[pick(rng)]];
    for (int s = 0; s < kCornerNoises; ++s) {
      const Vector y = c.sys->retract(sysmodel::step_amr(*c.sys, p.x, *p.mode, vec2(wb(rng), ws(rng))));
      ++total;
      if (target.contains(y)) ++ok;
      else if (first.empty())
        first = " first violation at (" + fmt(p.x(0), 8) + ", " + fmt(p.x(1), 8) + ") -> (" + fmt(y(0), 8) + ", " +
                fmt(y(1), 8) + ")";
    }
  }
  const double frac = static_cast<double>(ok) / static_cast<double>(total);
  return {frac >= kCornerFraction, fmt(frac * 100.0, 6) + "% of " + std::to_string(total) + " successors in the target (" +
                                       std::to_string(inside.size()) + " Inside points available);" + first};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Verdict criterion9() {
  Verdict v{true, ""};
  int compared = 0;
  for (const auto& e : fs::directory_iterator(source_dir() / "scenarios")) {
    if (e.path().extension() != ".json") continue;
    const auto sc = cli::load_scenario(e.path());
    const std::string stem = e.path().stem().string();
    const auto a = scratch_dir("accept_" + stem + "_a");
    const auto b = scratch_dir("accept_" + stem + "_b");
    cli::run(sc, a, 7);
    cli::run(sc, b, 7);
    std::vector<fs::path> files;
    for (const auto& f : fs::recursive_directory_iterator(a))
      if (f.path().extension() == ".csv" || f.path().filename() == "certificate.json") files.push_back(f.path());
    for (const auto& f : files) {
      const auto rel = fs::relative(f, a);
      ++compared;
      if (slurp(f) != slurp(b / rel)) {
        v.pass = false;
        v.detail += stem + "/" + rel.string() + " differs; ";
      }
    }
    fs::remove_all(a);
    fs::remove_all(b);
  }
  v.detail += std::to_string(compared) + " artifacts compared";
  return v;
}

}  // namespace

int main() {
  int failed = 0;
  auto report = [&](int id, const char* name, const std::function<Verdict()>& f) {
    Verdict v;
    try {
      v = f();
    } catch (const std::exception& e) {
      v = {false, std::string("error: ") + e.what()};
    }
    failed += v.pass ? 0 : 1;
    std::printf("[%s] %d %s: %s\n", v.pass ? "PASS" : "FAIL", id, name, v.detail.c_str());
    std::fflush(stdout);
  };

  const auto k6 = run_linear("example1.json", false);
  const auto k9 = run_linear("example1_k9.json", false);
  report(1, "first example polytope counts", [&] { return criterion1(k6, k9); });
  report(2, "first example invariant-set detection", [&] { return criterion2(k6); });

  const auto ex2 = run_linear("example2.json", true);
  report(3, "second example contractive set", [&] { return criterion3(ex2); });

  const auto l1 = law_ladder(k6);
  report(4, "closed-loop convergence", [&] { return criterion4(k6, k9, l1); });
  const auto l2 = law_ladder(ex2);
  report(5, "kappa decrease", [&] { return criterion5(k6, l1, ex2, l2); });
  report(6, "geometry oracles", criterion6);

  gridcert::HullLadder grown;
  AMRCase grown_case;
  report(7, "bacterial grid certification and growth", [&] { return criterion7(grown, grown_case); });
  report(8, "corner sufficiency", [&] { return criterion8(grown, grown_case); });
  report(9, "determinism", criterion9);

  std::printf("%d of 9 criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
