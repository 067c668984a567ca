#include "lcert/cli/run.hpp"

#include "lcert/control/law.hpp"
#include "lcert/geom/io.hpp"
#include "lcert/geom/polytope.hpp"
#include "lcert/gridcert/grid.hpp"
#include "lcert/reach/ladder.hpp"
#include "lcert/util/error.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>

namespace lcert::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

class Clock {
 public:
  double lap() {
    const auto now = std::chrono::steady_clock::now();
    const double s = std::chrono::duration<double>(now - last_).count();
    last_ = now;
    return s;
  }

 private:
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

class Outputs {
 public:
  explicit Outputs(fs::path root) : root_(std::move(root)) { fs::create_directories(root_); }

  fs::path file(const fs::path& rel) {
    const fs::path p = root_ / rel;
    fs::create_directories(p.parent_path());
    files_.push_back(rel.generic_string());
    return p;
  }

  void json_file(const fs::path& rel, const json& j) {
    const fs::path p = file(rel);
    std::ofstream out(p);
    if (!out) throw Error(ErrorCode::Io, "cannot write " + p.string());
    out << j.dump(2) << '\n';
  }

  // Stale subdirectories from earlier runs would break the manifest.
  void reset_dir(const fs::path& rel) { fs::remove_all(root_ / rel); }

  const fs::path& root() const { return root_; }

  json manifest() const {
    auto f = files_;
    std::sort(f.begin(), f.end());
    return f;
  }

 private:
  fs::path root_;
  std::vector<std::string> files_;
};

json box_json(const geom::Box& B) { return {{"lower", geom::to_json(B.lower)}, {"upper", geom::to_json(B.upper)}}; }

// Level j of the rebased ladder is level k + j of the original as a set, so the
// boundary cache and h values carry over.
reach::ReachLadder rebase_cached(const reach::ReachLadder& L, int k) {
  auto out = reach::rebase(L, k);
  const auto uk = static_cast<std::size_t>(k);
  out.h_values = {0.0};
  out.h_nested = {true};
  for (std::size_t j = uk + 1; j < L.h_values.size(); ++j) {
    out.h_values.push_back(L.h_values[j]);
    out.h_nested.push_back(L.h_nested[j]);
  }
  if (L.boundaries.size() == L.levels.size())
    out.boundaries.assign(L.boundaries.begin() + static_cast<std::ptrdiff_t>(uk), L.boundaries.end());
  return out;
}

RunOutcome run_linear(const Scenario& sc, Outputs& out, std::optional<std::uint64_t> seed_override) {
  const LinearSpec& lin = *sc.linear;
  Clock clock;
  json timings;
  const sysmodel::LinearSwitchedSystem sys(lin.modes, lin.X, lin.W);

  auto res = reach::algorithm1(sys, lin.omega0, lin.k_stop, lin.eps);
  timings["algorithm1_s"] = clock.lap();
  reach::compute_h(res.ladder);
  timings["h_s"] = clock.lap();
  const auto& cert = res.certificate;

  int target_k = 0;
  std::string verdict = "Unsuccessful";
  if (cert.kind == reach::CertificateKind::RCCS) {
    target_k = cert.k_found;
    verdict = "RCCS";
  } else if (cert.rcis_k > 0) {
    target_k = cert.rcis_k;
    verdict = "RCIS";
  }

  out.json_file("X.json", box_json(lin.X));
  out.json_file("W.json", geom::to_json(lin.W));
  out.json_file("omega0.json", geom::to_json(lin.omega0));
  const auto eroded = geom::erode(lin.omega0, lin.W);
  out.json_file("erosion.json", geom::has_no_interior(eroded, 1e-9) ? json(nullptr) : geom::to_json(eroded));

  out.reset_dir("ladder");
  reach::save_ladder(res.ladder, out.root() / "ladder", &cert);
  for (std::size_t k = 0; k < res.ladder.shells.size(); ++k) out.file("ladder/level_" + std::to_string(k) + ".json");
  out.file("ladder/ladder_meta.json");

  json cj = reach::to_json(cert);
  cj["verdict"] = verdict;
  cj["target_k"] = target_k;
  cj["h_values"] = res.ladder.h_values;
  cj["h_nested"] = res.ladder.h_nested;
  out.json_file("certificate.json", cj);

  json report = {{"verdict", verdict},
                 {"certificate", cj},
                 {"counts",
                  {{"polytopes_computed", cert.polytope_count},
                   {"polytopes_nonempty", cert.nonempty_count},
                   {"domain_parts", reach::domain_approximation(res.ladder).size()}}}};

  if (target_k > 0) {
    const auto law_ladder = rebase_cached(res.ladder, target_k);
    const auto lf = reach::build_lfunction(law_ladder);
    const control::SwitchingLaw law(sys, law_ladder, lin.law_tol);
    out.json_file("lfunction.json", {{"target_k", target_k},
                                     {"level_values", lf.level_values},
                                     {"L_bar", lf.L_bar},
                                     {"h_values", law_ladder.h_values}});
    if (sys.dim() == 2) control::write_law_csv(control::sample_law(law, lin.law_grid), out.file("law.csv"));
    timings["law_s"] = clock.lap();

    if (sc.simulation) {
      const auto& sim = *sc.simulation;
      const std::uint64_t seed = seed_override ? *seed_override : sim.seed;
      const auto batch = control::batch_simulate(law, lf, sim.x0, sim.steps, sim.n_runs, seed);
      out.reset_dir("trajectories");
      for (std::size_t i = 0; i < batch.runs.size(); ++i) {
        char name[32];
        std::snprintf(name, sizeof name, "run_%03zu.csv", i);
        control::write_trajectory_csv(batch.runs[i], out.file(fs::path("trajectories") / name));
      }
      json sj = control::to_json(batch.summary);
      sj["seed"] = seed;
      sj["x0"] = geom::to_json(sim.x0);
      sj["steps"] = sim.steps;
      out.json_file("simulation.json", sj);
      report["simulation"] = sj;
      timings["simulation_s"] = clock.lap();
    }
  }
  report["timings"] = timings;
  return {report, target_k > 0 ? 0 : 2};
}

RunOutcome run_amr(const Scenario& sc, Outputs& out) {
  const AMRSpec& a = *sc.amr;
  Clock clock;
  json timings;
  const sysmodel::AMRSwitchedSystem sys(a.params, a.delta, a.wb, a.ws);

  const auto cert = gridcert::certify_rccs_grid(sys, a.b0, a.grid, a.eps);
  timings["certification_s"] = clock.lap();
  gridcert::write_classification_csv(cert.classification, out.file("classification.csv"));
  out.json_file("hull.json", gridcert::to_json(cert.hull));
  const json cj = {{"b0", a.b0},
                   {"eps", a.eps},
                   {"verdict", cert.certified ? "RCCS" : "Unsuccessful"},
                   {"certified", cert.certified},
                   {"inside", cert.inside},
                   {"grid_points", cert.classification.size()},
                   {"hull_vertices", cert.hull.vertices.size()}};
  out.json_file("certificate.json", cj);
  json report = {{"verdict", cj["verdict"]}, {"certificate", cj}, {"counts", {{"grid_points", cert.classification.size()}}}};

  if (cert.certified && a.k_max > 0) {
    const auto ladder = gridcert::grow_domain_grid(sys, a.b0, a.grid, a.k_max, a.eps);
    timings["growth_s"] = clock.lap();
    json hulls = json::array();
    for (std::size_t k = 0; k < ladder.hulls.size(); ++k)
      hulls.push_back({{"k", k + 1}, {"inside", ladder.inside_counts[k]}, {"hull", gridcert::to_json(ladder.hulls[k])}});
    const json gj = {{"seed_b0", ladder.seed_b0},
                     {"iterations", ladder.hulls.size()},
                     {"fixed_point", ladder.fixed_point},
                     {"nesting_violations", ladder.nesting_violations},
                     {"inside_counts", ladder.inside_counts},
                     {"hulls", hulls}};
    out.json_file("hulls.json", gj);
    report["growth"] = {{"iterations", ladder.hulls.size()},
                        {"fixed_point", ladder.fixed_point},
                        {"nesting_violations", ladder.nesting_violations},
                        {"final_inside", ladder.inside_counts.back()}};
  }
  report["timings"] = timings;
  return {report, cert.certified ? 0 : 2};
}

}  // namespace

RunOutcome run(const Scenario& sc, const fs::path& out_dir, std::optional<std::uint64_t> seed) {
  json source = sc.source;
  if (seed && sc.simulation) source["simulation"]["seed"] = *seed;
  try {
    Outputs out(out_dir);
    Clock total;
    RunOutcome res = sc.kind == "linear" ? run_linear(sc, out, seed) : run_amr(sc, out);
    res.report["name"] = sc.name;
    res.report["kind"] = sc.kind;
    res.report["config_hash"] = config_hash(source);
    res.report["exit_code"] = res.exit_code;
    res.report["timings"]["total_s"] = total.lap();
    auto files = out.manifest();
    files.push_back("report.json");
    res.report["files"] = files;
    out.json_file("report.json", res.report);
    return res;
  } catch (const Error& e) {
    throw Error(e.code(), "scenario " + sc.name + ": " + e.what());
  }
}

}  // namespace lcert::cli
