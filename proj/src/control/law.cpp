#include "lcert/control/law.hpp"

#include "lcert/geom/polytope.hpp"
#include "lcert/geom/projection.hpp"
#include "lcert/util/error.hpp"
#include "lcert/util/format.hpp"
#include "lcert/util/parallel.hpp"

#include <algorithm>
#include <fstream>
#include <random>

namespace lcert::control {

SwitchingLaw::SwitchingLaw(const LinearSwitchedSystem& sys, const ReachLadder& ladder, double tol)
    : sys_(sys), ladder_(ladder), tol_(tol), w_solid_(!geom::has_no_interior(sys.W(), 1e-9)) {
  if (ladder_.levels.size() != ladder_.shells.size() || ladder_.shells.empty())
    throw Error(ErrorCode::Precondition, "the ladder has no indexed levels");
}

bool SwitchingLaw::certifies(const Vector& x, int sigma, int level) const {
  const Vector center = sys_.A(sigma) * x;
  const auto& Wv = sys_.W_vertices().vertices;
  const auto& U = ladder_.level(level);
  const auto& parts = U.polyunion().parts;
  Vector lo = center + Wv.front();
  Vector hi = lo;
  for (const auto& w : Wv) {
    lo = lo.cwiseMin(center + w);
    hi = hi.cwiseMax(center + w);
  }
  for (std::size_t j = 0; j < parts.size(); ++j) {
    // All successors in one part requires their bounding box inside the part's.
    const auto& box = U.bbox(j);
    if (((lo - box.min()).array() < -tol_).any() || ((box.max() - hi).array() < -tol_).any()) continue;
    bool all_in = true;
    for (const auto& w : Wv)
      if (!parts[j].contains(center + w, tol_)) {
        all_in = false;
        break;
      }
    if (all_in) return true;
  }
  // The successor set may straddle several parts. Coverage ignores sets of
  // measure zero, so a flat W only gets the single-part test.
  if (!w_solid_) return false;
  const geom::HPolytope& W = sys_.W();
  const geom::HPolytope shifted(W.A(), W.b() + W.A() * center);
  return U.covers(shifted, 0.0);
}

SwitchingLaw::Decision SwitchingLaw::decide(const Vector& x) const {
  const auto k = reach::kappa(ladder_, x, tol_);
  if (!k) throw Error(ErrorCode::OutsideDomain, "state is outside the ladder");
  const int target = std::max(*k - 1, 0);
  for (int sigma = 1; sigma <= sys_.num_modes(); ++sigma)
    if (certifies(x, sigma, target)) return {sigma, *k};
  throw Error(ErrorCode::NoCertifiedMode, "no mode maps the state into level " + std::to_string(target));
}

namespace {

class NoiseSampler {
 public:
  NoiseSampler(const LinearSwitchedSystem& sys, std::uint64_t seed) : W_(sys.W()), rng_(seed) {
    const auto& V = sys.W_vertices().vertices;
    lo_ = V.front();
    hi_ = V.front();
    for (const auto& v : V) {
      lo_ = lo_.cwiseMin(v);
      hi_ = hi_.cwiseMax(v);
    }
  }

  Vector draw() {
    for (int attempt = 0; attempt < 100000; ++attempt) {
      Vector w(lo_.size());
      for (Eigen::Index i = 0; i < w.size(); ++i) w(i) = std::uniform_real_distribution<double>(lo_(i), hi_(i))(rng_);
      if (W_.contains(w, 0.0)) return w;
    }
    throw Error(ErrorCode::Precondition, "rejection sampling of W failed");
  }

 private:
  const geom::HPolytope& W_;
  std::mt19937_64 rng_;
  Vector lo_;
  Vector hi_;
};

}  // namespace

Trajectory simulate(const SwitchingLaw& law, const LFunction& lf, const Vector& x0, int steps, std::uint64_t seed) {
  const auto& sys = law.system();
  const auto& ladder = law.ladder();
  Trajectory t;
  t.seed = seed;
  NoiseSampler sampler(sys, seed);
  Vector x = x0;
  auto record = [&](const Vector& s) {
    const auto k = reach::kappa(ladder, s, law.tolerance());
    t.states.push_back(s);
    t.kappas.push_back(k ? *k : -1);
    t.L_values.push_back(k ? lf.level_values.at(static_cast<std::size_t>(*k)) : lf.L_bar);
  };
  record(x);
  if (!sys.X().contains(x, 1e-9)) {
    t.halted = true;
    t.error = "ConstraintViolation: initial state outside X";
  }
  for (int step = 0; step < steps && !t.halted; ++step) {
    int mode = 0;
    try {
      mode = law.select_mode(x);
    } catch (const Error& e) {
      t.halted = true;
      t.error = e.what();
      break;
    }
    const Vector w = sampler.draw();
    const Vector next = sysmodel::step_linear(sys, x, mode, w);
    t.modes.push_back(mode);
    t.noises.push_back(w);
    const double L_prev = t.L_values.back();
    const bool outside_target = t.kappas.back() != 0;
    record(next);
    if (outside_target) t.max_L_increase = std::max(t.max_L_increase, t.L_values.back() - L_prev);
    if (!sys.X().contains(next, 1e-9)) {
      t.halted = true;
      t.error = "ConstraintViolation: state left X at step " + std::to_string(step + 1);
    }
    x = next;
  }
  int last_outside = -1;
  for (std::size_t i = 0; i < t.kappas.size(); ++i)
    if (t.kappas[i] != 0) last_outside = static_cast<int>(i);
  if (last_outside + 1 < static_cast<int>(t.kappas.size())) t.entry_step = last_outside + 1;
  t.converged = !t.halted && t.entry_step >= 0;
  return t;
}

BatchResult batch_simulate(const SwitchingLaw& law, const LFunction& lf, const Vector& x0, int steps, int n_runs,
                           std::uint64_t base_seed) {
  if (n_runs < 1) throw Error(ErrorCode::Precondition, "n_runs must be positive");
  BatchResult res;
  res.runs.resize(static_cast<std::size_t>(n_runs));
  parallel_for(res.runs.size(), [&](std::size_t i) { res.runs[i] = simulate(law, lf, x0, steps, base_seed + i); });
  auto& s = res.summary;
  s.n_runs = n_runs;
  const auto& target = law.ladder().level(0).polyunion();
  for (std::size_t i = 0; i < res.runs.size(); ++i) {
    const auto& r = res.runs[i];
    if (r.converged) ++s.converged;
    if (r.halted) {
      ++s.halted;
      s.errors.push_back("run " + std::to_string(i) + ": " + r.error);
    }
    s.max_final_distance = std::max(s.max_final_distance, geom::dist_point_to_polyunion(r.states.back(), target));
    if (std::isfinite(r.max_L_increase)) s.max_L_increase = std::max(s.max_L_increase, r.max_L_increase);
  }
  s.fraction_converged = static_cast<double>(s.converged) / n_runs;
  return res;
}

void write_trajectory_csv(const Trajectory& t, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
  out << "step,x1,x2,mode,w1,w2,L\n";
  for (std::size_t i = 0; i < t.states.size(); ++i) {
    const bool has_move = i < t.modes.size();
    const Vector& x = t.states[i];
    out << i << ',' << format_double(x(0)) << ',' << format_double(x.size() > 1 ? x(1) : 0.0) << ','
        << (has_move ? t.modes[i] : 0) << ',' << format_double(has_move ? t.noises[i](0) : 0.0) << ','
        << format_double(has_move && t.noises[i].size() > 1 ? t.noises[i](1) : 0.0) << ','
        << format_double(t.L_values[i]) << '\n';
  }
}

nlohmann::json to_json(const BatchSummary& s) {
  return {{"n_runs", s.n_runs},
          {"converged", s.converged},
          {"fraction_converged", s.fraction_converged},
          {"max_final_distance", s.max_final_distance},
          {"max_L_increase", s.max_L_increase},
          {"halted", s.halted},
          {"errors", s.errors}};
}

std::vector<LawSample> sample_law(const SwitchingLaw& law, int per_axis) {
  if (per_axis < 2) throw Error(ErrorCode::Precondition, "law grid needs at least 2 points per axis");
  const auto& X = law.system().X();
  if (X.dim() != 2) throw Error(ErrorCode::DimensionMismatch, "law sampling is planar");
  std::vector<LawSample> out(static_cast<std::size_t>(per_axis) * static_cast<std::size_t>(per_axis));
  parallel_for(out.size(), [&](std::size_t idx) {
    const std::size_t i = idx % static_cast<std::size_t>(per_axis);
    const std::size_t j = idx / static_cast<std::size_t>(per_axis);
    Vector x(2);
    x(0) = X.lower(0) + (X.upper(0) - X.lower(0)) * static_cast<double>(i) / (per_axis - 1);
    x(1) = X.lower(1) + (X.upper(1) - X.lower(1)) * static_cast<double>(j) / (per_axis - 1);
    LawSample s;
    s.x = x;
    try {
      const auto d = law.decide(x);
      s.mode = d.mode;
      s.kappa = d.kappa;
    } catch (const Error&) {
      const auto k = reach::kappa(law.ladder(), x, law.tolerance());
      s.kappa = k ? *k : -1;
    }
    out[idx] = std::move(s);
  });
  return out;
}

void write_law_csv(const std::vector<LawSample>& samples, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
  out << "x1,x2,mode,kappa\n";
  for (const auto& s : samples)
    out << format_double(s.x(0)) << ',' << format_double(s.x(1)) << ',' << s.mode << ',' << s.kappa << '\n';
}

}  // namespace lcert::control
