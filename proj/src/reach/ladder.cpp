#include "lcert/reach/ladder.hpp"

#include "lcert/geom/boundary.hpp"
#include "lcert/geom/io.hpp"
#include "lcert/geom/polytope.hpp"
#include "lcert/util/error.hpp"
#include "lcert/util/parallel.hpp"

#include <algorithm>
#include <fstream>

namespace lcert::reach {

using nlohmann::json;

void ReachLadder::index_levels() {
  levels.clear();
  PolyUnion acc;
  for (const auto& shell : shells) {
    acc.parts.insert(acc.parts.end(), shell.parts.begin(), shell.parts.end());
    levels.emplace_back(acc);
  }
  boundaries.clear();
}

void ReachLadder::index_boundaries() {
  if (!boundaries.empty() || levels.empty() || !levels.front().planar()) return;
  std::vector<std::vector<geom::Segment2>> out(levels.size());
  parallel_for(levels.size(), [&](std::size_t k) { out[k] = geom::union_boundary_2d(levels[k]); });
  boundaries = std::move(out);
}

namespace {

// Preimages of one eroded part under every mode, in mode order.
std::vector<std::optional<HPolytope>> preimages(const LinearSwitchedSystem& sys, const HPolytope& part,
                                                const std::vector<int>& modes, const geom::Tolerances& tol) {
  std::vector<std::optional<HPolytope>> out(modes.size());
  const HPolytope eroded = geom::erode(part, sys.W_vertices(), tol);
  if (eroded.is_canonical_empty() || geom::has_no_interior(eroded, tol.empty_radius)) return out;
  const HPolytope X = sys.X().to_hpolytope();
  for (std::size_t i = 0; i < modes.size(); ++i) {
    HPolytope Q = geom::intersect(geom::linear_preimage(sys.A(modes[i]), eroded, tol), X, tol);
    if (Q.is_canonical_empty() || geom::has_no_interior(Q, tol.empty_radius)) continue;
    out[i] = std::move(Q);
  }
  return out;
}

PolyUnion controllable_set_modes(const LinearSwitchedSystem& sys, const PolyUnion& target, const std::vector<int>& modes,
                                 std::size_t* dropped, const geom::Tolerances& tol) {
  std::vector<std::vector<std::optional<HPolytope>>> slots(target.size());
  parallel_for(target.size(), [&](std::size_t i) { slots[i] = preimages(sys, target.parts[i], modes, tol); });
  PolyUnion out;
  std::size_t lost = 0;
  for (auto& slot : slots)
    for (auto& q : slot) {
      if (q) out.parts.push_back(std::move(*q));
      else ++lost;
    }
  if (dropped) *dropped = lost;
  if (out.empty() && !target.empty())
    throw Error(ErrorCode::AllPartsEroded, "every part vanished under erosion by W or intersection with X");
  return out;
}

std::vector<int> all_modes(const LinearSwitchedSystem& sys) {
  std::vector<int> m;
  for (int s = 1; s <= sys.num_modes(); ++s) m.push_back(s);
  return m;
}

bool covered_by(const PolyUnion& omega, const IndexedUnion& cover, double eps) {
  return std::all_of(omega.parts.begin(), omega.parts.end(),
                     [&](const HPolytope& P) { return cover.covers(P, eps); });
}

}  // namespace

PolyUnion controllable_set_mode(const LinearSwitchedSystem& sys, const PolyUnion& target, int sigma,
                                std::size_t* dropped, const geom::Tolerances& tol) {
  sys.A(sigma);
  return controllable_set_modes(sys, target, {sigma}, dropped, tol);
}

PolyUnion controllable_set(const LinearSwitchedSystem& sys, const PolyUnion& target, std::size_t* dropped,
                           const geom::Tolerances& tol) {
  return controllable_set_modes(sys, target, all_modes(sys), dropped, tol);
}

std::string to_string(CertificateKind k) {
  switch (k) {
    case CertificateKind::RCIS: return "RCIS";
    case CertificateKind::RCCS: return "RCCS";
    case CertificateKind::Unsuccessful: return "Unsuccessful";
  }
  return "Unsuccessful";
}

AlgorithmResult algorithm1(const LinearSwitchedSystem& sys, const HPolytope& omega0, int k_stop, double eps,
                           const geom::Tolerances& tol) {
  if (k_stop < 1) throw Error(ErrorCode::Precondition, "k_stop must be at least 1");
  if (eps < 0.0) throw Error(ErrorCode::Precondition, "eps must be nonnegative");
  const HPolytope seed = geom::canonicalize(omega0, tol);
  if (seed.is_canonical_empty()) throw Error(ErrorCode::Empty, "omega0 is empty");

  AlgorithmResult res;
  Certificate& cert = res.certificate;
  ReachLadder& L = res.ladder;
  cert.margin = eps;
  L.shells.push_back(PolyUnion({seed}));
  L.computed.push_back(1);
  L.dropped.push_back(0);

  const std::size_t q = static_cast<std::size_t>(sys.num_modes());
  PolyUnion cumulative;
  PolyUnion rcis_union;
  bool decided = false;
  bool seed_invariant = false;
  std::size_t computed_total = 0;

  for (int k = 1; k <= k_stop; ++k) {
    std::size_t lost = 0;
    PolyUnion next;
    try {
      next = controllable_set(sys, L.shells.back(), &lost, tol);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::AllPartsEroded) throw;
      cert.diagnostic = "iteration " + std::to_string(k) + ": " + e.what();
      break;
    }
    IterationRecord rec;
    rec.k = k;
    rec.computed = q * L.computed.back();
    rec.nonempty = next.size();
    computed_total += rec.computed;
    rec.computed_cumulative = computed_total;
    cumulative.parts.insert(cumulative.parts.end(), next.parts.begin(), next.parts.end());
    rec.nonempty_cumulative = cumulative.size();
    L.computed.push_back(rec.computed);
    L.dropped.push_back(lost);
    L.shells.push_back(std::move(next));

    if (!decided) {
      const IndexedUnion cover(cumulative, tol);
      rec.covers_seed = cover.covers(seed, 0.0);
      rec.covers_seed_margin = eps > 0.0 && rec.covers_seed && cover.covers(seed, eps);
      if (k == 1 && rec.covers_seed) seed_invariant = true;
      if (rec.covers_seed && cert.rcis_k == 0) {
        cert.rcis_k = k;
        cert.rcis_polytopes = computed_total;
        rcis_union = cumulative;
      }
      if (eps == 0.0) {
        if (rec.covers_seed) {
          cert.kind = CertificateKind::RCIS;
          cert.k_found = k;
          decided = true;
        }
      } else if (rec.covers_seed_margin && (seed_invariant || k == 1)) {
        cert.kind = CertificateKind::RCCS;
        cert.k_found = k;
        decided = true;
      } else if (cert.rcis_k > 0 && k > cert.rcis_k) {
        rec.rcis_contractive = covered_by(rcis_union, cover, eps);
        if (*rec.rcis_contractive) {
          cert.kind = CertificateKind::RCCS;
          cert.k_found = k;
          decided = true;
        }
      }
    }
    cert.iterations.push_back(rec);
  }
  cert.polytope_count = computed_total;
  cert.nonempty_count = cumulative.size();
  L.index_levels();
  return res;
}

bool is_rcis(const LinearSwitchedSystem& sys, const PolyUnion& omega) {
  if (omega.empty()) return true;
  try {
    const IndexedUnion C(controllable_set(sys, omega));
    return covered_by(omega, C, 0.0);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::AllPartsEroded) return false;
    throw;
  }
}

bool is_rccs(const LinearSwitchedSystem& sys, const PolyUnion& omega, double eps) {
  if (!(eps > 0.0)) throw Error(ErrorCode::Precondition, "is_rccs needs eps > 0");
  if (omega.empty()) return true;
  try {
    const IndexedUnion C(controllable_set(sys, omega));
    return covered_by(omega, C, eps);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::AllPartsEroded) return false;
    throw;
  }
}

ReachLadder rebase(const ReachLadder& ladder, int k) {
  if (k < 0 || k > ladder.max_level()) throw Error(ErrorCode::Precondition, "rebase index outside the ladder");
  ReachLadder out;
  PolyUnion seed;
  std::size_t computed = 0;
  std::size_t dropped = 0;
  for (int j = 0; j <= k; ++j) {
    const auto& s = ladder.shells[static_cast<std::size_t>(j)];
    seed.parts.insert(seed.parts.end(), s.parts.begin(), s.parts.end());
    computed += ladder.computed[static_cast<std::size_t>(j)];
    dropped += ladder.dropped[static_cast<std::size_t>(j)];
  }
  out.shells.push_back(std::move(seed));
  out.computed.push_back(computed);
  out.dropped.push_back(dropped);
  for (int j = k + 1; j <= ladder.max_level(); ++j) {
    out.shells.push_back(ladder.shells[static_cast<std::size_t>(j)]);
    out.computed.push_back(ladder.computed[static_cast<std::size_t>(j)]);
    out.dropped.push_back(ladder.dropped[static_cast<std::size_t>(j)]);
  }
  out.index_levels();
  return out;
}

PolyUnion domain_approximation(const ReachLadder& ladder) {
  if (ladder.shells.empty()) throw Error(ErrorCode::Precondition, "empty ladder");
  if (ladder.max_level() == 0) return ladder.shells[0];
  PolyUnion out;
  for (std::size_t k = 1; k < ladder.shells.size(); ++k)
    out.parts.insert(out.parts.end(), ladder.shells[k].parts.begin(), ladder.shells[k].parts.end());
  return out;
}

HValue h_function(const ReachLadder& ladder, int k, int nsamples) {
  if (k < 0 || k > ladder.max_level()) throw Error(ErrorCode::Precondition, "h index outside the ladder");
  if (k == 0) return {0.0, true};
  const auto uk = static_cast<std::size_t>(k);
  const auto d = ladder.boundaries.size() == ladder.levels.size()
                     ? geom::boundary_set_distance(ladder.boundaries[uk - 1], ladder.boundaries[uk], ladder.level(k))
                     : geom::boundary_set_distance(ladder.level(k - 1), ladder.level(k), nsamples);
  return {d.value, d.nested};
}

void compute_h(ReachLadder& ladder, int nsamples) {
  ladder.index_boundaries();
  const std::size_t n = ladder.shells.size();
  std::vector<HValue> hv(n);
  parallel_for(n, [&](std::size_t k) { hv[k] = h_function(ladder, static_cast<int>(k), nsamples); });
  ladder.h_values.clear();
  ladder.h_nested.clear();
  for (const auto& h : hv) {
    ladder.h_values.push_back(h.value);
    ladder.h_nested.push_back(h.nested);
  }
}

std::optional<int> kappa(const ReachLadder& ladder, const Vector& x, double tol) {
  for (std::size_t k = 0; k < ladder.shells.size(); ++k)
    for (const auto& P : ladder.shells[k].parts)
      if (P.contains(x, tol)) return static_cast<int>(k);
  return std::nullopt;
}

LFunction build_lfunction(const ReachLadder& ladder, int nsamples) {
  LFunction lf;
  const std::size_t n = ladder.shells.size();
  lf.level_values.assign(n, 0.0);
  const IndexedUnion& base = ladder.level(0);
  const bool cached = ladder.boundaries.size() == ladder.levels.size();
  parallel_for(n, [&](std::size_t k) {
    if (k == 0) return;
    lf.level_values[k] = cached ? geom::boundary_to_set_distance(ladder.boundaries[k], base)
                                : geom::boundary_to_set_distance(ladder.level(static_cast<int>(k)),
                                                                 base.polyunion(), nsamples);
  });
  const double top = *std::max_element(lf.level_values.begin(), lf.level_values.end());
  const double last_h = ladder.h_values.empty() ? 0.0 : ladder.h_values.back();
  lf.L_bar = top + last_h;
  return lf;
}

double L_value(const LFunction& lf, const ReachLadder& ladder, const Vector& x) {
  const auto k = kappa(ladder, x);
  if (!k) return lf.L_bar;
  return lf.level_values.at(static_cast<std::size_t>(*k));
}

json to_json(const Certificate& cert) {
  json iters = json::array();
  for (const auto& r : cert.iterations) {
    json j = {{"k", r.k},
              {"computed", r.computed},
              {"nonempty", r.nonempty},
              {"computed_cumulative", r.computed_cumulative},
              {"nonempty_cumulative", r.nonempty_cumulative},
              {"covers_seed", r.covers_seed},
              {"covers_seed_margin", r.covers_seed_margin}};
    if (r.rcis_contractive) j["rcis_contractive"] = *r.rcis_contractive;
    iters.push_back(j);
  }
  return {{"kind", to_string(cert.kind)},
          {"k_found", cert.k_found},
          {"margin", cert.margin},
          {"polytope_count", cert.polytope_count},
          {"nonempty_count", cert.nonempty_count},
          {"rcis_k", cert.rcis_k},
          {"rcis_polytopes", cert.rcis_polytopes},
          {"iterations", iters},
          {"diagnostic", cert.diagnostic}};
}

void save_ladder(const ReachLadder& ladder, const std::filesystem::path& dir, const Certificate* cert) {
  std::filesystem::create_directories(dir);
  json shells = json::array();
  for (std::size_t k = 0; k < ladder.shells.size(); ++k) {
    const auto path = dir / ("level_" + std::to_string(k) + ".json");
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
    out << geom::to_json(ladder.shells[k]).dump() << '\n';
    shells.push_back({{"k", k},
                      {"parts", ladder.shells[k].size()},
                      {"computed", ladder.computed[k]},
                      {"dropped", ladder.dropped[k]}});
  }
  json meta = {{"levels", ladder.shells.size()},
               {"level_files", "level_k.json holds shell k; level k is the union of shells 0..k"},
               {"shells", shells},
               {"h_values", ladder.h_values},
               {"h_nested", ladder.h_nested}};
  if (cert) meta["certificate"] = to_json(*cert);
  std::ofstream out(dir / "ladder_meta.json");
  if (!out) throw Error(ErrorCode::Io, "cannot write ladder_meta.json");
  out << meta.dump(2) << '\n';
}

ReachLadder load_ladder(const std::filesystem::path& dir) {
  std::ifstream meta_in(dir / "ladder_meta.json");
  if (!meta_in) throw Error(ErrorCode::MissingArtifact, "no ladder_meta.json in " + dir.string());
  const json meta = json::parse(meta_in);
  ReachLadder L;
  const std::size_t n = meta.at("levels").get<std::size_t>();
  for (std::size_t k = 0; k < n; ++k) {
    std::ifstream in(dir / ("level_" + std::to_string(k) + ".json"));
    if (!in) throw Error(ErrorCode::MissingArtifact, "missing level_" + std::to_string(k) + ".json");
    L.shells.push_back(geom::polyunion_from_json(json::parse(in)));
    const auto& s = meta.at("shells").at(k);
    L.computed.push_back(s.at("computed").get<std::size_t>());
    L.dropped.push_back(s.at("dropped").get<std::size_t>());
  }
  L.h_values = meta.at("h_values").get<std::vector<double>>();
  L.h_nested = meta.at("h_nested").get<std::vector<bool>>();
  L.index_levels();
  return L;
}

}  // namespace lcert::reach
