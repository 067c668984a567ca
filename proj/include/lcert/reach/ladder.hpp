#pragma once

#include "lcert/geom/boundary.hpp"
#include "lcert/geom/cover.hpp"
#include "lcert/geom/types.hpp"
#include "lcert/sysmodel/system.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace lcert::reach {

using geom::HPolytope;
using geom::IndexedUnion;
using geom::PolyUnion;
using geom::Vector;
using sysmodel::LinearSwitchedSystem;

/// Controllable-set ladder. shells[0] is the seed region and shells[k] the k-th
/// iterate; level k is the union of shells 0..k, so levels are nested by
/// construction.
struct ReachLadder {
  std::vector<PolyUnion> shells;
  std::vector<IndexedUnion> levels;  ///< levels[k] = shells[0] u ... u shells[k]
  std::vector<std::size_t> computed;  ///< per shell: polytopes computed, counting propagated empties
  std::vector<std::size_t> dropped;   ///< per shell: empty erosions or preimages discarded
  std::vector<double> h_values;       ///< h(0) = 0, then h(k) for k >= 1 once computed
  std::vector<bool> h_nested;
  std::vector<std::vector<geom::Segment2>> boundaries;  ///< planar level boundaries, filled on demand

  int max_level() const { return static_cast<int>(shells.size()) - 1; }
  const IndexedUnion& level(int k) const { return levels.at(static_cast<std::size_t>(k)); }
  /// Rebuilds `levels` from `shells` and clears cached boundaries.
  void index_levels();
  /// Computes the planar boundary of every level once (no-op otherwise).
  void index_boundaries();
};

/// {A_sigma^{-1}(P - W) n X : P in target, erosion nonempty}. Throws AllPartsEroded
/// when nothing survives; `dropped` receives the number of discarded parts.
PolyUnion controllable_set_mode(const LinearSwitchedSystem& sys, const PolyUnion& target, int sigma,
                                std::size_t* dropped = nullptr, const geom::Tolerances& tol = {});

/// Union over modes, ordered part-major then by mode.
PolyUnion controllable_set(const LinearSwitchedSystem& sys, const PolyUnion& target,
                           std::size_t* dropped = nullptr, const geom::Tolerances& tol = {});

enum class CertificateKind { RCIS, RCCS, Unsuccessful };
std::string to_string(CertificateKind k);

struct IterationRecord {
  int k = 0;
  std::size_t computed = 0;             ///< polytopes computed at this iteration, q times the previous
  std::size_t nonempty = 0;             ///< polytopes kept
  std::size_t computed_cumulative = 0;  ///< sum over j <= k
  std::size_t nonempty_cumulative = 0;
  bool covers_seed = false;             ///< seed covered by the cumulative union, eps = 0
  bool covers_seed_margin = false;      ///< seed covered with margin eps
  std::optional<bool> rcis_contractive; ///< RCIS candidate covered with margin eps (after it is found)
};

struct Certificate {
  CertificateKind kind = CertificateKind::Unsuccessful;
  int k_found = 0;                    ///< iteration of the reported outcome (0 when Unsuccessful)
  double margin = 0.0;
  std::size_t polytope_count = 0;     ///< computed polytopes over all iterations
  std::size_t nonempty_count = 0;     ///< polytopes actually kept
  int rcis_k = 0;                     ///< first k with eps = 0 coverage of the seed (0 if none)
  std::size_t rcis_polytopes = 0;     ///< computed polytopes in that RCIS union
  std::vector<IterationRecord> iterations;
  std::string diagnostic;
};

struct AlgorithmResult {
  Certificate certificate;
  ReachLadder ladder;
};

/// Iterates Omega_k = U_sigma A_sigma^{-1}(Omega_{k-1} - W) n X up to k_stop and
/// checks coverage of omega0 by U_{j<=k} Omega_j. With eps > 0 the outcome is
/// RCCS at the first k where the seed (or, when the seed is not invariant, the
/// first invariant union) is covered with margin; with eps = 0 it is RCIS at the
/// first plain coverage. The ladder is always built to k_stop.
AlgorithmResult algorithm1(const LinearSwitchedSystem& sys, const HPolytope& omega0, int k_stop, double eps,
                           const geom::Tolerances& tol = {});

/// omega covered by C(omega) with eps = 0. The empty union is vacuously invariant.
bool is_rcis(const LinearSwitchedSystem& sys, const PolyUnion& omega);
/// Every part of omega covered by C(omega) with margin eps > 0.
bool is_rccs(const LinearSwitchedSystem& sys, const PolyUnion& omega, double eps);

/// New ladder whose seed shell is shells[0..k] merged and whose shell i is the
/// old shell k + i.
ReachLadder rebase(const ReachLadder& ladder, int k);

/// Union of shells 1..K, the truncated domain-of-attraction estimate.
PolyUnion domain_approximation(const ReachLadder& ladder);

struct HValue {
  double value = 0.0;
  bool nested = false;
};
HValue h_function(const ReachLadder& ladder, int k, int nsamples = 64);
/// Fills ladder.h_values / h_nested for every level.
void compute_h(ReachLadder& ladder, int nsamples = 64);

/// Smallest k with x in level k; nullopt is OutsideDomain.
std::optional<int> kappa(const ReachLadder& ladder, const Vector& x, double tol = 1e-9);

struct LFunction {
  std::vector<double> level_values;  ///< L on level k minus level k-1
  double L_bar = 0.0;
};
/// Level values: 0 on level 0; for k >= 1 the distance from the boundary of
/// level k to level 0. L_bar = max level value + last h.
LFunction build_lfunction(const ReachLadder& ladder, int nsamples = 64);
double L_value(const LFunction& lf, const ReachLadder& ladder, const Vector& x);

nlohmann::json to_json(const Certificate& cert);

/// Writes level_k.json (the k-th shell) and ladder_meta.json.
void save_ladder(const ReachLadder& ladder, const std::filesystem::path& dir, const Certificate* cert = nullptr);
ReachLadder load_ladder(const std::filesystem::path& dir);

}  // namespace lcert::reach
