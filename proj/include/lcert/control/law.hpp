#pragma once

#include "lcert/reach/ladder.hpp"
#include "lcert/sysmodel/system.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <limits>
#include <string>
#include <vector>

namespace lcert::control {

using geom::Vector;
using reach::LFunction;
using reach::ReachLadder;
using sysmodel::LinearSwitchedSystem;

/// sigma(x) = min{sigma : A_sigma x + W lies in level kappa(x) - 1}. On level 0
/// the same rule is applied with level 0 as the target.
class SwitchingLaw {
 public:
  SwitchingLaw(const LinearSwitchedSystem& sys, const ReachLadder& ladder, double tol = 1e-9);

  struct Decision {
    int mode = 0;
    int kappa = 0;
  };

  /// Throws OutsideDomain beyond the ladder and NoCertifiedMode if no mode works.
  Decision decide(const Vector& x) const;
  int select_mode(const Vector& x) const { return decide(x).mode; }

  /// True when every successor A_sigma x + w, w in W, lies in the given level:
  /// first tried against single parts, then by exact union coverage.
  bool certifies(const Vector& x, int sigma, int level) const;

  const LinearSwitchedSystem& system() const { return sys_; }
  const ReachLadder& ladder() const { return ladder_; }
  double tolerance() const { return tol_; }

 private:
  const LinearSwitchedSystem& sys_;
  const ReachLadder& ladder_;
  double tol_;
  bool w_solid_;
};

struct Trajectory {
  std::vector<Vector> states;  ///< steps + 1 entries unless halted
  std::vector<int> modes;
  std::vector<Vector> noises;
  std::vector<double> L_values;  ///< one per state
  std::vector<int> kappas;       ///< one per state, -1 outside the ladder
  std::uint64_t seed = 0;
  int entry_step = -1;       ///< first step from which the state stays in level 0
  bool converged = false;    ///< entered level 0 and stayed there to the horizon
  bool halted = false;       ///< stopped early on an error
  std::string error;         ///< ConstraintViolation, OutsideDomain or NoCertifiedMode message
  double max_L_increase = -std::numeric_limits<double>::infinity();  ///< over transitions starting outside level 0
};

/// Closed loop x+ = A_sigma(x) x + w with w uniform on W (per-coordinate draws for
/// a box, rejection from the bounding box otherwise) from a seeded generator.
Trajectory simulate(const SwitchingLaw& law, const LFunction& lf, const Vector& x0, int steps, std::uint64_t seed);

struct BatchSummary {
  int n_runs = 0;
  int converged = 0;
  double fraction_converged = 0.0;
  double max_final_distance = 0.0;  ///< distance of the final states to level 0
  double max_L_increase = 0.0;
  int halted = 0;
  std::vector<std::string> errors;
};

struct BatchResult {
  std::vector<Trajectory> runs;
  BatchSummary summary;
};

/// Runs use seeds base_seed + i and are merged in run order.
BatchResult batch_simulate(const SwitchingLaw& law, const LFunction& lf, const Vector& x0, int steps, int n_runs,
                           std::uint64_t base_seed);

/// Columns step, x1, x2, mode, w1, w2, L. The final state carries mode 0 and zero noise.
void write_trajectory_csv(const Trajectory& t, const std::filesystem::path& path);
nlohmann::json to_json(const BatchSummary& s);

struct LawSample {
  Vector x;
  int mode = 0;   ///< 0 outside the ladder or when no mode is certified
  int kappa = -1;
};
/// The law on a per_axis x per_axis grid over X, row-major in x2 then x1.
std::vector<LawSample> sample_law(const SwitchingLaw& law, int per_axis);
void write_law_csv(const std::vector<LawSample>& samples, const std::filesystem::path& path);

}  // namespace lcert::control
