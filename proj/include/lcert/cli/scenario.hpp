#pragma once

#include "lcert/geom/types.hpp"
#include "lcert/gridcert/grid.hpp"
#include "lcert/sysmodel/system.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace lcert::cli {

struct LinearSpec {
  std::vector<geom::Matrix> modes;
  geom::Box X;
  geom::HPolytope W;
  geom::HPolytope omega0;
  int k_stop = 6;
  double eps = 1e-6;
  double law_tol = 1e-9;
  int law_grid = 101;
};

struct AMRSpec {
  sysmodel::AMRParams params;
  double delta = 0.1;
  double wb = 5.0;
  double ws = 5.0;
  double b0 = 0.0;
  double eps = 1e-6;
  gridcert::GridSpec grid;
  int k_max = 0;  ///< 0 skips the domain growth
};

struct SimulationSpec {
  geom::Vector x0;
  int steps = 50;
  int n_runs = 100;
  std::uint64_t seed = 1;
};

struct Scenario {
  std::string name;
  std::string kind;  ///< "linear" or "amr"
  std::optional<LinearSpec> linear;
  std::optional<AMRSpec> amr;
  std::optional<SimulationSpec> simulation;
  std::filesystem::path output_dir;
  nlohmann::json source;  ///< parsed file, used for the config hash
};

/// Parses and validates; every violation throws ConfigError naming the field path.
Scenario parse_scenario(const nlohmann::json& j);
Scenario load_scenario(const std::filesystem::path& path);

/// FNV-1a 64 over the canonical dump, as 16 hex digits.
std::string config_hash(const nlohmann::json& j);

}  // namespace lcert::cli
