#pragma once

#include "lcert/cli/scenario.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>

namespace lcert::cli {

struct RunOutcome {
  nlohmann::json report;
  int exit_code = 0;  ///< 0 certified or invariant set found, 2 computed but not certified
};

/// Runs the scenario's pipeline and writes every artifact plus report.json under
/// out_dir. `seed` overrides simulation.seed. Errors are rethrown with the
/// scenario name prepended.
RunOutcome run(const Scenario& sc, const std::filesystem::path& out_dir, std::optional<std::uint64_t> seed = {});

}  // namespace lcert::cli
