#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace lcert::cli {

/// Figure names accepted by plot().
const std::vector<std::string>& figure_names();

/// Renders <run_dir>/<figure>.svg from the run's artifacts and returns its path.
/// Output depends only on the artifacts, so identical runs give identical files.
/// Throws MissingArtifact when an input is absent and Precondition for an
/// unknown figure or one that does not apply to the run's kind.
std::filesystem::path plot(const std::filesystem::path& run_dir, const std::string& figure);

}  // namespace lcert::cli
