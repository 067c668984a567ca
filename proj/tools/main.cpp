#include "lcert/cli/plot.hpp"
#include "lcert/cli/run.hpp"
#include "lcert/cli/scenario.hpp"
#include "lcert/util/error.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
  CLI::App app{"Controllable-set certificates and switching laws for switched systems"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  auto* run = app.add_subcommand("run", "run a scenario and write its artifacts");
  run->add_option("scenario", scenario_path, "scenario JSON file")->required();
  run->add_option("--out", out_dir, "output directory (default: the scenario's output_dir)");
  auto* seed_opt = run->add_option("--seed", seed, "override the simulation seed");

  std::string run_dir;
  std::string figure;
  auto* plot = app.add_subcommand("plot", "render an SVG figure from a run directory");
  plot->add_option("run_dir", run_dir, "run directory")->required();
  plot->add_option("--figure", figure, "figure name")
      ->required()
      ->check(CLI::IsMember(lcert::cli::figure_names()));

  auto* validate = app.add_subcommand("validate", "parse and validate a scenario without running it");
  validate->add_option("scenario", scenario_path, "scenario JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (*run) {
      const auto sc = lcert::cli::load_scenario(scenario_path);
      const auto dir = out_dir.empty() ? sc.output_dir : std::filesystem::path(out_dir);
      const auto res = lcert::cli::run(sc, dir, seed_opt->count() ? std::optional<std::uint64_t>(seed) : std::nullopt);
      std::cout << sc.name << ": " << res.report.at("verdict").get<std::string>() << " (exit " << res.exit_code
                << "), report at " << (dir / "report.json").string() << '\n';
      return res.exit_code;
    }
    if (*plot) {
      std::cout << lcert::cli::plot(run_dir, figure).string() << '\n';
      return 0;
    }
    const auto sc = lcert::cli::load_scenario(scenario_path);
    std::cout << sc.name << ": valid " << sc.kind << " scenario, config hash " << lcert::cli::config_hash(sc.source)
              << '\n';
    return 0;
  } catch (const lcert::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
