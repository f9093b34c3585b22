// Command-line front end: levsim --scenario squeeze --out run1
#include <cstdint>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "levsim/config.hpp"
#include "levsim/errors.hpp"
#include "levsim/report.hpp"

namespace {

enum ExitCode { kOk = 0, kConfigError = 2, kBlowup = 3, kIoError = 4 };

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monte Carlo simulator for two optically coupled levitated nanoparticles"};
  app.footer(
      "Precedence: scenario defaults < --config file < command-line flags.\n"
      "Exit codes: 0 success, 2 configuration error, 3 numerical blowup, 4 I/O error.");

  std::string config_path;
  levsim::Overrides ov;
  std::string scenario, out, emit;
  std::uint64_t seed = 0;
  std::size_t trajectories = 0;
  double dt = 0.0;
  double t_end = 0.0;
  bool print_config = false;

  app.add_option("--config", config_path, "JSON run configuration");
  auto* o_scenario = app.add_option("--scenario", scenario, "squeeze | coherent | bistable | custom");
  auto* o_seed = app.add_option("--seed", seed, "master seed");
  auto* o_traj = app.add_option("--trajectories", trajectories, "number of trajectories");
  auto* o_dt = app.add_option("--dt", dt, "time step (s)");
  auto* o_tend = app.add_option("--t-end", t_end, "simulated time (s)");
  auto* o_out = app.add_option("--out", out, "output directory");
  auto* o_emit = app.add_option("--emit", emit, "comma list of csv, histograms, svg, report, all");
  app.add_flag("--print-config", print_config, "print the resolved configuration and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  if (*o_scenario) ov.scenario = scenario;
  if (*o_seed) ov.seed = seed;
  if (*o_traj) ov.trajectories = trajectories;
  if (*o_dt) ov.dt = dt;
  if (*o_tend) ov.t_end = t_end;
  if (*o_out) ov.out = out;
  if (*o_emit) ov.emit = emit;

  levsim::RunConfig cfg;
  try {
    cfg = config_path.empty() ? levsim::parse_config_text("{}", ov) : levsim::parse_config(config_path, ov);
  } catch (const levsim::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const levsim::IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kIoError;
  } catch (const levsim::InvalidParameter& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  }
  if (print_config) {
    std::cout << levsim::to_json_text(cfg);
    return kOk;
  }

  try {
    std::cerr << "levsim: " << levsim::to_string(cfg.physics.scenario) << ", "
              << cfg.simulation.n_trajectories << " trajectories, t_end = " << cfg.simulation.t_end
              << " s, dt = " << cfg.simulation.dt << " s\n";
    const auto result = levsim::run_scenario(cfg);
    for (const auto& w : result.report.warnings) std::cerr << "warning: " << w << '\n';
    const auto files = levsim::emit_outputs(result.report, result.artifacts, cfg);
    std::cerr << "levsim: wrote " << files.size() << " file(s) in " << result.report.wall_clock_seconds << " s\n";
    if (cfg.emit.report) {
      std::cout << (std::filesystem::path(cfg.output_dir) / "summary.json").string() << '\n';
    } else {
      std::cout << cfg.output_dir << '\n';
    }
  } catch (const levsim::IntegratorBlowup& e) {
    std::cerr << "integrator: " << e.what() << '\n';
    return kBlowup;
  } catch (const levsim::EnsembleError& e) {
    std::cerr << "integrator: " << e.what() << '\n';
    return kBlowup;
  } catch (const levsim::IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kIoError;
  } catch (const levsim::InvalidParameter& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const levsim::OracleError& e) {
    std::cerr << "oracle: " << e.what() << '\n';
    return 1;
  } catch (const levsim::AnalysisError& e) {
    std::cerr << "analysis: " << e.what() << '\n';
    return 1;
  }
  return kOk;
}
