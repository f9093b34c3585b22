#ifndef LEVSIM_CONFIG_HPP
#define LEVSIM_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "levsim/analysis.hpp"
#include "levsim/integrator.hpp"
#include "levsim/params.hpp"

namespace levsim {

/// Where the lab-frame coupling coefficients come from: either an explicit
/// modulating constant g, an optical setup, or (neither given) the value of g
/// that reproduces the slow-flow rate s at (kd0, dphi).
struct CouplingConfig {
  double kd0 = 0.25 * std::numbers::pi;
  double dphi = 0.25 * std::numbers::pi;
  std::optional<double> g;
  std::optional<OpticalSetup> optical;

  CouplingCoefficients coefficients(const ScenarioParams& sp) const;
};

struct AnalysisOptions {
  int bins = 64;
  std::optional<Bounds> bounds;           // default: from the particle-2 oracle
  std::vector<double> lags;               // empty: 0 .. 1 s on the record grid
  std::optional<TimeWindow> window;       // default: whole post-burn-in record
  double mode_smoothing = 2.0;            // bins
  double witness_delta_q1 = 50.0;
  std::size_t witness_trajectories = 4;
  // Undriven run with the same rates for the thermal g2 reference curve.
  bool g2_reference = false;
  // Centre of an optional 4 / gamma_g2 wide window for an intermediate g2 curve.
  std::optional<double> g2_intermediate_time;
};

struct EmitFlags {
  bool csv = true;         // trajectories.csv, moments.csv, g2_p{1,2}.csv
  bool histograms = true;  // hist_p{1,2}.csv, oracle_p{1,2}.csv
  bool svg = false;        // phase_space.svg
  bool report = true;      // summary.json

  friend bool operator==(const EmitFlags&, const EmitFlags&) = default;
};

/// Parses "csv,histograms,svg,report" (or "all"); throws ConfigError.
EmitFlags parse_emit_list(std::string_view list);
std::string to_string(const EmitFlags& e);

struct RunConfig {
  ScenarioParams physics;
  SimConfig simulation;
  CouplingConfig coupling;
  AnalysisOptions analysis;
  std::string output_dir = "out";
  EmitFlags emit;
};

/// Command-line values; each one set overrides the config file.
struct Overrides {
  std::optional<std::string> scenario;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> trajectories;
  std::optional<double> dt;
  std::optional<double> t_end;
  std::optional<std::string> out;
  std::optional<std::string> emit;
};

/// Scenario defaults (parameter sets of the three experiments plus the
/// simulation settings used for them).
RunConfig default_run_config(Scenario s);

/// Builds a validated RunConfig from JSON text. Precedence: scenario defaults
/// < JSON values < overrides. Throws ConfigError naming the offending key.
RunConfig parse_config_text(std::string_view json_text, const Overrides& overrides = {});
/// Reads the file (IoError if unreadable) and calls parse_config_text.
RunConfig parse_config(const std::string& path, const Overrides& overrides = {});

/// Canonical JSON: every field explicit, so parse_config_text(to_json_text(c))
/// reproduces c exactly.
std::string to_json_text(const RunConfig& cfg);

bool operator==(const RunConfig& a, const RunConfig& b);

}  // namespace levsim

#endif  // LEVSIM_CONFIG_HPP
