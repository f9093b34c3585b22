#ifndef LEVSIM_REPORT_HPP
#define LEVSIM_REPORT_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "levsim/analysis.hpp"
#include "levsim/config.hpp"
#include "levsim/fp_oracle.hpp"

namespace levsim {

inline constexpr const char* kSummarySchemaVersion = "1.0";

struct CurveSummary {
  std::string label;
  int particle = 2;
  CoherenceCurve curve;
  DecayFit fit;
};

struct SummaryReport {
  std::string spec_version = kSummarySchemaVersion;
  RunConfig config;
  std::uint64_t parameter_hash = 0;
  TimeWindow window;
  std::size_t record_count = 0;

  std::array<VarianceReport, 2> variances;
  std::array<Estimate, 2> phonons;
  std::optional<AnalyticVariances> analytic_variances;
  std::optional<PhononNumbers> analytic_phonons;
  // Exact Lyapunov covariance of the linear model (reference for particle 1).
  std::optional<std::array<double, 16>> exact_covariance;

  std::optional<Estimate> fidelity_numeric;
  std::optional<double> fidelity_analytic;

  std::vector<CurveSummary> coherence;

  Bounds bounds;
  std::array<double, 2> out_of_bounds_fraction{};
  std::array<std::optional<Estimate>, 2> oracle_distance;
  std::array<std::string, 2> oracle_validity;

  std::optional<WitnessReport> witness;
  std::optional<int> predicted_modes;
  std::vector<Mode> modes;

  std::vector<std::string> warnings;
  std::vector<std::string> notes;
  double wall_clock_seconds = 0.0;
};

/// Everything emit_outputs needs besides the report itself.
struct RunArtifacts {
  Ensemble ensemble;
  std::array<PhaseSpaceHistogram, 2> histograms;
  std::array<std::optional<std::vector<double>>, 2> oracle_masses;
};

struct RunResult {
  SummaryReport report;
  RunArtifacts artifacts;
};

/// Runs the ensemble and every applicable analysis and oracle. Oracle misses
/// are recorded, not thrown; hard numerical failures propagate
/// (EnsembleError, IntegratorBlowup).
RunResult run_scenario(const RunConfig& cfg);

/// summary.json content; wall-clock is the only run-dependent field.
std::string summary_json(const SummaryReport& report);

/// Writes the files selected by cfg.emit into cfg.output_dir and returns the
/// paths written. Throws IoError with the path on failure.
std::vector<std::string> emit_outputs(const SummaryReport& report, const RunArtifacts& artifacts,
                                      const RunConfig& cfg);

/// Default lag grid: 0 .. min(1 s, window width) in steps that are multiples
/// of the record interval, at most 21 points.
std::vector<double> default_lags(double record_interval, double window_width);

}  // namespace levsim

#endif  // LEVSIM_REPORT_HPP
