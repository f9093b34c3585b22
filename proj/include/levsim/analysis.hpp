#ifndef LEVSIM_ANALYSIS_HPP
#define LEVSIM_ANALYSIS_HPP

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "levsim/fp_oracle.hpp"
#include "levsim/integrator.hpp"

namespace levsim {

/// Closed time interval [begin, end] of recorded samples.
struct TimeWindow {
  double begin = 0.0;
  double end = 0.0;

  double width() const { return end - begin; }
  bool contains(double t) const;
};

/// Whole post-burn-in record of an ensemble.
TimeWindow full_window(const Ensemble& e);
TimeWindow window_centered(double center, double width);

struct VarianceReport {
  int particle = 0;
  double mean_q = 0.0;
  double mean_p = 0.0;
  double var_q = 0.0;
  double var_p = 0.0;
  double cov_qp = 0.0;
  double se_var_q = 0.0;
  double se_var_p = 0.0;
  double se_cov_qp = 0.0;
  std::size_t n_samples = 0;
  std::size_t n_trajectories = 0;
};

/// Pooled unbiased moments over all trajectories and recorded times in the
/// window. Standard errors come from per-trajectory batch means (NaN with a
/// single trajectory).
VarianceReport quadrature_variances(const Ensemble& e, int particle, const TimeWindow& window);

struct Estimate {
  double value = 0.0;
  double se = 0.0;
  std::size_t n_samples = 0;
};

/// N = <Q^2 + P^2>.
Estimate phonon_population(const Ensemble& e, int particle, const TimeWindow& window);

struct CoherenceCurve {
  std::vector<double> tau;
  std::vector<double> g2;
  std::vector<double> se;
  TimeWindow window;
  std::size_t n_trajectories = 0;
};

/// g2(tau) = <n(t) n(t + tau)> / <n>^2 with n = Q^2 + P^2, averaged over
/// trajectories and all pairs (t, t + tau) inside the window. Lags must be
/// multiples of the record interval. Standard errors by jackknife over
/// trajectories.
CoherenceCurve second_order_coherence(const Ensemble& e, int particle, std::span<const double> lags,
                                      const TimeWindow& window);

struct DecayFit {
  double amplitude = 0.0;
  double rate = 0.0;
  std::size_t points = 0;
};

/// Least-squares fit of log(g2 - 1) = log(A) - rate tau over lags where
/// g2 - 1 exceeds both `floor` and three standard errors.
DecayFit fit_coherence_decay(const CoherenceCurve& curve, double floor = 0.05);

/// Normalised 2-D histogram. `mass` is row-major in q and sums to one over
/// the in-bounds samples; points outside the bounds are only counted.
struct PhaseSpaceHistogram {
  Bounds bounds;
  int nq = 0;
  int np = 0;
  std::vector<double> mass;
  std::size_t in_bounds = 0;
  std::size_t out_of_bounds = 0;

  double cell_area() const;
  double q_center(int i) const;
  double p_center(int j) const;
  double density(int i, int j) const { return mass[static_cast<std::size_t>(i) * np + j] / cell_area(); }
  double out_of_bounds_fraction() const;
};

/// Phase-space points (Q_j, P_j) of all samples inside the window.
std::vector<std::array<double, 2>> phase_points(const Ensemble& e, int particle, const TimeWindow& window);

PhaseSpaceHistogram histogram2d(std::span<const std::array<double, 2>> points, const Bounds& bounds, int nq,
                                int np);
PhaseSpaceHistogram histogram2d(const Ensemble& e, int particle, const Bounds& bounds, int nq, int np,
                                const TimeWindow& window);

/// F = sum(P1 P2) / sum(P2^2) with target = P1 and source = P2. Not
/// symmetric. Throws AnalysisError unless both grids are identical.
double fidelity_numeric(const PhaseSpaceHistogram& target, const PhaseSpaceHistogram& source);

/// Total-variation distance 0.5 sum |m_emp - m_oracle| over the grid cells.
double distribution_distance(const PhaseSpaceHistogram& h, const StationaryDensity& oracle);
double distribution_distance(const PhaseSpaceHistogram& h, std::span<const double> oracle_masses);

struct WitnessReport {
  Model model = Model::slow_flow;
  double max_dev_particle1 = 0.0;
  double max_dev_particle2 = 0.0;
  bool particle2_identical = false;
  bool particle1_differs = false;
};

/// Runs the ensemble twice with identical seeds, the second time with the
/// particle-1 initial mean shifted by delta_q1, and compares trajectories.
WitnessReport unidirectionality_witness(const ScenarioParams& sp, const SimConfig& cfg, double delta_q1);
/// Same with the lab-frame model and explicit coupling coefficients.
WitnessReport unidirectionality_witness(const ScenarioParams& sp, const SimConfig& cfg,
                                        const CouplingCoefficients& c, double delta_q1);

struct Mode {
  double q = 0.0;
  double p = 0.0;
  double height = 0.0;  // smoothed density
  double mass = 0.0;    // histogram mass of the basin
};

/// Local maxima of the Gaussian-smoothed density (kernel width in bins,
/// >= 1). A maximum counts when its height exceeds `threshold` times the
/// global maximum and the smoothed density dips by at least a fraction
/// `prominence` on the straight path to every higher accepted mode. Sorted
/// by basin mass, largest first.
std::vector<Mode> mode_detect(const PhaseSpaceHistogram& h, double smoothing, double threshold = 0.05,
                              double prominence = 0.1);

}  // namespace levsim

#endif  // LEVSIM_ANALYSIS_HPP
