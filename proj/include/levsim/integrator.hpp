#ifndef LEVSIM_INTEGRATOR_HPP
#define LEVSIM_INTEGRATOR_HPP

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <boost/random/normal_distribution.hpp>

#include "levsim/dynamics.hpp"
#include "levsim/errors.hpp"
#include "levsim/params.hpp"

namespace levsim {

enum class Model { slow_flow, full_oscillation };
enum class Stepper { automatic, euler_maruyama, heun };

struct InitialDistribution {
  enum class Kind { point, gaussian, thermal };

  Kind kind = Kind::thermal;
  // Point location, Gaussian mean, or the centre of the thermal cloud.
  QuadratureState mean;
  // Row-major 4x4 covariance for Kind::gaussian.
  std::array<double, 16> covariance{};
  // Thermal variance per quadrature; unset means A_t / (4 gamma_gj) per particle.
  std::optional<double> variance;
};

struct SimConfig {
  double dt = 1e-4;
  double t_end = 100.0;
  double burn_in = 50.0;
  std::size_t n_trajectories = 2000;
  std::uint64_t master_seed = 20240501;
  std::size_t record_stride = 1000;
  Model model = Model::slow_flow;
  Stepper stepper = Stepper::automatic;
  InitialDistribution initial;
  unsigned threads = 0;  // 0: one per hardware thread

  void validate() const;
  std::size_t n_steps() const;
  /// Step indices k (time k dt) that are recorded: t_end, t_end - stride dt,
  /// ... while strictly later than burn_in, returned in increasing order.
  std::vector<std::size_t> record_steps() const;
};

/// Human-readable warnings when dt times the fastest rate exceeds 0.1.
std::vector<std::string> stability_warnings(const SimConfig& cfg, const ScenarioParams& sp);

/// Ten relaxation times of the slowest decaying slow-flow mode.
double default_burn_in(const ScenarioParams& sp);

/// Stepper used when cfg.stepper is automatic: Heun with cubic feedback,
/// Euler-Maruyama otherwise.
Stepper resolve_stepper(Stepper requested, const ScenarioParams& sp);
/// As above, but also picks Heun when the Euler-Maruyama rotation error
/// s^2 dt / 2 would exceed 1% of gamma_g1. Used by the trajectory runners.
Stepper resolve_stepper(Stepper requested, const ScenarioParams& sp, double dt);

struct Trajectory {
  std::vector<double> times;
  std::vector<QuadratureState> samples;
  QuadratureState initial;
  std::uint64_t sub_seed = 0;
};

struct Ensemble {
  std::vector<Trajectory> trajectories;
  SimConfig config;
  std::uint64_t parameter_hash = 0;

  const std::vector<double>& times() const;
};

// --- random streams -------------------------------------------------------

/// Counter-based split: sub-seed of trajectory `index` is a SplitMix64 hash of
/// (master, index), so it does not depend on which worker runs it or when.
std::uint64_t sub_seed(std::uint64_t master, std::uint64_t index);

class NormalStream {
 public:
  explicit NormalStream(std::uint64_t seed) : engine_(seed) {}
  double operator()() { return normal_(engine_); }
  template <std::size_t N>
  std::array<double, N> draw() {
    std::array<double, N> z;
    for (auto& v : z) v = normal_(engine_);
    return z;
  }

 private:
  std::mt19937_64 engine_;
  boost::random::normal_distribution<double> normal_;
};

// --- single steps ---------------------------------------------------------

namespace detail {
template <std::size_t N>
void check_finite(const std::array<double, N>& x, double t) {
  for (double v : x) {
    if (!std::isfinite(v)) throw IntegratorBlowup(t, "state became non-finite at t = " + std::to_string(t));
  }
}
}  // namespace detail

/// x' = x + f(x, t) dt + amplitude sqrt(dt) z
template <std::size_t N, class Drift>
std::array<double, N> step_euler_maruyama(const std::array<double, N>& x, Drift&& drift,
                                          const std::array<double, N>& amplitude, double dt,
                                          const std::array<double, N>& increments, double t = 0.0) {
  const auto f = drift(x, t);
  const double sq = std::sqrt(dt);
  std::array<double, N> out;
  for (std::size_t i = 0; i < N; ++i) out[i] = x[i] + f[i] * dt + amplitude[i] * sq * increments[i];
  detail::check_finite(out, t + dt);
  return out;
}

/// Predictor-corrector with the same increment in both stages; with additive
/// noise this converges to the Ito (= Stratonovich) solution.
template <std::size_t N, class Drift>
std::array<double, N> step_heun(const std::array<double, N>& x, Drift&& drift,
                                const std::array<double, N>& amplitude, double dt,
                                const std::array<double, N>& increments, double t = 0.0) {
  const auto f0 = drift(x, t);
  const double sq = std::sqrt(dt);
  std::array<double, N> noise;
  std::array<double, N> pred;
  for (std::size_t i = 0; i < N; ++i) {
    noise[i] = amplitude[i] * sq * increments[i];
    pred[i] = x[i] + f0[i] * dt + noise[i];
  }
  const auto f1 = drift(pred, t + dt);
  std::array<double, N> out;
  for (std::size_t i = 0; i < N; ++i) out[i] = x[i] + 0.5 * (f0[i] + f1[i]) * dt + noise[i];
  detail::check_finite(out, t + dt);
  return out;
}

/// Kick-rotate-kick splitting for the lab-frame model: the harmonic part
/// omega0^2 Q is advanced exactly (no phase error over ~1e7 periods), the
/// remaining forces as half kicks, and the Langevin forces once per step.
class HarmonicSplitStepper {
 public:
  HarmonicSplitStepper(const ScenarioParams& sp, const CouplingCoefficients& c, double dt);

  /// `force_increments` are standard normals, one per particle.
  OscillatorState step(const OscillatorState& x, const std::array<double, 2>& force_increments) const;

 private:
  std::array<double, 2> residual(const OscillatorState& x) const;

  ScenarioParams sp_;
  CouplingCoefficients c_;
  double dt_;
  double cos_;
  double sin_;
  std::array<double, 2> noise_scale_;
};

// --- trajectories and ensembles -------------------------------------------

QuadratureState draw_initial_state(const InitialDistribution& init, const ScenarioParams& sp,
                                   NormalStream& normals);

/// Slow-flow trajectory; fully determined by (cfg, sp, seed).
Trajectory simulate_trajectory(const SimConfig& cfg, const ScenarioParams& sp, std::uint64_t seed);

/// Lab-frame trajectory, recorded as demodulated quadratures.
Trajectory simulate_full_trajectory(const SimConfig& cfg, const ScenarioParams& sp,
                                    const CouplingCoefficients& c, std::uint64_t seed);

Ensemble run_ensemble(const SimConfig& cfg, const ScenarioParams& sp);
Ensemble run_full_ensemble(const SimConfig& cfg, const ScenarioParams& sp, const CouplingCoefficients& c);

std::uint64_t parameter_hash(const SimConfig& cfg, const ScenarioParams& sp);

}  // namespace levsim

#endif  // LEVSIM_INTEGRATOR_HPP
