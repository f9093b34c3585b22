#ifndef LEVSIM_DYNAMICS_HPP
#define LEVSIM_DYNAMICS_HPP

#include <array>

#include "levsim/params.hpp"

namespace levsim {

// Slowly varying quadratures in the frame rotating at omega0.
struct QuadratureState {
  double q1 = 0.0;
  double p1 = 0.0;
  double q2 = 0.0;
  double p2 = 0.0;

  std::array<double, 4> as_array() const { return {q1, p1, q2, p2}; }
  static QuadratureState from_array(const std::array<double, 4>& a) { return {a[0], a[1], a[2], a[3]}; }
  bool finite() const;
  friend bool operator==(const QuadratureState&, const QuadratureState&) = default;
};

// Lab-frame positions Q_zj and velocities dQ_zj/dt.
struct OscillatorState {
  double qz1 = 0.0;
  double vz1 = 0.0;
  double qz2 = 0.0;
  double vz2 = 0.0;
  double t = 0.0;

  bool finite() const;
};

struct NoiseSpec {
  // Fokker-Planck diffusion coefficient of each slow-flow quadrature
  // (order q1, p1, q2, p2); the SDE amplitude is sqrt(2 D).
  std::array<double, 4> quadrature_diffusion{};
  // Full-oscillation forces per particle: sqrt(2 kB T gamma / hbar omega)
  // and sqrt(D_t). Both drive independent white noises.
  std::array<double, 2> thermal_amplitude{};
  std::array<double, 2> scattering_amplitude{};

  /// Signed SDE amplitudes for (q1, p1, q2, p2). Q channels carry the minus
  /// sign of the -F_s/2 entry, P channels the plus of +F_c/2.
  std::array<double, 4> quadrature_amplitudes() const;
  /// Combined force amplitude on particle j (0-based) of the full model.
  double force_amplitude(int index) const;
};

/// Drift of the coupled slow-flow equations (unidirectional regime):
///   dQ1 = -g1 Q1 + s P1 - s P2
///   dP1 = -g1 P1 - s Q1 + s Q2
///   dQ2 = -(g2 - r g2 - ga + 6 gf (Q2^2 + P2^2)) Q2
///   dP2 = -(g2 + r g2 - ga + 6 gf (Q2^2 + P2^2)) P2
std::array<double, 4> slow_flow_drift(const QuadratureState& x, const ScenarioParams& sp);

// Hot-loop form of slow_flow_drift on a raw array; identical arithmetic.
inline std::array<double, 4> slow_flow_drift(const std::array<double, 4>& x, const ScenarioParams& sp) {
  const double g1 = sp.gamma_g1;
  const double g2 = sp.gamma_g2;
  const double s = sp.coupling_s;
  const double rg = sp.squeeze_r * g2;
  const double cubic = 6.0 * sp.gamma_f * (x[2] * x[2] + x[3] * x[3]);
  return {-g1 * x[0] + s * x[1] - s * x[3],
          -g1 * x[1] - s * x[0] + s * x[2],
          -(g2 - rg - sp.gamma_a + cubic) * x[2],
          -(g2 + rg - sp.gamma_a + cubic) * x[3]};
}

/// Accelerations (d^2 Qz1/dt^2, d^2 Qz2/dt^2) of the lab-frame Langevin
/// equations without noise. The parametric drive enters as
/// -f omega^2 sin(2 omega t) Qz2 and the feedback as
/// -2 (gamma_g2 - gamma_a + 6 gamma_f Qz2^2) dQz2/dt.
std::array<double, 2> full_oscillation_drift(const OscillatorState& x, const ScenarioParams& sp,
                                             const CouplingCoefficients& c);

/// Noise intensities; slow-flow diffusion is A_t/4 per quadrature, plus the
/// thermal term / 4 when sp.thermal_in_slow_flow is set.
NoiseSpec slow_flow_diffusion(const ScenarioParams& sp);

/// Gradient potential of the particle-2 slow flow: drift = -grad U.
double particle2_potential(double q2, double p2, const ScenarioParams& sp);

/// Parametric amplitude for the lab-frame model whose rotating-wave average
/// reproduces the slow-flow squeezing rate r gamma_g2: f = 4 r gamma_g2 / omega0.
double averaged_parametric_drive(const ScenarioParams& sp);

/// Lab-frame state whose demodulated quadratures at time t equal x.
OscillatorState modulate(const QuadratureState& x, double omega0, double t);
/// Exact inverse of modulate (no averaging).
QuadratureState demodulate(const OscillatorState& x, double omega0);

}  // namespace levsim

#endif  // LEVSIM_DYNAMICS_HPP
