#include "levsim/dynamics.hpp"

#include <cmath>

namespace levsim {

bool QuadratureState::finite() const {
  return std::isfinite(q1) && std::isfinite(p1) && std::isfinite(q2) && std::isfinite(p2);
}

bool OscillatorState::finite() const {
  return std::isfinite(qz1) && std::isfinite(vz1) && std::isfinite(qz2) && std::isfinite(vz2);
}

std::array<double, 4> NoiseSpec::quadrature_amplitudes() const {
  return {-std::sqrt(2.0 * quadrature_diffusion[0]), std::sqrt(2.0 * quadrature_diffusion[1]),
          -std::sqrt(2.0 * quadrature_diffusion[2]), std::sqrt(2.0 * quadrature_diffusion[3])};
}

double NoiseSpec::force_amplitude(int index) const {
  const double t = thermal_amplitude[index];
  const double s = scattering_amplitude[index];
  return std::sqrt(t * t + s * s);
}

std::array<double, 4> slow_flow_drift(const QuadratureState& x, const ScenarioParams& sp) {
  return slow_flow_drift(x.as_array(), sp);
}

std::array<double, 2> full_oscillation_drift(const OscillatorState& x, const ScenarioParams& sp,
                                             const CouplingCoefficients& c) {
  const double w = sp.omega0;
  const double a1 = -w * w * x.qz1 - 2.0 * sp.gamma_g1 * x.vz1 - w * c.s1 * x.qz1 + w * c.s12 * x.qz2;
  const double feedback = sp.gamma_g2 - sp.gamma_a + 6.0 * sp.gamma_f * x.qz2 * x.qz2;
  const double a2 = -w * w * x.qz2 - 2.0 * feedback * x.vz2 -
                    sp.parametric_f * w * w * std::sin(2.0 * w * x.t) * x.qz2 - w * c.s2 * x.qz2 +
                    w * c.s21 * x.qz1;
  return {a1, a2};
}

NoiseSpec slow_flow_diffusion(const ScenarioParams& sp) {
  NoiseSpec n;
  for (int j = 0; j < 2; ++j) {
    const double thermal = thermal_force_intensity(sp, j + 1);
    const double d = 0.25 * sp.recoil_rate + (sp.thermal_in_slow_flow ? 0.25 * thermal : 0.0);
    n.quadrature_diffusion[2 * j] = d;
    n.quadrature_diffusion[2 * j + 1] = d;
    n.thermal_amplitude[j] = std::sqrt(thermal);
    n.scattering_amplitude[j] = std::sqrt(sp.total_diffusion());
  }
  return n;
}

double particle2_potential(double q2, double p2, const ScenarioParams& sp) {
  const double g = sp.gamma_g2;
  const double rho2 = q2 * q2 + p2 * p2;
  return 0.5 * (g * (1.0 - sp.squeeze_r) - sp.gamma_a) * q2 * q2 +
         0.5 * (g * (1.0 + sp.squeeze_r) - sp.gamma_a) * p2 * p2 + 1.5 * sp.gamma_f * rho2 * rho2;
}

double averaged_parametric_drive(const ScenarioParams& sp) {
  return 4.0 * sp.squeeze_r * sp.gamma_g2 / sp.omega0;
}

OscillatorState modulate(const QuadratureState& x, double omega0, double t) {
  const double c = std::cos(omega0 * t);
  const double s = std::sin(omega0 * t);
  return {x.q1 * c + x.p1 * s, omega0 * (-x.q1 * s + x.p1 * c), x.q2 * c + x.p2 * s,
          omega0 * (-x.q2 * s + x.p2 * c), t};
}

QuadratureState demodulate(const OscillatorState& x, double omega0) {
  const double c = std::cos(omega0 * x.t);
  const double s = std::sin(omega0 * x.t);
  const double u1 = x.vz1 / omega0;
  const double u2 = x.vz2 / omega0;
  return {x.qz1 * c - u1 * s, x.qz1 * s + u1 * c, x.qz2 * c - u2 * s, x.qz2 * s + u2 * c};
}

}  // namespace levsim
