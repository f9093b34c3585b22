#include "levsim/params.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "levsim/errors.hpp"

namespace levsim {

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw InvalidParameter(msg);
}

bool finite_nonneg(double x) { return std::isfinite(x) && x >= 0.0; }

}  // namespace

void OpticalSetup::validate() const {
  require(std::isfinite(polarizability), "polarizability must be finite");
  require(std::isfinite(wave_vector) && wave_vector > 0.0, "wave_vector must be > 0");
  require(std::isfinite(rayleigh_range) && rayleigh_range > 0.0, "rayleigh_range must be > 0");
  require(finite_nonneg(power_1), "power_1 must be >= 0");
  require(finite_nonneg(power_2), "power_2 must be >= 0");
  require(std::isfinite(beam_waist) && beam_waist > 0.0, "beam_waist must be > 0");
  require(std::isfinite(distance) && distance > 0.0, "inter-particle distance must be > 0");
  require(std::isfinite(phase_1) && std::isfinite(phase_2), "laser phases must be finite");
  require(speed_of_light > 0.0 && vacuum_permittivity > 0.0, "physical constants must be > 0");
}

std::string_view to_string(Direction d) {
  switch (d) {
    case Direction::one_to_two: return "one_to_two";
    case Direction::two_to_one: return "two_to_one";
    case Direction::none: break;
  }
  return "none";
}

double modulating_constant(const OpticalSetup& s) {
  s.validate();
  const double pi = std::numbers::pi;
  const double k = s.wave_vector;
  const double focus = k - 1.0 / s.rayleigh_range;
  const double num = s.polarizability * s.polarizability * k * k * k * focus * focus *
                     std::sqrt(s.power_1 * s.power_2);
  const double den = 2.0 * s.speed_of_light * s.beam_waist * s.beam_waist * pi * pi *
                     s.vacuum_permittivity * s.vacuum_permittivity;
  return num / den;
}

CouplingCoefficients coupling_coefficients(double g, double kd0, double dphi) {
  require(std::isfinite(kd0) && kd0 > 0.0, "kd0 must be > 0");
  require(std::isfinite(g) && std::isfinite(dphi), "g and dphi must be finite");
  CouplingCoefficients c;
  c.g = g;
  c.g1 = g * std::cos(kd0) * std::cos(dphi) / kd0;
  c.g2 = g * std::sin(kd0) * std::sin(dphi) / kd0;
  c.s1 = c.g1 + c.g2;
  c.s2 = c.g1 - c.g2;
  c.s12 = g * std::cos(kd0 - dphi) / kd0;
  c.s21 = g * std::cos(kd0 + dphi) / kd0;
  return c;
}

Direction is_unidirectional(const CouplingCoefficients& c, double tol) {
  require(tol > 0.0, "tolerance must be > 0");
  const double a12 = std::abs(c.s12);
  const double a21 = std::abs(c.s21);
  if (a12 == 0.0 && a21 == 0.0) return Direction::none;
  const double g = std::abs(c.g);
  if (a21 <= tol * a12 && std::abs(c.s2) <= tol * std::max(std::abs(c.s1), g)) {
    return Direction::two_to_one;
  }
  if (a12 <= tol * a21 && std::abs(c.s1) <= tol * std::max(std::abs(c.s2), g)) {
    return Direction::one_to_two;
  }
  return Direction::none;
}

double coupling_rate(const CouplingCoefficients& c) { return 0.5 * c.s12; }

CouplingCoefficients unidirectional_coefficients(double s) {
  CouplingCoefficients c;
  c.g = 0.5 * std::numbers::pi * s;
  c.g1 = s;
  c.g2 = s;
  c.s1 = 2.0 * s;
  c.s2 = 0.0;
  c.s12 = 2.0 * s;
  c.s21 = 0.0;
  return c;
}

double modulating_constant_for_rate(double s, double kd0, double dphi) {
  require(kd0 > 0.0, "kd0 must be > 0");
  const double c = std::cos(kd0 - dphi);
  require(std::abs(c) > 1e-12, "S12 vanishes at this (kd0, dphi); no g yields the rate");
  return 2.0 * s * kd0 / c;
}

std::string_view to_string(Scenario s) {
  switch (s) {
    case Scenario::squeeze: return "squeeze";
    case Scenario::coherent: return "coherent";
    case Scenario::bistable: return "bistable";
    case Scenario::custom: break;
  }
  return "custom";
}

std::optional<Scenario> scenario_from_string(std::string_view name) {
  if (name == "squeeze") return Scenario::squeeze;
  if (name == "coherent") return Scenario::coherent;
  if (name == "bistable") return Scenario::bistable;
  if (name == "custom") return Scenario::custom;
  return std::nullopt;
}

void ScenarioParams::validate() const {
  require(std::isfinite(omega0) && omega0 > 0.0, "omega0 must be > 0");
  require(std::isfinite(gamma_g1) && gamma_g1 > 0.0, "gamma_g1 must be > 0");
  require(std::isfinite(gamma_g2) && gamma_g2 > 0.0, "gamma_g2 must be > 0");
  require(finite_nonneg(recoil_rate), "A_t must be >= 0");
  require(finite_nonneg(gas_diffusion), "D_p must be >= 0");
  require(finite_nonneg(gamma_a), "gamma_a must be >= 0");
  require(finite_nonneg(gamma_f), "gamma_f must be >= 0");
  require(std::isfinite(parametric_f), "f must be finite");
  require(std::isfinite(squeeze_r), "r must be finite");
  require(std::isfinite(coupling_s), "s must be finite");
  if (thermal) {
    require(finite_nonneg(thermal->temperature), "temperature must be >= 0");
    if (thermal->gas_damping) require(finite_nonneg(*thermal->gas_damping), "thermal gas damping must be >= 0");
  }
}

ScenarioParams ScenarioParams::preset(Scenario s) {
  ScenarioParams p;
  p.scenario = s;
  switch (s) {
    case Scenario::squeeze:
      p.squeeze_r = 0.8;
      break;
    case Scenario::coherent:
      p.gamma_a = 20.0;
      p.gamma_f = 1e-4;
      break;
    case Scenario::bistable:
      p.gamma_g1 = 1.0;
      p.gamma_g2 = 20.0;
      p.squeeze_r = 0.9;
      p.gamma_f = 2e-4;
      break;
    case Scenario::custom:
      break;
  }
  p.parametric_f = parametric_f_from_r(p.squeeze_r, p.omega0, p.gamma_g2);
  return p;
}

double squeeze_r_from_f(double f, double omega0, double gamma_g2) { return f * omega0 / gamma_g2; }

double parametric_f_from_r(double r, double omega0, double gamma_g2) { return r * gamma_g2 / omega0; }

bool drive_consistent(const ScenarioParams& sp, double rtol) {
  const double implied = squeeze_r_from_f(sp.parametric_f, sp.omega0, sp.gamma_g2);
  return std::abs(implied - sp.squeeze_r) <= rtol * std::max(1.0, std::abs(sp.squeeze_r));
}

double thermal_force_intensity(const ScenarioParams& sp, int particle) {
  if (!sp.thermal) return 0.0;
  const double gamma = sp.thermal->gas_damping.value_or(particle == 1 ? sp.gamma_g1 : sp.gamma_g2);
  return 2.0 * kBoltzmann * sp.thermal->temperature * gamma / (kHbar * sp.omega0);
}

}  // namespace levsim
