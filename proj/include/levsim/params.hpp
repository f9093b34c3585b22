#ifndef LEVSIM_PARAMS_HPP
#define LEVSIM_PARAMS_HPP

#include <numbers>
#include <optional>
#include <string>
#include <string_view>

namespace levsim {

/// Trap geometry and laser parameters that set the optical-binding strength.
/// SI units throughout.
struct OpticalSetup {
  double polarizability = 0.0;   // C m^2 / V
  double wave_vector = 0.0;      // 1/m
  double rayleigh_range = 0.0;   // m
  double power_1 = 0.0;          // W
  double power_2 = 0.0;          // W
  double beam_waist = 0.0;       // m
  double distance = 0.0;         // inter-particle distance d0, m
  double phase_1 = 0.0;          // rad
  double phase_2 = 0.0;          // rad

  double speed_of_light = 299792458.0;
  double vacuum_permittivity = 8.8541878128e-12;

  double kd0() const { return wave_vector * distance; }
  double phase_difference() const { return phase_1 - phase_2; }

  // Throws InvalidParameter. Powers may be zero (no coupling), never negative.
  void validate() const;
};

struct CouplingCoefficients {
  double g = 0.0;
  double g1 = 0.0;
  double g2 = 0.0;
  double s1 = 0.0;
  double s2 = 0.0;
  double s12 = 0.0;
  double s21 = 0.0;
};

enum class Direction { none, one_to_two, two_to_one };

std::string_view to_string(Direction d);

/// g = a^2 k^3 (k - 1/zR)^2 sqrt(P1 P2) / (2 c wb^2 pi^2 eps0^2)
double modulating_constant(const OpticalSetup& setup);

/// Optical-binding coefficients at dimensionless distance kd0 and laser phase
/// difference dphi. Throws InvalidParameter when kd0 <= 0.
CouplingCoefficients coupling_coefficients(double g, double kd0, double dphi);

inline constexpr double kDefaultUnidirectionalTol = 1e-6;

/// Classifies the energy-flow direction. two_to_one means particle 1 is driven
/// by particle 2 while particle 2 sees nothing of particle 1.
Direction is_unidirectional(const CouplingCoefficients& c,
                            double tol = kDefaultUnidirectionalTol);

/// Slow-flow coupling rate obtained by averaging the S12 term: s = S12 / 2.
double coupling_rate(const CouplingCoefficients& c);

/// Coefficients of the ideal unidirectional point (kd0 = dphi = pi/4) with
/// S2 and S21 exactly zero and S12 = S1 = 2 s.
CouplingCoefficients unidirectional_coefficients(double s);

/// Modulating constant g that gives S12 = 2 s at (kd0, dphi).
double modulating_constant_for_rate(double s, double kd0, double dphi);

enum class Scenario { squeeze, coherent, bistable, custom };

std::string_view to_string(Scenario s);
std::optional<Scenario> scenario_from_string(std::string_view name);

struct ThermalBlock {
  double temperature = 0.0;                // K
  std::optional<double> gas_damping;       // 1/s, defaults to gamma_g of the particle
};

/// Rates for the coupled slow-flow model. omega0 is angular (rad/s).
struct ScenarioParams {
  Scenario scenario = Scenario::custom;
  double omega0 = 2.0 * std::numbers::pi * 127e3;
  double gamma_g1 = 1.0;
  double gamma_g2 = 1.0;
  double recoil_rate = 1000.0;       // A_t
  double gas_diffusion = 0.0;        // D_p
  double gamma_a = 0.0;              // linear feedback heating
  double gamma_f = 0.0;              // cubic feedback cooling
  double parametric_f = 0.0;         // dimensionless drive strength f
  double squeeze_r = 0.0;            // r = f omega0 / gamma_g2
  double coupling_s = 100.0;         // 1/s
  std::optional<ThermalBlock> thermal;
  bool thermal_in_slow_flow = false;

  double total_diffusion() const { return recoil_rate + gas_diffusion; }

  /// Throws InvalidParameter on negative rates or non-finite values.
  void validate() const;

  /// Parameter sets quoted for the squeezing, coherent-state and bistability
  /// experiments. `custom` is the undriven thermal baseline (r = gamma_a =
  /// gamma_f = 0) that all three experiments start from.
  static ScenarioParams preset(Scenario s);
};

/// r implied by f: f omega0 / gamma_g2.
double squeeze_r_from_f(double f, double omega0, double gamma_g2);
double parametric_f_from_r(double r, double omega0, double gamma_g2);

/// True when r and f satisfy r = f omega0 / gamma_g2 to relative `rtol`.
bool drive_consistent(const ScenarioParams& sp, double rtol = 1e-9);

/// Thermal Langevin force variance rate 2 kB T gamma / (hbar omega) for
/// particle j (1 or 2); zero without a thermal block.
double thermal_force_intensity(const ScenarioParams& sp, int particle);

inline constexpr double kBoltzmann = 1.380649e-23;
inline constexpr double kHbar = 1.054571817e-34;

}  // namespace levsim

#endif  // LEVSIM_PARAMS_HPP
