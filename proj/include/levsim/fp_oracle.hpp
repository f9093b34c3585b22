#ifndef LEVSIM_FP_ORACLE_HPP
#define LEVSIM_FP_ORACLE_HPP

#include <array>
#include <string>
#include <vector>

#include "levsim/params.hpp"

namespace levsim {

// Rectangular phase-space region.
struct Bounds {
  double q_min = -1.0;
  double q_max = 1.0;
  double p_min = -1.0;
  double p_max = 1.0;

  friend bool operator==(const Bounds&, const Bounds&) = default;
};

/// Stationary density of the form
///   P(Q, P) = exp(-Phi(Q, P) / D) / Z,
///   Phi = c_q Q^2 / 2 + c_p P^2 / 2 + c_qp Q P + c_4 (Q^2 + P^2)^2.
/// For particle 2 Phi is the exact gradient potential of the drift and
/// D = A_t / 4.
class StationaryDensity {
 public:
  /// Throws OracleError if the form is not integrable or D <= 0.
  StationaryDensity(double c_q, double c_p, double c_qp, double c_4, double diffusion, int particle,
                    std::string validity);

  double c_q() const { return c_q_; }
  double c_p() const { return c_p_; }
  double c_qp() const { return c_qp_; }
  double c_4() const { return c_4_; }
  double diffusion() const { return diffusion_; }
  int particle() const { return particle_; }
  const std::string& validity() const { return validity_; }

  double potential(double q, double p) const;
  /// Normalised density.
  double operator()(double q, double p) const;
  double log_density(double q, double p) const;
  /// Box outside of which the density is below e^-50 of its peak.
  const Bounds& support() const { return support_; }
  double normalization() const { return norm_; }

  /// Gaussian form (c_4 = 0) with the given 2x2 covariance [vq, cqp; cqp, vp].
  static StationaryDensity from_covariance(double var_q, double var_p, double cov_qp, double diffusion,
                                           int particle, std::string validity);

 private:
  double c_q_, c_p_, c_qp_, c_4_, diffusion_;
  int particle_;
  std::string validity_;
  double phi_min_ = 0.0;
  Bounds support_;
  double norm_ = 1.0;  // integral of exp(-(Phi - Phi_min) / D)
};

/// Exact stationary density of the particle-2 slow flow, any scenario.
StationaryDensity stationary_density_p2(const ScenarioParams& sp);

/// Reduced particle-1 density of the s >> gamma_g approximation. Squeeze form
/// needs gamma_a = gamma_f = 0, coherent form r = 0; throws OracleError for
/// s <= gamma_g1 or scenarios with no published form.
StationaryDensity stationary_density_p1(const ScenarioParams& sp);

struct AnalyticVariances {
  double var_q2 = 0.0;
  double var_p2 = 0.0;
  double var_q1 = 0.0;
  double var_p1 = 0.0;
};

/// Closed-form quadrature variances of the linear squeeze model (particle 1
/// uses the full expressions, not their s >> gamma_g limit).
AnalyticVariances analytic_variances(const ScenarioParams& sp);

struct PhononNumbers {
  double n2 = 0.0;
  double n1 = 0.0;
};

/// N2 = (gamma_a - gamma_g) / (6 gamma_f), N1 = N2 s^2 / (gamma_g^2 + s^2).
PhononNumbers analytic_phonon(const ScenarioParams& sp);

/// Overlap fidelity of the particle-1 and particle-2 reduced Gaussians,
/// F = integral(P1 P2) / integral(P2^2).
double analytic_fidelity(const ScenarioParams& sp);

/// Polynomial observable sum_k coef_k Q^a_k P^b_k of total degree <= 4.
struct Observable {
  struct Term {
    double coef;
    int q_power;
    int p_power;
  };
  std::vector<Term> terms;

  static Observable q(int power = 1) { return {{{1.0, power, 0}}}; }
  static Observable p(int power = 1) { return {{{1.0, 0, power}}}; }
  static Observable intensity() { return {{{1.0, 2, 0}, {1.0, 0, 2}}}; }
  int degree() const;
  double operator()(double q, double p) const;
};

/// <O> = integral(O P) / integral(P) by grid quadrature; two resolutions must
/// agree to 1e-6 relative or OracleError is thrown.
double moment(const StationaryDensity& density, const Observable& observable);

/// Number of potential minima: 1 (single well), 2 (double well), or 0 for a
/// degenerate ring of minima.
int predicted_mode_count(const StationaryDensity& density);

/// Probability mass of every cell of an nq x np grid (row-major in q),
/// integrated with `sub` x `sub` midpoint sub-samples per cell.
std::vector<double> cell_masses(const StationaryDensity& density, const Bounds& bounds, int nq, int np,
                                int sub = 8);

/// Bounds used for histograms: +-6 standard deviations, or +-1.5 times the
/// ring radius when the origin is a potential maximum.
Bounds default_bounds(const StationaryDensity& density, double sigmas = 6.0, double ring_span = 1.5);

/// Exact stationary covariance (row-major 4x4, order q1 p1 q2 p2) of the
/// linear slow flow (gamma_f = 0) from the Lyapunov equation
/// A C + C A^T + 2 D = 0. Throws OracleError if the flow is unstable.
std::array<double, 16> linear_stationary_covariance(const ScenarioParams& sp);

/// Marginal particle-j density of the exact linear Gaussian steady state.
StationaryDensity exact_linear_density(const ScenarioParams& sp, int particle);

}  // namespace levsim

#endif  // LEVSIM_FP_ORACLE_HPP
