#include "levsim/fp_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Core>
#include <Eigen/LU>

#include "levsim/dynamics.hpp"
#include "levsim/errors.hpp"

namespace levsim {

namespace {

constexpr double kTailExponent = 50.0;
constexpr int kCoarseGrid = 512;
constexpr int kFineGrid = 1024;

struct Eigen2 {
  double lo;
  double hi;
};

Eigen2 eigenvalues(double a, double b, double c) {
  const double mean = 0.5 * (a + b);
  const double rad = std::hypot(0.5 * (a - b), c);
  return {mean - rad, mean + rad};
}

// Midpoint rule on an n x n grid over `box`.
template <class Fn>
double integrate(const Bounds& box, int n, Fn&& fn) {
  const double hq = (box.q_max - box.q_min) / n;
  const double hp = (box.p_max - box.p_min) / n;
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    const double q = box.q_min + (i + 0.5) * hq;
    double row = 0.0;
    for (int j = 0; j < n; ++j) row += fn(q, box.p_min + (j + 0.5) * hp);
    total += row;
  }
  return total * hq * hp;
}

bool close(double a, double b, double rtol, double atol) {
  return std::abs(a - b) <= rtol * std::max(std::abs(a), std::abs(b)) + atol;
}

}  // namespace

StationaryDensity::StationaryDensity(double c_q, double c_p, double c_qp, double c_4, double diffusion,
                                     int particle, std::string validity)
    : c_q_(c_q), c_p_(c_p), c_qp_(c_qp), c_4_(c_4), diffusion_(diffusion), particle_(particle),
      validity_(std::move(validity)) {
  for (double v : {c_q, c_p, c_qp, c_4, diffusion}) {
    if (!std::isfinite(v)) throw OracleError("density coefficients must be finite");
  }
  if (diffusion <= 0.0) throw OracleError("degenerate distribution: diffusion constant is zero");
  if (c_4 < 0.0) throw OracleError("not integrable: quartic coefficient is negative");
  const Eigen2 lam = eigenvalues(c_q, c_p, c_qp);
  if (c_4 == 0.0 && lam.lo <= 0.0) {
    std::ostringstream os;
    os << "not integrable: without a quartic term the quadratic form must be positive definite "
       << "(c_q = " << c_q << ", c_p = " << c_p << ", c_qp = " << c_qp << ")";
    throw OracleError(os.str());
  }

  // The quartic term is rotation invariant, so along the softest eigendirection
  // Phi >= lam.lo rho^2 / 2 + c_4 rho^4 holds everywhere.
  phi_min_ = (c_4 > 0.0 && lam.lo < 0.0) ? -lam.lo * lam.lo / (16.0 * c_4) : 0.0;
  const double level = kTailExponent * diffusion + phi_min_;
  if (c_4 == 0.0) {
    // Gaussian: ten marginal standard deviations per axis.
    const double det = c_q * c_p - c_qp * c_qp;
    const double sq = 10.0 * std::sqrt(diffusion * c_p / det);
    const double sp = 10.0 * std::sqrt(diffusion * c_q / det);
    support_ = {-sq, sq, -sp, sp};
  } else {
    const double b = 0.5 * lam.lo;
    const double x = (-b + std::sqrt(b * b + 4.0 * c_4 * level)) / (2.0 * c_4);
    const double r = std::sqrt(std::max(x, 0.0));
    support_ = {-r, r, -r, r};
  }

  auto weight = [this](double q, double p) { return std::exp(-(potential(q, p) - phi_min_) / diffusion_); };
  const double coarse = integrate(support_, kCoarseGrid, weight);
  const double fine = integrate(support_, kFineGrid, weight);
  if (!(fine > 0.0) || !close(coarse, fine, 1e-6, 0.0)) {
    throw OracleError("normalisation quadrature did not converge");
  }
  norm_ = fine;
}

double StationaryDensity::potential(double q, double p) const {
  const double rho2 = q * q + p * p;
  return 0.5 * c_q_ * q * q + 0.5 * c_p_ * p * p + c_qp_ * q * p + c_4_ * rho2 * rho2;
}

double StationaryDensity::log_density(double q, double p) const {
  return -(potential(q, p) - phi_min_) / diffusion_ - std::log(norm_);
}

double StationaryDensity::operator()(double q, double p) const {
  return std::exp(-(potential(q, p) - phi_min_) / diffusion_) / norm_;
}

StationaryDensity StationaryDensity::from_covariance(double var_q, double var_p, double cov_qp, double diffusion,
                                                     int particle, std::string validity) {
  const double det = var_q * var_p - cov_qp * cov_qp;
  if (!(var_q > 0.0 && var_p > 0.0 && det > 0.0)) {
    throw OracleError("degenerate distribution: covariance is not positive definite");
  }
  return StationaryDensity(diffusion * var_p / det, diffusion * var_q / det, -diffusion * cov_qp / det, 0.0,
                           diffusion, particle, std::move(validity));
}

StationaryDensity stationary_density_p2(const ScenarioParams& sp) {
  sp.validate();
  const double g = sp.gamma_g2;
  const double d = slow_flow_diffusion(sp).quadrature_diffusion[2];
  return StationaryDensity(g * (1.0 - sp.squeeze_r) - sp.gamma_a, g * (1.0 + sp.squeeze_r) - sp.gamma_a, 0.0,
                           1.5 * sp.gamma_f, d, 2, "exact gradient-potential steady state");
}

StationaryDensity stationary_density_p1(const ScenarioParams& sp) {
  sp.validate();
  if (!(sp.coupling_s > sp.gamma_g1)) {
    throw OracleError("particle-1 density requires s > gamma_g1");
  }
  const bool squeeze_form = sp.gamma_a == 0.0 && sp.gamma_f == 0.0;
  const bool coherent_form = sp.squeeze_r == 0.0;
  if (!squeeze_form && !coherent_form) {
    throw OracleError("no reduced particle-1 density for simultaneous squeezing and feedback");
  }
  const double g = sp.gamma_g2;
  const double cq2 = g * (1.0 - sp.squeeze_r) - sp.gamma_a;
  const double cp2 = g * (1.0 + sp.squeeze_r) - sp.gamma_a;
  const double c42 = 1.5 * sp.gamma_f;
  const double eps = sp.gamma_g1 * sp.gamma_g1 / (sp.coupling_s * sp.coupling_s);
  const double d = slow_flow_diffusion(sp).quadrature_diffusion[0];
  return StationaryDensity(cq2 + eps * cp2, cp2 + eps * cq2, sp.gamma_g1 * (cp2 - cq2) / sp.coupling_s,
                           c42 * (1.0 + eps) * (1.0 + eps), d, 1,
                           "approximate reduced density, A_t >> gamma_g and s > gamma_g");
}

AnalyticVariances analytic_variances(const ScenarioParams& sp) {
  sp.validate();
  if (sp.gamma_f != 0.0 || sp.gamma_a != 0.0) {
    throw OracleError("closed-form variances need a linear scenario (gamma_a = gamma_f = 0)");
  }
  const double r = sp.squeeze_r;
  if (!(std::abs(r) < 1.0)) throw OracleError("closed-form variances need |r| < 1");
  if (sp.gamma_g1 != sp.gamma_g2) throw OracleError("closed-form variances assume gamma_g1 == gamma_g2");
  const double g = sp.gamma_g2;
  const double s2 = sp.coupling_s * sp.coupling_s;
  const double d = slow_flow_diffusion(sp).quadrature_diffusion[2];
  AnalyticVariances v;
  v.var_q2 = d / (g * (1.0 - r));
  v.var_p2 = d / (g * (1.0 + r));
  const double pre = d * s2 / (g * g * (1.0 - r * r) * (g * g + s2) * (g * g + s2));
  v.var_q1 = pre * (g * g * g * (1.0 - r) + g * (1.0 + r) * s2);
  v.var_p1 = pre * (g * g * g * (1.0 + r) + g * (1.0 - r) * s2);
  return v;
}

PhononNumbers analytic_phonon(const ScenarioParams& sp) {
  sp.validate();
  if (sp.squeeze_r != 0.0) throw OracleError("phonon saturation formula needs r = 0");
  if (!(sp.gamma_f > 0.0)) throw OracleError("phonon saturation formula needs gamma_f > 0");
  if (!(sp.gamma_a > sp.gamma_g2)) {
    throw OracleError("phonon saturation formula needs gamma_a > gamma_g (no limit cycle otherwise)");
  }
  PhononNumbers n;
  n.n2 = (sp.gamma_a - sp.gamma_g2) / (6.0 * sp.gamma_f);
  const double s2 = sp.coupling_s * sp.coupling_s;
  n.n1 = n.n2 * s2 / (sp.gamma_g1 * sp.gamma_g1 + s2);
  return n;
}

double analytic_fidelity(const ScenarioParams& sp) {
  if (sp.gamma_f != 0.0 || sp.gamma_a != 0.0) {
    throw OracleError("analytic fidelity needs a linear scenario (gamma_a = gamma_f = 0)");
  }
  const StationaryDensity d1 = stationary_density_p1(sp);
  const StationaryDensity d2 = stationary_density_p2(sp);
  // Covariance of exp(-x^T K x / (2 D)) is D K^-1.
  auto covariance = [](const StationaryDensity& d) {
    Eigen::Matrix2d k;
    k << d.c_q(), d.c_qp(), d.c_qp(), d.c_p();
    return Eigen::Matrix2d(d.diffusion() * k.inverse());
  };
  const Eigen::Matrix2d s1 = covariance(d1);
  const Eigen::Matrix2d s2 = covariance(d2);
  return 2.0 * std::sqrt(s2.determinant()) / std::sqrt((s1 + s2).determinant());
}

int Observable::degree() const {
  int d = 0;
  for (const auto& t : terms) d = std::max(d, t.q_power + t.p_power);
  return d;
}

double Observable::operator()(double q, double p) const {
  double v = 0.0;
  for (const auto& t : terms) {
    if (t.q_power < 0 || t.p_power < 0) throw OracleError("observable powers must be >= 0");
    v += t.coef * std::pow(q, t.q_power) * std::pow(p, t.p_power);
  }
  return v;
}

double moment(const StationaryDensity& density, const Observable& observable) {
  if (observable.degree() > 4) throw OracleError("observable degree must be <= 4");
  auto evaluate = [&](int n) {
    double num = 0.0;
    double abs_num = 0.0;
    const double den = integrate(density.support(), n, [&](double q, double p) {
      const double w = density(q, p);
      const double o = observable(q, p);
      num += o * w;
      abs_num += std::abs(o) * w;
      return w;
    });
    // integrate() scales its own sum; num/abs_num share the same cell area.
    const Bounds& b = density.support();
    const double area = (b.q_max - b.q_min) * (b.p_max - b.p_min) / (static_cast<double>(n) * n);
    return std::array<double, 2>{num * area / den, abs_num * area / den};
  };
  const auto coarse = evaluate(kCoarseGrid);
  const auto fine = evaluate(kFineGrid);
  if (!close(coarse[0], fine[0], 0.0, 1e-6 * fine[1] + 1e-300)) {
    throw OracleError("moment quadrature did not converge");
  }
  return fine[0];
}

int predicted_mode_count(const StationaryDensity& density) {
  const Eigen2 lam = eigenvalues(density.c_q(), density.c_p(), density.c_qp());
  if (density.c_4() == 0.0 || lam.lo >= 0.0) return 1;
  if (std::abs(lam.hi - lam.lo) <= 1e-12 * std::abs(lam.lo)) return 0;
  return 2;
}

std::vector<double> cell_masses(const StationaryDensity& density, const Bounds& bounds, int nq, int np, int sub) {
  if (nq < 1 || np < 1 || sub < 1) throw OracleError("grid sizes must be positive");
  const double hq = (bounds.q_max - bounds.q_min) / nq;
  const double hp = (bounds.p_max - bounds.p_min) / np;
  const double sq = hq / sub;
  const double spp = hp / sub;
  std::vector<double> masses(static_cast<std::size_t>(nq) * np, 0.0);
  for (int i = 0; i < nq; ++i) {
    for (int j = 0; j < np; ++j) {
      double m = 0.0;
      for (int a = 0; a < sub; ++a) {
        const double q = bounds.q_min + i * hq + (a + 0.5) * sq;
        for (int b = 0; b < sub; ++b) m += density(q, bounds.p_min + j * hp + (b + 0.5) * spp);
      }
      masses[static_cast<std::size_t>(i) * np + j] = m * sq * spp;
    }
  }
  return masses;
}

Bounds default_bounds(const StationaryDensity& density, double sigmas, double ring_span) {
  const Eigen2 lam = eigenvalues(density.c_q(), density.c_p(), density.c_qp());
  if (density.c_4() > 0.0 && lam.hi < 0.0) {
    const double radius = std::sqrt(moment(density, Observable::intensity()));
    const double h = ring_span * radius;
    return {-h, h, -h, h};
  }
  const double hq = sigmas * std::sqrt(moment(density, Observable::q(2)));
  const double hp = sigmas * std::sqrt(moment(density, Observable::p(2)));
  return {-hq, hq, -hp, hp};
}

std::array<double, 16> linear_stationary_covariance(const ScenarioParams& sp) {
  sp.validate();
  if (sp.gamma_f != 0.0) throw OracleError("Lyapunov covariance needs a linear flow (gamma_f = 0)");
  const double g1 = sp.gamma_g1;
  const double s = sp.coupling_s;
  const double k_q2 = sp.gamma_g2 * (1.0 - sp.squeeze_r) - sp.gamma_a;
  const double k_p2 = sp.gamma_g2 * (1.0 + sp.squeeze_r) - sp.gamma_a;
  if (!(k_q2 > 0.0 && k_p2 > 0.0)) throw OracleError("linear flow has no stationary state (unstable particle 2)");

  Eigen::Matrix4d a;
  a << -g1, s, 0.0, -s,
       -s, -g1, s, 0.0,
       0.0, 0.0, -k_q2, 0.0,
       0.0, 0.0, 0.0, -k_p2;
  const auto diffusion = slow_flow_diffusion(sp).quadrature_diffusion;
  Eigen::Matrix4d b = Eigen::Matrix4d::Zero();
  for (int i = 0; i < 4; ++i) b(i, i) = 2.0 * diffusion[i];

  // vec(A C + C A^T) = (I (x) A + A (x) I) vec(C), column-major vec.
  Eigen::Matrix<double, 16, 16> op = Eigen::Matrix<double, 16, 16>::Zero();
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      for (int k = 0; k < 4; ++k) {
        op(i + 4 * j, k + 4 * j) += a(i, k);  // A C
        op(i + 4 * j, i + 4 * k) += a(j, k);  // C A^T
      }
    }
  }
  Eigen::Matrix<double, 16, 1> rhs;
  for (int j = 0; j < 4; ++j) {
    for (int i = 0; i < 4; ++i) rhs(i + 4 * j) = -b(i, j);
  }
  const Eigen::Matrix<double, 16, 1> vec = op.fullPivLu().solve(rhs);
  std::array<double, 16> c;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) c[static_cast<std::size_t>(4 * i + j)] = 0.5 * (vec(i + 4 * j) + vec(j + 4 * i));
  }
  return c;
}

StationaryDensity exact_linear_density(const ScenarioParams& sp, int particle) {
  if (particle != 1 && particle != 2) throw OracleError("particle must be 1 or 2");
  const auto c = linear_stationary_covariance(sp);
  const std::size_t o = particle == 1 ? 0 : 2;
  const double d = slow_flow_diffusion(sp).quadrature_diffusion[o];
  return StationaryDensity::from_covariance(c[4 * o + o], c[4 * (o + 1) + o + 1], c[4 * o + o + 1], d, particle,
                                            "exact linear Gaussian steady state");
}

}  // namespace levsim
