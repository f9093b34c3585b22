#include "levsim/integrator.hpp"

#include <algorithm>
#include <atomic>
#include <cstring>
#include <optional>
#include <sstream>
#include <thread>

#include <Eigen/Cholesky>
#include <Eigen/Core>

namespace levsim {

EnsembleError::EnsembleError(std::vector<Failure> failures)
    : std::runtime_error([&] {
        std::ostringstream os;
        os << failures.size() << " trajectory failure(s):";
        for (const auto& f : failures) os << " [#" << f.index << " t=" << f.time << ": " << f.message << "]";
        return os.str();
      }()),
      failures_(std::move(failures)) {}

// --- configuration ---------------------------------------------------------

void SimConfig::validate() const {
  if (!(std::isfinite(dt) && dt > 0.0)) throw InvalidParameter("dt must be > 0");
  if (!(std::isfinite(burn_in) && burn_in >= 0.0)) throw InvalidParameter("burn_in must be >= 0");
  if (!(std::isfinite(t_end) && t_end > burn_in)) throw InvalidParameter("t_end must exceed burn_in");
  if (n_trajectories < 1) throw InvalidParameter("n_trajectories must be >= 1");
  if (record_stride < 1) throw InvalidParameter("record_stride must be >= 1");
  if (t_end / dt > 1e13) throw InvalidParameter("t_end / dt is too large");
}

std::size_t SimConfig::n_steps() const {
  return static_cast<std::size_t>(std::ceil(t_end / dt - 1e-9));
}

std::vector<std::size_t> SimConfig::record_steps() const {
  const std::size_t n = n_steps();
  // Steps whose time k dt is not later than burn_in are excluded; the small
  // slack absorbs burn_in values that are exact multiples of dt.
  const double cut = burn_in / dt + 1e-9;
  std::vector<std::size_t> steps;
  for (std::size_t k = n;; k -= record_stride) {
    if (static_cast<double>(k) <= cut) break;
    steps.push_back(k);
    if (k < record_stride) break;
  }
  std::reverse(steps.begin(), steps.end());
  return steps;
}

Stepper resolve_stepper(Stepper requested, const ScenarioParams& sp) {
  if (requested != Stepper::automatic) return requested;
  return sp.gamma_f != 0.0 ? Stepper::heun : Stepper::euler_maruyama;
}

Stepper resolve_stepper(Stepper requested, const ScenarioParams& sp, double dt) {
  if (requested != Stepper::automatic) return requested;
  // Euler-Maruyama inflates a rotation at rate s by sqrt(1 + (s dt)^2) per
  // step, an anti-damping of s^2 dt / 2 that competes with gamma_g1.
  const double spurious = 0.5 * sp.coupling_s * sp.coupling_s * dt;
  if (spurious > 0.01 * sp.gamma_g1) return Stepper::heun;
  return resolve_stepper(requested, sp);
}

namespace {

// Largest linear rate of the particle-2 flow, including the stiffness at the
// feedback-stabilised amplitude.
double particle2_max_rate(const ScenarioParams& sp) {
  const double r = std::abs(sp.squeeze_r);
  double rate = std::abs(sp.gamma_g2 * (1.0 + r) - sp.gamma_a);
  rate = std::max(rate, std::abs(sp.gamma_g2 * (1.0 - r) - sp.gamma_a));
  if (sp.gamma_f > 0.0) {
    const double excess = sp.gamma_a - sp.gamma_g2 * (1.0 - r);
    if (excess > 0.0) rate = std::max(rate, 3.0 * excess + 2.0 * sp.gamma_g2 * r);
  }
  return rate;
}

}  // namespace

std::vector<std::string> stability_warnings(const SimConfig& cfg, const ScenarioParams& sp) {
  std::vector<std::string> out;
  auto check = [&](double rate, const char* what) {
    if (cfg.dt * rate > 0.1) {
      std::ostringstream os;
      os << "dt * " << what << " = " << cfg.dt * rate << " exceeds 0.1";
      out.push_back(os.str());
    }
  };
  check(sp.gamma_g1, "gamma_g1");
  check(std::abs(sp.coupling_s), "s");
  check(particle2_max_rate(sp), "particle-2 relaxation rate");
  if (cfg.model == Model::full_oscillation) check(sp.omega0, "omega0");
  return out;
}

double default_burn_in(const ScenarioParams& sp) {
  double slowest = sp.gamma_g1;
  const double r = sp.squeeze_r;
  for (double rate : {sp.gamma_g2 * (1.0 - r) - sp.gamma_a, sp.gamma_g2 * (1.0 + r) - sp.gamma_a}) {
    if (rate > 0.0) slowest = std::min(slowest, rate);
  }
  // Without a stable origin the relevant scale is the radial relaxation at
  // the limit-cycle amplitude, 2 (gamma_a - gamma_g2 (1 - r)).
  if (sp.gamma_f > 0.0) {
    const double excess = sp.gamma_a - sp.gamma_g2 * (1.0 - r);
    if (excess > 0.0) slowest = std::min(slowest, 2.0 * excess);
  }
  return 10.0 / slowest;
}

const std::vector<double>& Ensemble::times() const {
  static const std::vector<double> empty;
  return trajectories.empty() ? empty : trajectories.front().times;
}

// --- random streams --------------------------------------------------------

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t sub_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(splitmix64(master) ^ (index * 0xD1B54A32D192ED03ull + 0x632BE59BD9B4E019ull));
}

// --- lab-frame stepper -----------------------------------------------------

HarmonicSplitStepper::HarmonicSplitStepper(const ScenarioParams& sp, const CouplingCoefficients& c,
                                           double dt)
    : sp_(sp), c_(c), dt_(dt), cos_(std::cos(sp.omega0 * dt)), sin_(std::sin(sp.omega0 * dt)) {
  const NoiseSpec noise = slow_flow_diffusion(sp);
  for (int j = 0; j < 2; ++j) noise_scale_[j] = sp.omega0 * noise.force_amplitude(j) * std::sqrt(dt);
}

std::array<double, 2> HarmonicSplitStepper::residual(const OscillatorState& x) const {
  const auto a = full_oscillation_drift(x, sp_, c_);
  const double w2 = sp_.omega0 * sp_.omega0;
  return {a[0] + w2 * x.qz1, a[1] + w2 * x.qz2};
}

OscillatorState HarmonicSplitStepper::step(const OscillatorState& x,
                                           const std::array<double, 2>& force_increments) const {
  const double w = sp_.omega0;
  const double half = 0.5 * dt_;
  const auto r0 = residual(x);
  const double v1 = x.vz1 + half * r0[0];
  const double v2 = x.vz2 + half * r0[1];

  OscillatorState y;
  y.t = x.t + dt_;
  y.qz1 = x.qz1 * cos_ + (v1 / w) * sin_;
  y.vz1 = -w * x.qz1 * sin_ + v1 * cos_;
  y.qz2 = x.qz2 * cos_ + (v2 / w) * sin_;
  y.vz2 = -w * x.qz2 * sin_ + v2 * cos_;

  const auto r1 = residual(y);
  y.vz1 += half * r1[0] + noise_scale_[0] * force_increments[0];
  y.vz2 += half * r1[1] + noise_scale_[1] * force_increments[1];
  if (!y.finite()) throw IntegratorBlowup(y.t, "lab-frame state became non-finite at t = " + std::to_string(y.t));
  return y;
}

// --- trajectories ----------------------------------------------------------

QuadratureState draw_initial_state(const InitialDistribution& init, const ScenarioParams& sp,
                                   NormalStream& normals) {
  const auto mean = init.mean.as_array();
  switch (init.kind) {
    case InitialDistribution::Kind::point:
      return init.mean;
    case InitialDistribution::Kind::thermal: {
      const double v1 = init.variance.value_or(sp.recoil_rate / (4.0 * sp.gamma_g1));
      const double v2 = init.variance.value_or(sp.recoil_rate / (4.0 * sp.gamma_g2));
      if (v1 < 0.0 || v2 < 0.0) throw InvalidParameter("thermal variance must be >= 0");
      const auto z = normals.draw<4>();
      const double a1 = std::sqrt(v1);
      const double a2 = std::sqrt(v2);
      return {mean[0] + a1 * z[0], mean[1] + a1 * z[1], mean[2] + a2 * z[2], mean[3] + a2 * z[3]};
    }
    case InitialDistribution::Kind::gaussian: {
      const Eigen::Matrix4d cov = Eigen::Map<const Eigen::Matrix<double, 4, 4, Eigen::RowMajor>>(init.covariance.data());
      if (!cov.isApprox(cov.transpose(), 1e-12)) throw InvalidParameter("initial covariance must be symmetric");
      // LDLT tolerates singular (e.g. partly deterministic) covariances.
      Eigen::LDLT<Eigen::Matrix4d> ldlt(cov);
      if (ldlt.info() != Eigen::Success || (ldlt.vectorD().array() < -1e-12).any()) {
        throw InvalidParameter("initial covariance must be positive semi-definite");
      }
      const auto z = normals.draw<4>();
      Eigen::Vector4d w = ldlt.vectorD().cwiseMax(0.0).cwiseSqrt().cwiseProduct(Eigen::Vector4d(z[0], z[1], z[2], z[3]));
      Eigen::Vector4d x = ldlt.transpositionsP().transpose() * (ldlt.matrixL() * w);
      return {mean[0] + x[0], mean[1] + x[1], mean[2] + x[2], mean[3] + x[3]};
    }
  }
  return init.mean;
}

namespace {

template <bool UseHeun>
void integrate_slow_flow(const SimConfig& cfg, const ScenarioParams& sp, NormalStream& normals,
                         Trajectory& out) {
  const auto steps = cfg.record_steps();
  out.times.reserve(steps.size());
  out.samples.reserve(steps.size());
  const auto amplitude = slow_flow_diffusion(sp).quadrature_amplitudes();
  // By-value copy keeps the rates in registers across the RNG calls.
  const auto drift = [p = sp](const std::array<double, 4>& x, double) { return slow_flow_drift(x, p); };

  std::array<double, 4> x = out.initial.as_array();
  std::size_t next = 0;
  const std::size_t n = cfg.n_steps();
  for (std::size_t k = 1; k <= n; ++k) {
    const auto z = normals.draw<4>();
    const double t = static_cast<double>(k - 1) * cfg.dt;
    if constexpr (UseHeun) {
      x = step_heun(x, drift, amplitude, cfg.dt, z, t);
    } else {
      x = step_euler_maruyama(x, drift, amplitude, cfg.dt, z, t);
    }
    if (next < steps.size() && steps[next] == k) {
      out.times.push_back(static_cast<double>(k) * cfg.dt);
      out.samples.push_back(QuadratureState::from_array(x));
      ++next;
    }
  }
}

template <class Fn>
std::vector<Trajectory> run_indexed(std::size_t n, unsigned threads, Fn&& simulate_one) {
  std::vector<Trajectory> out(n);
  std::vector<std::optional<EnsembleError::Failure>> failures(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        out[i] = simulate_one(i);
      } catch (const IntegratorBlowup& e) {
        failures[i] = EnsembleError::Failure{i, e.time(), e.what()};
      }
    }
  };
  unsigned workers = threads != 0 ? threads : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, n));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  std::vector<EnsembleError::Failure> failed;
  for (auto& f : failures) {
    if (f) failed.push_back(std::move(*f));
  }
  if (!failed.empty()) throw EnsembleError(std::move(failed));
  return out;
}

}  // namespace

Trajectory simulate_trajectory(const SimConfig& cfg, const ScenarioParams& sp, std::uint64_t seed) {
  cfg.validate();
  sp.validate();
  NormalStream normals(seed);
  Trajectory out;
  out.sub_seed = seed;
  out.initial = draw_initial_state(cfg.initial, sp, normals);
  if (resolve_stepper(cfg.stepper, sp, cfg.dt) == Stepper::heun) {
    integrate_slow_flow<true>(cfg, sp, normals, out);
  } else {
    integrate_slow_flow<false>(cfg, sp, normals, out);
  }
  return out;
}

Trajectory simulate_full_trajectory(const SimConfig& cfg, const ScenarioParams& sp,
                                    const CouplingCoefficients& c, std::uint64_t seed) {
  cfg.validate();
  sp.validate();
  NormalStream normals(seed);
  Trajectory out;
  out.sub_seed = seed;
  out.initial = draw_initial_state(cfg.initial, sp, normals);

  const auto steps = cfg.record_steps();
  out.times.reserve(steps.size());
  out.samples.reserve(steps.size());
  const HarmonicSplitStepper stepper(sp, c, cfg.dt);
  OscillatorState x = modulate(out.initial, sp.omega0, 0.0);
  std::size_t next = 0;
  const std::size_t n = cfg.n_steps();
  for (std::size_t k = 1; k <= n; ++k) {
    x = stepper.step(x, normals.draw<2>());
    // Re-anchor the clock so the drive phase never accumulates rounding.
    x.t = static_cast<double>(k) * cfg.dt;
    if (next < steps.size() && steps[next] == k) {
      out.times.push_back(x.t);
      out.samples.push_back(demodulate(x, sp.omega0));
      ++next;
    }
  }
  return out;
}

Ensemble run_ensemble(const SimConfig& cfg, const ScenarioParams& sp) {
  cfg.validate();
  sp.validate();
  Ensemble e;
  e.config = cfg;
  e.parameter_hash = parameter_hash(cfg, sp);
  e.trajectories = run_indexed(cfg.n_trajectories, cfg.threads, [&](std::size_t i) {
    return simulate_trajectory(cfg, sp, sub_seed(cfg.master_seed, i));
  });
  return e;
}

Ensemble run_full_ensemble(const SimConfig& cfg, const ScenarioParams& sp, const CouplingCoefficients& c) {
  cfg.validate();
  sp.validate();
  Ensemble e;
  e.config = cfg;
  e.config.model = Model::full_oscillation;
  e.parameter_hash = parameter_hash(e.config, sp);
  for (double v : {c.g, c.g1, c.g2, c.s1, c.s2, c.s12, c.s21}) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, sizeof bits);
    e.parameter_hash = sub_seed(e.parameter_hash, bits);
  }
  e.trajectories = run_indexed(cfg.n_trajectories, cfg.threads, [&](std::size_t i) {
    return simulate_full_trajectory(cfg, sp, c, sub_seed(cfg.master_seed, i));
  });
  return e;
}

namespace {

class Fnv1a {
 public:
  void add(const void* data, std::size_t n) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
      h_ ^= p[i];
      h_ *= 0x100000001B3ull;
    }
  }
  void add(double v) { add(&v, sizeof v); }
  void add(std::uint64_t v) { add(&v, sizeof v); }
  std::uint64_t value() const { return h_; }

 private:
  std::uint64_t h_ = 0xCBF29CE484222325ull;
};

}  // namespace

std::uint64_t parameter_hash(const SimConfig& cfg, const ScenarioParams& sp) {
  Fnv1a h;
  for (double v : {cfg.dt, cfg.t_end, cfg.burn_in}) h.add(v);
  h.add(static_cast<std::uint64_t>(cfg.n_trajectories));
  h.add(cfg.master_seed);
  h.add(static_cast<std::uint64_t>(cfg.record_stride));
  h.add(static_cast<std::uint64_t>(cfg.model));
  h.add(static_cast<std::uint64_t>(resolve_stepper(cfg.stepper, sp, cfg.dt)));
  h.add(static_cast<std::uint64_t>(cfg.initial.kind));
  for (double v : cfg.initial.mean.as_array()) h.add(v);
  for (double v : cfg.initial.covariance) h.add(v);
  h.add(cfg.initial.variance.value_or(-1.0));
  h.add(static_cast<std::uint64_t>(sp.scenario));
  for (double v : {sp.omega0, sp.gamma_g1, sp.gamma_g2, sp.recoil_rate, sp.gas_diffusion, sp.gamma_a,
                   sp.gamma_f, sp.parametric_f, sp.squeeze_r, sp.coupling_s}) {
    h.add(v);
  }
  h.add(sp.thermal ? sp.thermal->temperature : -1.0);
  h.add(sp.thermal && sp.thermal->gas_damping ? *sp.thermal->gas_damping : -1.0);
  h.add(static_cast<std::uint64_t>(sp.thermal_in_slow_flow));
  return h.value();
}

}  // namespace levsim
