#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "levsim/dynamics.hpp"
#include "levsim/params.hpp"

using namespace levsim;

TEST_CASE("slow-flow drift examples") {
  const auto sq = ScenarioParams::preset(Scenario::squeeze);
  const auto zero = slow_flow_drift(QuadratureState{}, sq);
  for (double v : zero) CHECK(v == 0.0);

  const auto d = slow_flow_drift(QuadratureState{0, 0, 1, 0}, sq);
  CHECK(d[2] == doctest::Approx(-0.2).epsilon(1e-14));
  CHECK(d[1] == 100.0);

  for (auto s : {Scenario::coherent, Scenario::bistable, Scenario::custom}) {
    CHECK(slow_flow_drift(QuadratureState{0, 0, 1, 0}, ScenarioParams::preset(s))[1] == 100.0);
  }
}

TEST_CASE("particle-1 block is linear with the closed-form Jacobian") {
  auto sp = ScenarioParams::preset(Scenario::coherent);
  sp.gamma_g1 = 1.7;
  std::mt19937_64 rng(3);
  std::normal_distribution<double> n(0.0, 50.0);
  for (int i = 0; i < 50; ++i) {
    const QuadratureState x{n(rng), n(rng), n(rng), n(rng)};
    const double h = 1e-3;
    auto shifted = [&](int k) {
      auto a = x.as_array();
      a[k] += h;
      return slow_flow_drift(QuadratureState::from_array(a), sp);
    };
    const auto f0 = slow_flow_drift(x, sp);
    const auto fq = shifted(0);
    const auto fp = shifted(1);
    const double jac[2][2] = {{(fq[0] - f0[0]) / h, (fp[0] - f0[0]) / h}, {(fq[1] - f0[1]) / h, (fp[1] - f0[1]) / h}};
    const double expected[2][2] = {{-sp.gamma_g1, sp.coupling_s}, {-sp.coupling_s, -sp.gamma_g1}};
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) CHECK(jac[a][b] == doctest::Approx(expected[a][b]).epsilon(1e-8));
    }
  }
}

TEST_CASE("particle-2 drift is the negative gradient of the potential") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> n(0.0, 1.0);
  for (auto s : {Scenario::squeeze, Scenario::coherent, Scenario::bistable}) {
    const auto sp = ScenarioParams::preset(s);
    for (int i = 0; i < 100; ++i) {
      const double q = 100.0 * n(rng);
      const double p = 100.0 * n(rng);
      const auto f = slow_flow_drift(QuadratureState{0, 0, q, p}, sp);
      const double h = 1e-4 * std::max(1.0, std::hypot(q, p));
      const double gq = (particle2_potential(q + h, p, sp) - particle2_potential(q - h, p, sp)) / (2 * h);
      const double gp = (particle2_potential(q, p + h, sp) - particle2_potential(q, p - h, sp)) / (2 * h);
      // Cancellation in the difference scales with the larger component.
      const double scale = std::max(std::abs(f[2]), std::abs(f[3]));
      CHECK(-gq == doctest::Approx(f[2]).epsilon(1e-6).scale(scale));
      CHECK(-gp == doctest::Approx(f[3]).epsilon(1e-6).scale(scale));
    }
  }
}

TEST_CASE("r = 0 particle-2 drift commutes with rotations") {
  const auto sp = ScenarioParams::preset(Scenario::coherent);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-200.0, 200.0), a(0.0, 2.0 * std::numbers::pi);
  for (int i = 0; i < 100; ++i) {
    const double q = u(rng), p = u(rng), th = a(rng);
    const double c = std::cos(th), s = std::sin(th);
    const auto f = slow_flow_drift(QuadratureState{0, 0, q, p}, sp);
    const auto g = slow_flow_drift(QuadratureState{0, 0, c * q - s * p, s * q + c * p}, sp);
    CHECK(g[2] == doctest::Approx(c * f[2] - s * f[3]).epsilon(1e-10));
    CHECK(g[3] == doctest::Approx(s * f[2] + c * f[3]).epsilon(1e-10));
  }
}

TEST_CASE("lab-frame drift term by term") {
  auto sp = ScenarioParams::preset(Scenario::custom);
  sp.parametric_f = 0.0;
  const auto c = coupling_coefficients(2.0, std::numbers::pi / 2.0, std::numbers::pi / 2.0);
  const auto zero = full_oscillation_drift(OscillatorState{}, sp, c);
  CHECK(zero[0] == 0.0);
  CHECK(zero[1] == 0.0);

  const double w = sp.omega0;
  const auto a = full_oscillation_drift(OscillatorState{1.0, 0.0, 0.0, 0.0, 0.0}, sp, c);
  CHECK(a[0] == doctest::Approx(-w * w - w * c.s1).epsilon(1e-14));
  CHECK(a[1] == doctest::Approx(w * c.s21).epsilon(1e-14));
}

TEST_CASE("lab-frame particle 2 ignores particle 1 when S21 = S2 = 0") {
  auto sp = ScenarioParams::preset(Scenario::squeeze);
  sp.parametric_f = averaged_parametric_drive(sp);
  sp.gamma_a = 3.0;
  sp.gamma_f = 1e-3;
  const auto c = unidirectional_coefficients(sp.coupling_s);
  std::mt19937_64 rng(9);
  std::normal_distribution<double> n(0.0, 30.0);
  for (int i = 0; i < 200; ++i) {
    OscillatorState x{n(rng), n(rng) * sp.omega0, n(rng), n(rng) * sp.omega0, 1e-3 * i};
    OscillatorState y = x;
    y.qz1 = n(rng);
    y.vz1 = n(rng) * sp.omega0;
    CHECK(full_oscillation_drift(x, sp, c)[1] == full_oscillation_drift(y, sp, c)[1]);
  }
}

TEST_CASE("diffusion coefficients") {
  auto sp = ScenarioParams::preset(Scenario::squeeze);
  const auto n = slow_flow_diffusion(sp);
  for (double d : n.quadrature_diffusion) CHECK(d == 250.0);
  const auto amp = n.quadrature_amplitudes();
  CHECK(amp[0] == doctest::Approx(-std::sqrt(500.0)));
  CHECK(amp[1] == doctest::Approx(std::sqrt(500.0)));
  CHECK(std::abs(amp[1]) == doctest::Approx(22.36).epsilon(1e-3));

  sp.recoil_rate = 0.0;
  for (double a : slow_flow_diffusion(sp).quadrature_amplitudes()) CHECK(a == 0.0);

  sp.recoil_rate = 2000.0;
  for (double d : slow_flow_diffusion(sp).quadrature_diffusion) CHECK(d == 500.0);

  // Thermal term enters the slow flow only on request.
  sp.recoil_rate = 1000.0;
  sp.thermal = ThermalBlock{1e-3, std::nullopt};
  const double th = thermal_force_intensity(sp, 1);
  CHECK(slow_flow_diffusion(sp).quadrature_diffusion[0] == 250.0);
  CHECK(slow_flow_diffusion(sp).thermal_amplitude[0] == doctest::Approx(std::sqrt(th)));
  sp.thermal_in_slow_flow = true;
  CHECK(slow_flow_diffusion(sp).quadrature_diffusion[0] == doctest::Approx(250.0 + 0.25 * th));
}

TEST_CASE("modulate and demodulate are inverse") {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> n(0.0, 10.0);
  const double w = 2.0 * std::numbers::pi * 127e3;
  for (int i = 0; i < 100; ++i) {
    const QuadratureState x{n(rng), n(rng), n(rng), n(rng)};
    const double t = 1e-4 * std::abs(n(rng));
    const auto y = demodulate(modulate(x, w, t), w);
    CHECK(y.q1 == doctest::Approx(x.q1).epsilon(1e-9));
    CHECK(y.p1 == doctest::Approx(x.p1).epsilon(1e-9));
    CHECK(y.q2 == doctest::Approx(x.q2).epsilon(1e-9));
    CHECK(y.p2 == doctest::Approx(x.p2).epsilon(1e-9));
  }
}
