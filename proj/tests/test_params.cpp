#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "levsim/errors.hpp"
#include "levsim/params.hpp"

using namespace levsim;

namespace {

constexpr double pi = std::numbers::pi;

OpticalSetup reference_setup() {
  OpticalSetup s;
  s.polarizability = 3.3e-32;
  s.wave_vector = 2.0 * pi / 1064e-9;
  s.rayleigh_range = 3.0e-6;
  s.power_1 = 0.1;
  s.power_2 = 0.2;
  s.beam_waist = 1.0e-6;
  s.distance = (pi / 4.0) / s.wave_vector;
  s.phase_1 = pi / 4.0;
  s.phase_2 = 0.0;
  return s;
}

}  // namespace

TEST_CASE("modulating constant matches a step-by-step evaluation") {
  // Frozen from an independent evaluation of the formula term by term.
  const double expected = 2.1223588595140094e-06;
  CHECK(modulating_constant(reference_setup()) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("modulating constant scaling with the beam powers") {
  OpticalSetup s = reference_setup();
  const double g = modulating_constant(s);
  s.power_1 *= 4.0;
  CHECK(modulating_constant(s) == doctest::Approx(2.0 * g).epsilon(1e-14));

  s.power_1 = 0.0;
  CHECK(modulating_constant(s) == 0.0);

  // Monotone in each power.
  OpticalSetup t = reference_setup();
  double last = -1.0;
  for (double p : {0.01, 0.05, 0.1, 0.5, 1.0}) {
    t.power_2 = p;
    const double v = modulating_constant(t);
    CHECK(v > last);
    last = v;
  }
}

TEST_CASE("invalid optical setups are rejected") {
  OpticalSetup s = reference_setup();
  s.power_1 = -1.0;
  CHECK_THROWS_AS(modulating_constant(s), InvalidParameter);
  s = reference_setup();
  s.beam_waist = 0.0;
  CHECK_THROWS_AS(modulating_constant(s), InvalidParameter);
  s = reference_setup();
  s.distance = 0.0;
  CHECK_THROWS_AS(s.validate(), InvalidParameter);
}

TEST_CASE("coupling coefficients at the unidirectional point") {
  const double g = 3.0;
  const auto c = coupling_coefficients(g, pi / 4.0, pi / 4.0);
  CHECK(std::abs(c.s2) < 1e-15 * g);
  CHECK(std::abs(c.s21) < 1e-15 * g);
  CHECK(c.s1 == doctest::Approx(4.0 * g / pi).epsilon(1e-14));
  CHECK(c.s12 == doctest::Approx(4.0 * g / pi).epsilon(1e-14));
  CHECK(is_unidirectional(c) == Direction::two_to_one);
}

TEST_CASE("coupling coefficients for reciprocal and quarter-wave cases") {
  const double g = 2.0;
  for (double kd0 : {0.3, 1.0, 2.5, 7.0}) {
    const auto c = coupling_coefficients(g, kd0, 0.0);
    CHECK(c.s12 == doctest::Approx(g * std::cos(kd0) / kd0).epsilon(1e-14));
    CHECK(c.s21 == c.s12);
    CHECK(is_unidirectional(c) == Direction::none);
  }
  const auto c = coupling_coefficients(g, pi / 2.0, pi / 2.0);
  CHECK(std::abs(c.g1) < 1e-15);
  CHECK(c.g2 == doctest::Approx(2.0 * g / pi));
  CHECK(c.s1 == doctest::Approx(2.0 * g / pi));
  CHECK(c.s2 == doctest::Approx(-2.0 * g / pi));
  CHECK(c.s12 == doctest::Approx(2.0 * g / pi));
  CHECK(c.s21 == doctest::Approx(-2.0 * g / pi));
}

TEST_CASE("reversed phase gives one_to_two") {
  const auto c = coupling_coefficients(1.0, pi / 4.0, -pi / 4.0);
  CHECK(is_unidirectional(c) == Direction::one_to_two);
}

TEST_CASE("coupling invariants hold for random inputs") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ug(-5.0, 5.0), uk(0.01, 20.0), up(-pi, pi);
  for (int i = 0; i < 1000; ++i) {
    const double g = ug(rng), kd0 = uk(rng), dphi = up(rng);
    const auto c = coupling_coefficients(g, kd0, dphi);
    const double scale = std::abs(g) / kd0 + 1e-300;
    CHECK(std::abs(c.s1 + c.s2 - 2.0 * c.g1) <= 1e-14 * scale);
    CHECK(std::abs(c.s1 - c.s2 - 2.0 * c.g2) <= 1e-14 * scale);
    CHECK(std::abs(c.s12 + c.s21 - 2.0 * g * std::cos(kd0) * std::cos(dphi) / kd0) <= 1e-13 * scale);
    const auto mirrored = coupling_coefficients(g, kd0, -dphi);
    CHECK(c.s12 == mirrored.s21);
  }
}

TEST_CASE("unidirectional condition at higher branches") {
  for (int n = 0; n < 4; ++n) {
    const double x = 2.0 * n * pi + pi / 4.0;
    const double g = 1.0;
    const auto c = coupling_coefficients(g, x, x);
    CHECK(std::abs(c.s21) < 1e-12 * g);
    CHECK(std::abs(c.s2) < 1e-12 * g);
  }
}

TEST_CASE("kd0 must be positive") {
  CHECK_THROWS_AS(coupling_coefficients(1.0, 0.0, 0.0), InvalidParameter);
  CHECK_THROWS_AS(coupling_coefficients(1.0, -1.0, 0.0), InvalidParameter);
}

TEST_CASE("ideal unidirectional coefficients and slow-flow rate") {
  const auto c = unidirectional_coefficients(100.0);
  CHECK(c.s2 == 0.0);
  CHECK(c.s21 == 0.0);
  CHECK(coupling_rate(c) == 100.0);
  CHECK(is_unidirectional(c) == Direction::two_to_one);
  const auto d = coupling_coefficients(modulating_constant_for_rate(100.0, pi / 4.0, pi / 4.0), pi / 4.0, pi / 4.0);
  CHECK(coupling_rate(d) == doctest::Approx(100.0).epsilon(1e-14));
  CHECK(d.s1 == doctest::Approx(c.s1).epsilon(1e-14));
  CHECK(is_unidirectional(CouplingCoefficients{}) == Direction::none);
}

TEST_CASE("scenario presets") {
  const auto sq = ScenarioParams::preset(Scenario::squeeze);
  CHECK(sq.omega0 == doctest::Approx(2.0 * pi * 127e3).epsilon(1e-15));
  CHECK(sq.recoil_rate == 1000.0);
  CHECK(sq.gamma_g1 == 1.0);
  CHECK(sq.gamma_g2 == 1.0);
  CHECK(sq.squeeze_r == 0.8);
  CHECK(sq.coupling_s == 100.0);
  CHECK(drive_consistent(sq));

  const auto co = ScenarioParams::preset(Scenario::coherent);
  CHECK(co.gamma_a == 20.0);
  CHECK(co.gamma_f == 1e-4);
  CHECK(co.squeeze_r == 0.0);

  const auto bi = ScenarioParams::preset(Scenario::bistable);
  CHECK(bi.gamma_g1 == 1.0);
  CHECK(bi.gamma_g2 == 20.0);
  CHECK(bi.squeeze_r == 0.9);
  CHECK(bi.gamma_f == 2e-4);
  CHECK(squeeze_r_from_f(bi.parametric_f, bi.omega0, bi.gamma_g2) == doctest::Approx(0.9).epsilon(1e-14));

  CHECK(scenario_from_string("bistable") == Scenario::bistable);
  CHECK_FALSE(scenario_from_string("other").has_value());
  CHECK(to_string(Scenario::coherent) == "coherent");
}

TEST_CASE("parameter validation") {
  auto sp = ScenarioParams::preset(Scenario::squeeze);
  sp.recoil_rate = -1.0;
  CHECK_THROWS_AS(sp.validate(), InvalidParameter);
  sp = ScenarioParams::preset(Scenario::squeeze);
  sp.gamma_f = -1e-4;
  CHECK_THROWS_AS(sp.validate(), InvalidParameter);
  sp = ScenarioParams::preset(Scenario::squeeze);
  sp.parametric_f *= 1.01;
  CHECK_FALSE(drive_consistent(sp));
}

TEST_CASE("thermal force intensity") {
  auto sp = ScenarioParams::preset(Scenario::custom);
  CHECK(thermal_force_intensity(sp, 1) == 0.0);
  sp.thermal = ThermalBlock{300.0, std::nullopt};
  const double expected = 2.0 * 1.380649e-23 * 300.0 * 1.0 / (1.054571817e-34 * sp.omega0);
  CHECK(thermal_force_intensity(sp, 2) == doctest::Approx(expected).epsilon(1e-14));
}
