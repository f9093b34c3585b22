#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>
#include <numbers>
#include <random>

#include "levsim/analysis.hpp"
#include "levsim/errors.hpp"

using namespace levsim;

namespace {

Ensemble make_ensemble(std::size_t n_traj, std::size_t n_samples, double interval,
                       const std::function<QuadratureState(std::size_t, std::size_t)>& f) {
  Ensemble e;
  e.config.dt = interval;
  e.config.record_stride = 1;
  e.config.burn_in = 0.0;
  e.config.t_end = interval * static_cast<double>(n_samples);
  for (std::size_t i = 0; i < n_traj; ++i) {
    Trajectory t;
    for (std::size_t k = 0; k < n_samples; ++k) {
      t.times.push_back(interval * static_cast<double>(k + 1));
      t.samples.push_back(f(i, k));
    }
    e.trajectories.push_back(std::move(t));
  }
  return e;
}

// Circular complex Ornstein-Uhlenbeck process sampled exactly.
Ensemble complex_ou(double gamma, double sigma, std::size_t n_traj, std::size_t n_samples, double interval) {
  std::mt19937_64 rng(77);
  std::normal_distribution<double> z(0.0, 1.0);
  const double a = std::exp(-gamma * interval);
  const double b = sigma * std::sqrt(1.0 - a * a);
  double q = 0.0, p = 0.0;
  return make_ensemble(n_traj, n_samples, interval, [&](std::size_t, std::size_t k) {
    if (k == 0) {
      q = sigma * z(rng);
      p = sigma * z(rng);
    } else {
      q = a * q + b * z(rng);
      p = a * p + b * z(rng);
    }
    return QuadratureState{0.0, 0.0, q, p};
  });
}

PhaseSpaceHistogram gaussian_histogram(double sq, double sp, const Bounds& b, int n, std::size_t count,
                                       std::uint64_t seed, double mq = 0.0) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> z(0.0, 1.0);
  std::vector<std::array<double, 2>> pts(count);
  for (auto& x : pts) x = {mq + sq * z(rng), sp * z(rng)};
  return histogram2d(pts, b, n, n);
}

}  // namespace

TEST_CASE("time windows") {
  const TimeWindow w{1.0, 2.0};
  CHECK(w.contains(1.0));
  CHECK(w.contains(2.0));
  CHECK_FALSE(w.contains(2.1));
  CHECK(w.width() == 1.0);
  const auto c = window_centered(5.0, 2.0);
  CHECK(c.begin == 4.0);
  CHECK(c.end == 6.0);
}

TEST_CASE("constant ensemble has zero variance") {
  const auto e = make_ensemble(3, 10, 0.1, [](std::size_t, std::size_t) { return QuadratureState{}; });
  const auto v = quadrature_variances(e, 1, full_window(e));
  CHECK(v.var_q == 0.0);
  CHECK(v.var_p == 0.0);
  CHECK(v.n_samples == 30);
  CHECK(v.n_trajectories == 3);
  CHECK(phonon_population(e, 2, full_window(e)).value == 0.0);
}

TEST_CASE("variance estimator on known samples") {
  const auto e = make_ensemble(2, 2, 1.0, [](std::size_t i, std::size_t k) {
    const double v = static_cast<double>(2 * i + k);  // 0 1 2 3
    return QuadratureState{v, -v, 0.0, 0.0};
  });
  const auto v = quadrature_variances(e, 1, full_window(e));
  CHECK(v.mean_q == doctest::Approx(1.5));
  CHECK(v.var_q == doctest::Approx(5.0 / 3.0));
  CHECK(v.cov_qp == doctest::Approx(-5.0 / 3.0));

  const auto single = make_ensemble(1, 5, 1.0, [](std::size_t, std::size_t k) {
    return QuadratureState{static_cast<double>(k), 0, 0, 0};
  });
  CHECK(std::isnan(quadrature_variances(single, 1, full_window(single)).se_var_q));
  CHECK_THROWS_AS(quadrature_variances(e, 3, full_window(e)), AnalysisError);
  CHECK_THROWS_AS(quadrature_variances(e, 1, TimeWindow{10.0, 11.0}), AnalysisError);
}

TEST_CASE("g2 of a constant-amplitude ring is one") {
  const auto e = make_ensemble(4, 200, 0.01, [](std::size_t i, std::size_t k) {
    const double th = 0.3 * static_cast<double>(k) + static_cast<double>(i);
    return QuadratureState{0, 0, 10.0 * std::cos(th), 10.0 * std::sin(th)};
  });
  const std::vector<double> lags{0.0, 0.05, 0.5};
  const auto c = second_order_coherence(e, 2, lags, full_window(e));
  for (double g : c.g2) CHECK(g == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("g2 of a thermal complex OU process") {
  const double gamma = 5.0;
  const auto e = complex_ou(gamma, 3.0, 200, 2000, 0.01);
  std::vector<double> lags;
  for (int k = 0; k <= 20; ++k) lags.push_back(0.01 * k);
  const auto c = second_order_coherence(e, 2, lags, full_window(e));
  REQUIRE(c.g2.size() == lags.size());
  for (std::size_t k = 0; k < lags.size(); ++k) {
    const double expected = 1.0 + std::exp(-2.0 * gamma * lags[k]);
    CHECK(std::abs(c.g2[k] - expected) < 4.0 * c.se[k] + 0.01);
  }
  const auto fit = fit_coherence_decay(c);
  CHECK(fit.rate == doctest::Approx(2.0 * gamma).epsilon(0.1));
  CHECK(fit.points >= 3);

  const std::vector<double> off{0.015};
  CHECK_THROWS_AS(second_order_coherence(e, 2, off, full_window(e)), AnalysisError);
  const std::vector<double> long_lag{50.0};
  CHECK_THROWS_AS(second_order_coherence(e, 2, long_lag, full_window(e)), AnalysisError);
}

TEST_CASE("histogram binning") {
  const Bounds b{-1.0, 1.0, -1.0, 1.0};
  const std::vector<std::array<double, 2>> one{{0.01, 0.01}};
  const auto h = histogram2d(one, b, 4, 4);
  CHECK(h.mass[2 * 4 + 2] == 1.0);
  CHECK(h.cell_area() == doctest::Approx(0.25));
  CHECK(h.q_center(0) == doctest::Approx(-0.75));

  const std::vector<std::array<double, 2>> mixed{{0.0, 0.0}, {5.0, 0.0}};
  const auto m = histogram2d(mixed, b, 4, 4);
  CHECK(m.out_of_bounds == 1);
  CHECK(m.out_of_bounds_fraction() == 0.5);

  CHECK_THROWS_AS(histogram2d(one, Bounds{1.0, -1.0, 0.0, 1.0}, 4, 4), AnalysisError);
  CHECK_THROWS_AS(histogram2d(one, b, 0, 4), AnalysisError);
}

TEST_CASE("histogram of Gaussian samples matches the oracle") {
  const auto d = StationaryDensity::from_covariance(4.0, 1.0, 0.0, 1.0, 2, "test");
  const Bounds b = default_bounds(d);
  const auto h = gaussian_histogram(2.0, 1.0, b, 32, 400000, 3);
  CHECK(distribution_distance(h, d) < 0.03);
  const auto far = StationaryDensity::from_covariance(0.01, 0.01, 0.0, 1.0, 2, "narrow");
  CHECK(distribution_distance(h, far) > 0.8);
}

TEST_CASE("fidelity of histograms") {
  const Bounds b{-10, 10, -10, 10};
  const auto a = gaussian_histogram(1.0, 1.0, b, 40, 200000, 1);
  CHECK(fidelity_numeric(a, a) == doctest::Approx(1.0).epsilon(1e-12));

  // Two unit Gaussians displaced by dq: F = exp(-dq^2 / 4).
  const auto shifted = gaussian_histogram(1.0, 1.0, b, 40, 200000, 2, 1.0);
  CHECK(fidelity_numeric(shifted, a) == doctest::Approx(std::exp(-0.25)).epsilon(0.03));

  const auto other = gaussian_histogram(1.0, 1.0, Bounds{-5, 5, -5, 5}, 40, 1000, 1);
  CHECK_THROWS_AS(fidelity_numeric(other, a), AnalysisError);
}

TEST_CASE("distance between disjoint supports") {
  const Bounds b{-10, 10, -10, 10};
  const auto a = gaussian_histogram(0.5, 0.5, b, 40, 10000, 1, -5.0);
  const auto c = gaussian_histogram(0.5, 0.5, b, 40, 10000, 2, 5.0);
  CHECK(distribution_distance(a, c.mass) == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(distribution_distance(a, a.mass) == 0.0);
  const std::vector<double> wrong(10, 0.1);
  CHECK_THROWS_AS(distribution_distance(a, wrong), AnalysisError);
}

TEST_CASE("mode detection") {
  const Bounds b{-10, 10, -10, 10};
  const auto one = gaussian_histogram(2.0, 2.0, b, 64, 200000, 4);
  const auto m1 = mode_detect(one, 2.0);
  REQUIRE(m1.size() == 1);
  CHECK(std::abs(m1[0].q) < 0.5);
  CHECK(m1[0].mass > 0.9);

  auto left = gaussian_histogram(1.0, 1.0, b, 64, 100000, 5, -4.0);
  const auto right = gaussian_histogram(1.0, 1.0, b, 64, 100000, 6, 4.0);
  for (std::size_t k = 0; k < left.mass.size(); ++k) left.mass[k] = 0.5 * (left.mass[k] + right.mass[k]);
  const auto m2 = mode_detect(left, 2.0);
  REQUIRE(m2.size() == 2);
  CHECK(std::abs(std::abs(m2[0].q) - 4.0) < 0.5);
  CHECK(m2[0].q * m2[1].q < 0.0);
  CHECK(m2[0].mass + m2[1].mass == doctest::Approx(1.0).epsilon(1e-9));

  CHECK_THROWS_AS(mode_detect(one, 0.5), AnalysisError);
}

TEST_CASE("slow-flow witness separates the two particles") {
  const auto sp = ScenarioParams::preset(Scenario::squeeze);
  SimConfig c;
  c.t_end = 1.0;
  c.burn_in = 0.0;
  c.record_stride = 100;
  c.n_trajectories = 2;
  const auto w = unidirectionality_witness(sp, c, 50.0);
  CHECK(w.particle2_identical);
  CHECK(w.particle1_differs);
  CHECK(w.max_dev_particle2 == 0.0);
}
