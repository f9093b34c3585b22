#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <string>

#include "levsim/config.hpp"
#include "levsim/errors.hpp"

using namespace levsim;

namespace {

std::string error_of(const std::string& text, const Overrides& ov = {}) {
  try {
    parse_config_text(text, ov);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("scenario tags expand to the published parameter sets") {
  const auto sq = parse_config_text(R"({"scenario":"squeeze"})");
  CHECK(sq.physics.scenario == Scenario::squeeze);
  CHECK(sq.physics.omega0 == doctest::Approx(2.0 * std::numbers::pi * 127e3).epsilon(1e-15));
  CHECK(sq.physics.recoil_rate == 1000.0);
  CHECK(sq.physics.gamma_g1 == 1.0);
  CHECK(sq.physics.gamma_g2 == 1.0);
  CHECK(sq.physics.squeeze_r == 0.8);
  CHECK(sq.physics.coupling_s == 100.0);
  CHECK(sq.simulation.n_trajectories == 2000);
  CHECK(sq.simulation.t_end == 100.0);
  CHECK(sq.simulation.burn_in == doctest::Approx(50.0));

  const auto co = parse_config_text(R"({"scenario":"coherent"})");
  CHECK(co.physics.gamma_a == 20.0);
  CHECK(co.physics.gamma_f == 1e-4);
  CHECK(co.physics.squeeze_r == 0.0);
  CHECK(co.analysis.g2_reference);

  const auto bi = parse_config_text(R"({"scenario":"bistable"})");
  CHECK(bi.physics.gamma_g1 == 1.0);
  CHECK(bi.physics.gamma_g2 == 20.0);
  CHECK(bi.physics.squeeze_r == 0.9);
  CHECK(bi.physics.gamma_f == 2e-4);
  CHECK(drive_consistent(bi.physics));

  CHECK(parse_config_text("{}").physics.scenario == Scenario::custom);
}

TEST_CASE("unknown keys and bad values are rejected with their path") {
  CHECK(error_of(R"({"scenario":"squeeze","extra":1})").find("extra") != std::string::npos);
  CHECK(error_of(R"({"physics":{"gama_a":1}})").find("physics.gama_a") != std::string::npos);
  CHECK(error_of(R"({"simulation":{"dt":"small"}})").find("simulation.dt") != std::string::npos);
  CHECK(error_of(R"({"simulation":{"dt":-1}})").find("simulation.dt") != std::string::npos);
  CHECK(error_of(R"({"scenario":"nope"})").find("scenario") != std::string::npos);
  CHECK(error_of(R"({"output":{"emit":"csv,pdf"}})").find("pdf") != std::string::npos);
  CHECK_FALSE(error_of("{not json").empty());
  CHECK(error_of(R"({"simulation":{"t_end":10,"burn_in":20}})").find("t_end") != std::string::npos);
}

TEST_CASE("inconsistent drive strength cites the relation") {
  const auto msg = error_of(R"({"scenario":"squeeze","physics":{"parametric_f":1e-3,"squeeze_r":0.8}})");
  CHECK(msg.find("physics.parametric_f") != std::string::npos);
  CHECK(msg.find("r = f*omega0/gamma_g2") != std::string::npos);

  const auto only_f = parse_config_text(R"({"physics":{"parametric_f":1e-6,"gamma_g2":2.0}})");
  CHECK(only_f.physics.squeeze_r == doctest::Approx(1e-6 * 2.0 * std::numbers::pi * 127e3 / 2.0));

  const auto only_r = parse_config_text(R"({"physics":{"squeeze_r":0.5}})");
  CHECK(drive_consistent(only_r.physics));
}

TEST_CASE("frequency convention") {
  const auto hz = parse_config_text(R"({"physics":{"omega0":1000}})");
  CHECK(hz.physics.omega0 == doctest::Approx(2000.0 * std::numbers::pi));
  const auto ang = parse_config_text(R"({"physics":{"omega0":1000,"omega0_is_angular":true}})");
  CHECK(ang.physics.omega0 == 1000.0);
}

TEST_CASE("canonical JSON round trip") {
  for (const char* text : {R"({"scenario":"squeeze"})", R"({"scenario":"coherent"})", R"({"scenario":"bistable"})",
                           R"({"physics":{"gamma_a":3,"thermal":{"temperature":300}},
                               "simulation":{"model":"full_oscillation","stepper":"heun","initial":{"kind":"thermal"}},
                               "analysis":{"bins":32,"lags":[0,0.1],"bounds":{"q_min":-5,"q_max":5,"p_min":-4,"p_max":4}},
                               "output":{"dir":"x","emit":"report,svg"}})"}) {
    const auto a = parse_config_text(text);
    const auto text_a = to_json_text(a);
    const auto b = parse_config_text(text_a);
    CHECK(a == b);
    CHECK(to_json_text(b) == text_a);
  }
}

TEST_CASE("overrides take precedence over the file") {
  Overrides ov;
  ov.seed = 7;
  ov.trajectories = 12;
  ov.dt = 2e-4;
  ov.t_end = 80.0;
  ov.out = "elsewhere";
  ov.emit = "report";
  const auto c = parse_config_text(
      R"({"scenario":"squeeze","simulation":{"seed":1,"n_trajectories":5,"dt":1e-4},"output":{"dir":"here"}})", ov);
  CHECK(c.simulation.master_seed == 7);
  CHECK(c.simulation.n_trajectories == 12);
  CHECK(c.simulation.dt == 2e-4);
  CHECK(c.simulation.t_end == 80.0);
  CHECK(c.output_dir == "elsewhere");
  CHECK(c.emit == EmitFlags{false, false, false, true});

  Overrides sc;
  sc.scenario = "bistable";
  CHECK(parse_config_text(R"({"scenario":"squeeze"})", sc).physics.scenario == Scenario::bistable);
}

TEST_CASE("emit lists") {
  CHECK(parse_emit_list("all") == EmitFlags{true, true, true, true});
  CHECK(parse_emit_list("csv") == EmitFlags{true, false, false, false});
  CHECK(parse_emit_list(" svg , report ") == EmitFlags{false, false, true, true});
  CHECK(parse_emit_list("csv,,") == parse_emit_list("csv"));
  CHECK_THROWS_AS(parse_emit_list(" , "), ConfigError);
  CHECK(parse_emit_list(to_string(EmitFlags{})) == EmitFlags{});
}

TEST_CASE("config files") {
  CHECK_THROWS_AS(parse_config("/nonexistent/levsim.json"), IoError);
  const auto path = std::filesystem::temp_directory_path() / "levsim_test_config.json";
  {
    std::ofstream f(path);
    f << R"({"scenario":"coherent","simulation":{"n_trajectories":3}})";
  }
  const auto c = parse_config(path.string());
  CHECK(c.simulation.n_trajectories == 3);
  CHECK(c.physics.scenario == Scenario::coherent);
  std::filesystem::remove(path);
}

TEST_CASE("coupling configuration") {
  const auto sp = ScenarioParams::preset(Scenario::squeeze);
  const auto c = parse_config_text(R"({"physics":{"coupling":{"kd0":0.7853981633974483,"dphi":0}}})");
  const auto k = c.coupling.coefficients(sp);
  CHECK(k.s12 == doctest::Approx(k.s21));
  const auto d = parse_config_text("{}");
  const auto u = d.coupling.coefficients(sp);
  CHECK(u.s21 == 0.0);
  CHECK(coupling_rate(u) == doctest::Approx(100.0));
}
