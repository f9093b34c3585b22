#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "levsim/errors.hpp"
#include "levsim/report.hpp"

using namespace levsim;
namespace fs = std::filesystem;

namespace {

RunConfig small_config(const std::string& dir) {
  Overrides ov;
  ov.trajectories = 8;
  ov.t_end = 60.0;
  ov.out = dir;
  return parse_config_text(R"({"scenario":"squeeze","simulation":{"record_stride":2000}})", ov);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string without_wall_clock(std::string text) {
  const auto pos = text.find("\"wall_clock_seconds\"");
  if (pos == std::string::npos) return text;
  const auto end = text.find_first_of(",\n}", pos);
  return text.erase(pos, end - pos);
}

fs::path scratch(const std::string& name) {
  const auto p = fs::temp_directory_path() / ("levsim_report_" + name);
  fs::remove_all(p);
  return p;
}

}  // namespace

TEST_CASE("default lag grid") {
  const auto lags = default_lags(0.01, 10.0);
  REQUIRE(lags.size() == 21);
  CHECK(lags.front() == 0.0);
  CHECK(lags.back() == doctest::Approx(1.0));
  for (double t : lags) CHECK(std::abs(t / 0.01 - std::round(t / 0.01)) < 1e-9);

  const auto short_window = default_lags(0.1, 0.5);
  CHECK(short_window.back() <= 0.5 + 1e-12);
  CHECK(short_window.size() == 6);
}

TEST_CASE("report-only emit writes exactly the summary") {
  const auto dir = scratch("only");
  auto cfg = small_config(dir.string());
  cfg.emit = parse_emit_list("report");
  const auto r = run_scenario(cfg);
  const auto files = emit_outputs(r.report, r.artifacts, cfg);
  REQUIRE(files.size() == 1);
  std::size_t count = 0;
  for (const auto& e : fs::directory_iterator(dir)) {
    CHECK(e.path().filename() == "summary.json");
    ++count;
  }
  CHECK(count == 1);
  const auto text = slurp(dir / "summary.json");
  CHECK(text.find("\"spec_version\": \"1.0\"") != std::string::npos);
  CHECK(text.find("\"parameter_hash\"") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("reruns with the same seed are byte identical") {
  const auto a = scratch("a");
  const auto b = scratch("b");
  auto ca = small_config(a.string());
  auto cb = small_config(b.string());
  ca.emit = cb.emit = parse_emit_list("all");
  const auto ra = run_scenario(ca);
  const auto fa = emit_outputs(ra.report, ra.artifacts, ca);
  const auto rb = run_scenario(cb);
  const auto fb = emit_outputs(rb.report, rb.artifacts, cb);
  REQUIRE(fa.size() == fb.size());
  CHECK(fa.size() >= 9);
  for (const auto& e : fs::directory_iterator(a)) {
    const auto name = e.path().filename();
    const auto left = slurp(a / name);
    const auto right = slurp(b / name);
    if (name != "summary.json") CHECK_MESSAGE(left == right, name.string());
  }
  // The summary echoes the output directory and wall-clock time; align both.
  auto rep_b = rb.report;
  rep_b.config.output_dir = ra.report.config.output_dir;
  rep_b.wall_clock_seconds = ra.report.wall_clock_seconds;
  CHECK(summary_json(rep_b) == summary_json(ra.report));
  CHECK(without_wall_clock(slurp(a / "summary.json")).size() > 100);
  CHECK(ra.report.parameter_hash == rb.report.parameter_hash);
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST_CASE("CSV headers") {
  const auto dir = scratch("csv");
  auto cfg = small_config(dir.string());
  cfg.emit = parse_emit_list("csv,histograms");
  const auto r = run_scenario(cfg);
  emit_outputs(r.report, r.artifacts, cfg);
  auto first_line = [&](const char* f) {
    std::ifstream in(dir / f);
    std::string line;
    std::getline(in, line);
    return line;
  };
  CHECK(first_line("trajectories.csv") == "traj,t,Q1,P1,Q2,P2");
  CHECK(first_line("hist_p1.csv") == "Q,P,density");
  CHECK(first_line("oracle_p2.csv") == "Q,P,density");
  CHECK(first_line("g2_p2.csv") == "tau,g2,se");
  CHECK_FALSE(fs::exists(dir / "summary.json"));
  fs::remove_all(dir);
}

TEST_CASE("noiseless run reports a degenerate distribution") {
  const auto dir = scratch("quiet");
  Overrides ov;
  ov.trajectories = 4;
  ov.t_end = 60.0;
  ov.out = dir.string();
  ov.emit = "report";
  auto cfg = parse_config_text(
      R"({"scenario":"squeeze","physics":{"recoil_rate":0},"simulation":{"record_stride":5000}})", ov);
  const auto r = run_scenario(cfg);
  CHECK(r.report.variances[0].var_q == 0.0);
  CHECK(r.report.variances[1].var_p == 0.0);
  CHECK_FALSE(r.report.fidelity_numeric.has_value());
  bool noted = false;
  for (const auto& n : r.report.notes) noted = noted || n.find("degenerate") != std::string::npos;
  CHECK(noted);
  CHECK_NOTHROW(emit_outputs(r.report, r.artifacts, cfg));
  fs::remove_all(dir);
}

TEST_CASE("unwritable output directory raises an I/O error") {
  const auto blocker = scratch("blocker");
  { std::ofstream(blocker) << "x"; }
  auto cfg = small_config((blocker / "sub").string());
  cfg.simulation.n_trajectories = 2;
  cfg.emit = parse_emit_list("report");
  const auto r = run_scenario(cfg);
  CHECK_THROWS_AS(emit_outputs(r.report, r.artifacts, cfg), IoError);
  fs::remove(blocker);
}
