#include "levsim/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "levsim/errors.hpp"

namespace levsim {

using nlohmann::json;

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json num(double v) { return std::isfinite(v) ? json(v) : json(); }

// Jackknife over contiguous groups of trajectories for statistics that are
// functions of the two particle histograms.
class HistogramJackknife {
 public:
  HistogramJackknife(const Ensemble& e, const TimeWindow& window, const Bounds& bounds, int bins)
      : bins_(bins), bounds_(bounds) {
    const std::size_t ntr = e.trajectories.size();
    groups_ = std::min<std::size_t>(20, ntr);
    for (int particle = 1; particle <= 2; ++particle) {
      auto& counts = counts_[particle - 1];
      counts.assign(groups_, std::vector<double>(static_cast<std::size_t>(bins) * bins, 0.0));
      const auto pts = phase_points(e, particle, window);
      const std::size_t per = pts.size() / ntr;
      for (std::size_t g = 0; g < groups_; ++g) {
        const std::size_t lo = g * ntr / groups_;
        const std::size_t hi = (g + 1) * ntr / groups_;
        std::span<const std::array<double, 2>> slice(pts.data() + lo * per, (hi - lo) * per);
        try {
          const auto h = histogram2d(slice, bounds, bins, bins);
          for (std::size_t k = 0; k < h.mass.size(); ++k) {
            counts[g][k] = std::round(h.mass[k] * static_cast<double>(h.in_bounds));
          }
        } catch (const AnalysisError&) {
          // group entirely out of bounds: zero counts
        }
      }
    }
  }

  std::size_t groups() const { return groups_; }

  // Histogram of one particle with group `skip` removed.
  PhaseSpaceHistogram without(int particle, std::size_t skip) const {
    const auto& counts = counts_[particle - 1];
    PhaseSpaceHistogram h;
    h.bounds = bounds_;
    h.nq = bins_;
    h.np = bins_;
    h.mass.assign(counts.front().size(), 0.0);
    double total = 0.0;
    for (std::size_t g = 0; g < groups_; ++g) {
      if (g == skip) continue;
      for (std::size_t k = 0; k < h.mass.size(); ++k) h.mass[k] += counts[g][k];
    }
    for (double c : h.mass) total += c;
    if (total > 0.0) {
      for (auto& m : h.mass) m /= total;
    }
    h.in_bounds = static_cast<std::size_t>(total);
    return h;
  }

  template <class Stat>
  double standard_error(Stat&& stat) const {
    if (groups_ < 2) return std::numeric_limits<double>::quiet_NaN();
    std::vector<double> v(groups_);
    for (std::size_t g = 0; g < groups_; ++g) v[g] = stat(g);
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(groups_);
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    return std::sqrt(ss * static_cast<double>(groups_ - 1) / static_cast<double>(groups_));
  }

 private:
  int bins_;
  Bounds bounds_;
  std::size_t groups_ = 0;
  std::array<std::vector<std::vector<double>>, 2> counts_;
};

Bounds fallback_bounds(const std::array<VarianceReport, 2>& v) {
  double hq = 0.0;
  double hp = 0.0;
  for (const auto& r : v) {
    hq = std::max(hq, std::abs(r.mean_q) + 6.0 * std::sqrt(r.var_q));
    hp = std::max(hp, std::abs(r.mean_p) + 6.0 * std::sqrt(r.var_p));
  }
  if (!(hq > 0.0)) hq = 1.0;
  if (!(hp > 0.0)) hp = 1.0;
  return {-hq, hq, -hp, hp};
}

bool linear_scenario(const ScenarioParams& sp) { return sp.gamma_a == 0.0 && sp.gamma_f == 0.0; }

}  // namespace

std::vector<double> default_lags(double record_interval, double window_width) {
  std::vector<double> lags{0.0};
  if (!(record_interval > 0.0)) return lags;
  const double span = std::min(1.0, window_width);
  const auto available = static_cast<std::size_t>(std::floor(span / record_interval + 1e-9));
  if (available == 0) return lags;
  const std::size_t step = std::max<std::size_t>(1, (available + 19) / 20);
  for (std::size_t m = step; m <= available; m += step) lags.push_back(static_cast<double>(m) * record_interval);
  return lags;
}

RunResult run_scenario(const RunConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  RunResult result;
  SummaryReport& rep = result.report;
  RunArtifacts& art = result.artifacts;
  const ScenarioParams& sp = cfg.physics;
  const SimConfig& sim = cfg.simulation;
  rep.config = cfg;
  rep.warnings = stability_warnings(sim, sp);

  const bool full = sim.model == Model::full_oscillation;
  const CouplingCoefficients coeffs = cfg.coupling.coefficients(sp);
  art.ensemble = full ? run_full_ensemble(sim, sp, coeffs) : run_ensemble(sim, sp);
  const Ensemble& ens = art.ensemble;
  rep.parameter_hash = ens.parameter_hash;
  rep.window = cfg.analysis.window.value_or(full_window(ens));
  rep.record_count = ens.times().size();
  if (full) {
    rep.notes.push_back("lab-frame model: quadratures are demodulated at omega0; oracles refer to the slow flow");
  }

  for (int j = 0; j < 2; ++j) {
    rep.variances[j] = quadrature_variances(ens, j + 1, rep.window);
    rep.phonons[j] = phonon_population(ens, j + 1, rep.window);
  }

  // Oracles.
  std::array<std::optional<StationaryDensity>, 2> density;
  try {
    density[1] = stationary_density_p2(sp);
  } catch (const std::exception& e) {
    rep.notes.push_back(std::string("particle-2 oracle unavailable: ") + e.what());
  }
  try {
    density[0] = stationary_density_p1(sp);
  } catch (const std::exception& e) {
    rep.notes.push_back(std::string("particle-1 oracle unavailable: ") + e.what());
  }
  for (int j = 0; j < 2; ++j) {
    if (density[j]) rep.oracle_validity[j] = density[j]->validity();
  }
  try {
    rep.analytic_variances = analytic_variances(sp);
  } catch (const OracleError& e) {
    rep.notes.push_back(std::string("closed-form variances not applicable: ") + e.what());
  }
  if (sp.gamma_f > 0.0 && sp.gamma_a > 0.0) {
    try {
      rep.analytic_phonons = analytic_phonon(sp);
    } catch (const OracleError& e) {
      rep.notes.push_back(std::string("phonon saturation formula not applicable: ") + e.what());
    }
  }
  if (sp.gamma_f == 0.0) {
    try {
      rep.exact_covariance = linear_stationary_covariance(sp);
    } catch (const OracleError& e) {
      rep.notes.push_back(std::string("no linear stationary covariance: ") + e.what());
    }
  }

  // Histograms on a shared grid.
  const int bins = cfg.analysis.bins;
  if (cfg.analysis.bounds) {
    rep.bounds = *cfg.analysis.bounds;
  } else if (density[1]) {
    rep.bounds = default_bounds(*density[1]);
  } else {
    rep.bounds = fallback_bounds(rep.variances);
    rep.notes.push_back("histogram bounds taken from the sample variances");
  }
  for (int j = 0; j < 2; ++j) {
    art.histograms[j] = histogram2d(ens, j + 1, rep.bounds, bins, bins, rep.window);
    rep.out_of_bounds_fraction[j] = art.histograms[j].out_of_bounds_fraction();
    if (density[j]) art.oracle_masses[j] = cell_masses(*density[j], rep.bounds, bins, bins);
  }

  const bool degenerate = std::any_of(rep.variances.begin(), rep.variances.end(),
                                      [](const VarianceReport& v) { return v.var_q == 0.0 || v.var_p == 0.0; });
  const HistogramJackknife jack(ens, rep.window, rep.bounds, bins);
  if (degenerate) {
    rep.notes.push_back("degenerate distribution (zero variance): fidelity and oracle distances not evaluated");
  } else {
    Estimate f;
    f.value = fidelity_numeric(art.histograms[0], art.histograms[1]);
    f.se = jack.standard_error(
        [&](std::size_t g) { return fidelity_numeric(jack.without(1, g), jack.without(2, g)); });
    f.n_samples = art.histograms[1].in_bounds;
    rep.fidelity_numeric = f;
    for (int j = 0; j < 2; ++j) {
      if (!art.oracle_masses[j]) continue;
      Estimate d;
      d.value = distribution_distance(art.histograms[j], *art.oracle_masses[j]);
      d.se = jack.standard_error(
          [&](std::size_t g) { return distribution_distance(jack.without(j + 1, g), *art.oracle_masses[j]); });
      d.n_samples = art.histograms[j].in_bounds;
      rep.oracle_distance[j] = d;
    }
  }
  if (linear_scenario(sp)) {
    try {
      rep.fidelity_analytic = analytic_fidelity(sp);
    } catch (const OracleError& e) {
      rep.notes.push_back(std::string("analytic fidelity not evaluated: ") + e.what());
    }
  }

  // Second-order coherence.
  const auto& times = ens.times();
  const double interval = times.size() > 1 ? times[1] - times[0] : 0.0;
  const std::vector<double> lags =
      cfg.analysis.lags.empty() ? default_lags(interval, rep.window.width()) : cfg.analysis.lags;
  for (int j = 0; j < 2; ++j) {
    CurveSummary c;
    c.label = "steady_p" + std::to_string(j + 1);
    c.particle = j + 1;
    c.curve = second_order_coherence(ens, j + 1, lags, rep.window);
    c.fit = fit_coherence_decay(c.curve);
    rep.coherence.push_back(std::move(c));
  }
  if (cfg.analysis.g2_intermediate_time) {
    const double width = 4.0 / sp.gamma_g2;
    const TimeWindow w = window_centered(*cfg.analysis.g2_intermediate_time, width);
    try {
      const std::vector<double> l = default_lags(interval, w.width());
      CurveSummary c;
      c.label = "intermediate_p2";
      c.curve = second_order_coherence(ens, 2, l, w);
      c.fit = fit_coherence_decay(c.curve);
      rep.coherence.push_back(std::move(c));
    } catch (const AnalysisError& e) {
      rep.notes.push_back(std::string("intermediate-time g2 not evaluated: ") + e.what());
    }
  }
  if (cfg.analysis.g2_reference) {
    // Same particle before feedback or drive: r = gamma_a = gamma_f = 0.
    ScenarioParams ref = sp;
    ref.scenario = Scenario::custom;
    ref.squeeze_r = 0.0;
    ref.parametric_f = 0.0;
    ref.gamma_a = 0.0;
    ref.gamma_f = 0.0;
    SimConfig rs = sim;
    rs.model = Model::slow_flow;
    rs.n_trajectories = std::min<std::size_t>(sim.n_trajectories, 500);
    rs.burn_in = default_burn_in(ref);
    rs.t_end = rs.burn_in + 20.0;
    rs.record_stride = std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(0.01 / sim.dt)));
    const Ensemble re = run_ensemble(rs, ref);
    const TimeWindow w = full_window(re);
    const double ri = re.times().size() > 1 ? re.times()[1] - re.times()[0] : 0.0;
    CurveSummary c;
    c.label = "thermal_reference_p2";
    c.curve = second_order_coherence(re, 2, default_lags(ri, w.width()), w);
    c.fit = fit_coherence_decay(c.curve);
    rep.coherence.push_back(std::move(c));
  }

  // Unidirectionality witness on a small ensemble of the same run.
  if (!full && cfg.analysis.witness_trajectories > 0) {
    // The perturbation decays at gamma_g1, so watch the transient rather than
    // the post-burn-in record.
    SimConfig ws = sim;
    ws.n_trajectories = cfg.analysis.witness_trajectories;
    ws.burn_in = 0.0;
    ws.t_end = std::min(sim.t_end, 5.0 / sp.gamma_g1);
    ws.record_stride = std::max<std::size_t>(1, std::min(sim.record_stride, ws.n_steps() / 1000));
    rep.witness = unidirectionality_witness(sp, ws, cfg.analysis.witness_delta_q1);
  }

  if (density[1]) rep.predicted_modes = predicted_mode_count(*density[1]);
  rep.modes = mode_detect(art.histograms[1], cfg.analysis.mode_smoothing);

  rep.wall_clock_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

std::string summary_json(const SummaryReport& rep) {
  json j;
  j["spec_version"] = rep.spec_version;
  char hash[24];
  std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(rep.parameter_hash));
  j["parameter_hash"] = hash;
  j["seed"] = rep.config.simulation.master_seed;
  j["config"] = json::parse(to_json_text(rep.config));
  j["window"] = {{"begin", rep.window.begin}, {"end", rep.window.end}};
  j["record_count"] = rep.record_count;

  json vars = json::array();
  for (const auto& v : rep.variances) {
    vars.push_back({{"particle", v.particle},
                    {"mean_q", num(v.mean_q)},
                    {"mean_p", num(v.mean_p)},
                    {"var_q", num(v.var_q)},
                    {"var_p", num(v.var_p)},
                    {"cov_qp", num(v.cov_qp)},
                    {"se_var_q", num(v.se_var_q)},
                    {"se_var_p", num(v.se_var_p)},
                    {"se_cov_qp", num(v.se_cov_qp)},
                    {"n_samples", v.n_samples},
                    {"n_trajectories", v.n_trajectories}});
  }
  j["variances"] = vars;
  j["phonons"] = json::array();
  for (int k = 0; k < 2; ++k) {
    j["phonons"].push_back({{"particle", k + 1}, {"value", num(rep.phonons[k].value)}, {"se", num(rep.phonons[k].se)}});
  }

  json oracle;
  if (rep.analytic_variances) {
    const auto& a = *rep.analytic_variances;
    oracle["variances"] = {{"var_q1", a.var_q1}, {"var_p1", a.var_p1}, {"var_q2", a.var_q2}, {"var_p2", a.var_p2}};
  }
  if (rep.analytic_phonons) oracle["phonons"] = {{"n1", rep.analytic_phonons->n1}, {"n2", rep.analytic_phonons->n2}};
  if (rep.exact_covariance) {
    const auto& c = *rep.exact_covariance;
    oracle["exact_linear"] = {{"var_q1", c[0]}, {"var_p1", c[5]}, {"var_q2", c[10]}, {"var_p2", c[15]},
                              {"cov_q1p1", c[1]}, {"cov_q1q2", c[2]}};
  }
  if (rep.fidelity_analytic) oracle["fidelity"] = *rep.fidelity_analytic;
  oracle["validity"] = {{"p1", rep.oracle_validity[0]}, {"p2", rep.oracle_validity[1]}};
  j["oracle"] = oracle.is_null() ? json::object() : oracle;

  j["fidelity_numeric"] = rep.fidelity_numeric
                              ? json{{"value", num(rep.fidelity_numeric->value)}, {"se", num(rep.fidelity_numeric->se)}}
                              : json();
  j["histogram"] = {{"bounds",
                     {{"q_min", rep.bounds.q_min},
                      {"q_max", rep.bounds.q_max},
                      {"p_min", rep.bounds.p_min},
                      {"p_max", rep.bounds.p_max}}},
                    {"bins", rep.config.analysis.bins},
                    {"out_of_bounds_fraction", {rep.out_of_bounds_fraction[0], rep.out_of_bounds_fraction[1]}}};
  json dist = json::array();
  for (int k = 0; k < 2; ++k) {
    const auto& d = rep.oracle_distance[k];
    dist.push_back({{"particle", k + 1}, {"value", d ? num(d->value) : json()}, {"se", d ? num(d->se) : json()}});
  }
  j["oracle_distance"] = dist;

  json g2 = json::array();
  for (const auto& c : rep.coherence) {
    json pts = json::array();
    for (std::size_t k = 0; k < c.curve.tau.size(); ++k) {
      pts.push_back({{"tau", c.curve.tau[k]}, {"g2", num(c.curve.g2[k])}, {"se", num(c.curve.se[k])}});
    }
    g2.push_back({{"label", c.label},
                  {"particle", c.particle},
                  {"window", {c.curve.window.begin, c.curve.window.end}},
                  {"decay_rate", num(c.fit.rate)},
                  {"decay_amplitude", num(c.fit.amplitude)},
                  {"fit_points", c.fit.points},
                  {"samples", pts}});
  }
  j["g2"] = g2;

  if (rep.witness) {
    j["unidirectionality_witness"] = {{"model", rep.witness->model == Model::slow_flow ? "slow_flow" : "full_oscillation"},
                                      {"max_dev_particle1", rep.witness->max_dev_particle1},
                                      {"max_dev_particle2", rep.witness->max_dev_particle2},
                                      {"particle2_identical", rep.witness->particle2_identical},
                                      {"particle1_differs", rep.witness->particle1_differs}};
  } else {
    j["unidirectionality_witness"] = nullptr;
  }
  json modes = json::array();
  for (const auto& m : rep.modes) modes.push_back({{"q", m.q}, {"p", m.p}, {"height", m.height}, {"mass", m.mass}});
  j["modes"] = {{"predicted", rep.predicted_modes ? json(*rep.predicted_modes) : json()},
                {"detected", rep.modes.size()},
                {"maxima", modes}};
  j["warnings"] = rep.warnings;
  j["notes"] = rep.notes;
  j["wall_clock_seconds"] = rep.wall_clock_seconds;
  return j.dump(2) + "\n";
}

namespace {

class Writer {
 public:
  explicit Writer(const std::filesystem::path& path) : path_(path), out_(path, std::ios::binary) {
    if (!out_) throw IoError("cannot open " + path.string() + " for writing");
  }
  std::ofstream& stream() { return out_; }
  void close() {
    out_.close();
    if (!out_) throw IoError("failed writing " + path_.string());
  }

 private:
  std::filesystem::path path_;
  std::ofstream out_;
};

void write_grid(const std::filesystem::path& path, const PhaseSpaceHistogram& h, const std::vector<double>& masses) {
  Writer w(path);
  auto& out = w.stream();
  out << "Q,P,density\n";
  const double area = h.cell_area();
  for (int i = 0; i < h.nq; ++i) {
    for (int jj = 0; jj < h.np; ++jj) {
      out << fmt(h.q_center(i)) << ',' << fmt(h.p_center(jj)) << ','
          << fmt(masses[static_cast<std::size_t>(i) * h.np + jj] / area) << '\n';
    }
  }
  w.close();
}

void write_svg(const std::filesystem::path& path, const Ensemble& e, const Bounds& b) {
  Writer w(path);
  auto& out = w.stream();
  const int panel = 300;
  const int pad = 30;
  const int size = 2 * panel + 3 * pad;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  const std::size_t limit = std::min<std::size_t>(e.trajectories.size(), 2000);
  const char* titles[4] = {"particle 1, initial", "particle 2, initial", "particle 1, final", "particle 2, final"};
  for (int k = 0; k < 4; ++k) {
    const int x0 = pad + (k % 2) * (panel + pad);
    const int y0 = pad + (k / 2) * (panel + pad);
    out << "<rect x=\"" << x0 << "\" y=\"" << y0 << "\" width=\"" << panel << "\" height=\"" << panel
        << "\" fill=\"none\" stroke=\"black\"/>\n";
    out << "<text x=\"" << x0 << "\" y=\"" << y0 - 8 << "\" font-size=\"12\">" << titles[k] << "</text>\n";
    for (std::size_t i = 0; i < limit; ++i) {
      const auto& tr = e.trajectories[i];
      const QuadratureState& s = k < 2 ? tr.initial : tr.samples.back();
      const double q = (k % 2 == 0) ? s.q1 : s.q2;
      const double p = (k % 2 == 0) ? s.p1 : s.p2;
      if (q < b.q_min || q > b.q_max || p < b.p_min || p > b.p_max) continue;
      const double px = x0 + (q - b.q_min) / (b.q_max - b.q_min) * panel;
      const double py = y0 + panel - (p - b.p_min) / (b.p_max - b.p_min) * panel;
      char buf[96];
      std::snprintf(buf, sizeof buf, "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"1\" fill=\"steelblue\"/>\n", px, py);
      out << buf;
    }
  }
  out << "</svg>\n";
  w.close();
}

}  // namespace

std::vector<std::string> emit_outputs(const SummaryReport& report, const RunArtifacts& art, const RunConfig& cfg) {
  namespace fs = std::filesystem;
  const fs::path dir(cfg.output_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw IoError("cannot create output directory " + dir.string());
  std::vector<std::string> written;
  const Ensemble& e = art.ensemble;

  if (cfg.emit.csv) {
    {
      Writer w(dir / "trajectories.csv");
      auto& out = w.stream();
      out << "traj,t,Q1,P1,Q2,P2\n";
      for (std::size_t i = 0; i < e.trajectories.size(); ++i) {
        const auto& tr = e.trajectories[i];
        for (std::size_t k = 0; k < tr.samples.size(); ++k) {
          const auto& s = tr.samples[k];
          out << i << ',' << fmt(tr.times[k]) << ',' << fmt(s.q1) << ',' << fmt(s.p1) << ',' << fmt(s.q2) << ','
              << fmt(s.p2) << '\n';
        }
      }
      w.close();
      written.push_back((dir / "trajectories.csv").string());
    }
    {
      Writer w(dir / "moments.csv");
      auto& out = w.stream();
      out << "t,mean_Q1,mean_P1,mean_Q2,mean_P2,var_Q1,var_P1,var_Q2,var_P2,N1,N2\n";
      const std::size_t m = e.trajectories.size();
      const auto& times = e.times();
      for (std::size_t k = 0; k < times.size(); ++k) {
        std::array<double, 4> mean{};
        std::array<double, 4> sq{};
        for (const auto& tr : e.trajectories) {
          const auto a = tr.samples[k].as_array();
          for (int c = 0; c < 4; ++c) mean[c] += a[c];
        }
        for (auto& v : mean) v /= static_cast<double>(m);
        for (const auto& tr : e.trajectories) {
          const auto a = tr.samples[k].as_array();
          for (int c = 0; c < 4; ++c) sq[c] += (a[c] - mean[c]) * (a[c] - mean[c]);
        }
        const double dof = m > 1 ? static_cast<double>(m - 1) : 1.0;
        out << fmt(times[k]);
        for (double v : mean) out << ',' << fmt(v);
        for (double v : sq) out << ',' << fmt(v / dof);
        // N = <Q^2 + P^2> = var + mean^2 with the 1/m normalisation.
        const double n1 = (sq[0] + sq[1]) / static_cast<double>(m) + mean[0] * mean[0] + mean[1] * mean[1];
        const double n2 = (sq[2] + sq[3]) / static_cast<double>(m) + mean[2] * mean[2] + mean[3] * mean[3];
        out << ',' << fmt(n1) << ',' << fmt(n2) << '\n';
      }
      w.close();
      written.push_back((dir / "moments.csv").string());
    }
    for (const auto& c : report.coherence) {
      if (c.label != "steady_p1" && c.label != "steady_p2") continue;
      const fs::path path = dir / ("g2_p" + std::to_string(c.particle) + ".csv");
      Writer w(path);
      auto& out = w.stream();
      out << "tau,g2,se\n";
      for (std::size_t k = 0; k < c.curve.tau.size(); ++k) {
        out << fmt(c.curve.tau[k]) << ',' << fmt(c.curve.g2[k]) << ',' << fmt(c.curve.se[k]) << '\n';
      }
      w.close();
      written.push_back(path.string());
    }
  }

  if (cfg.emit.histograms) {
    for (int j = 0; j < 2; ++j) {
      const auto& h = art.histograms[j];
      const fs::path hp = dir / ("hist_p" + std::to_string(j + 1) + ".csv");
      write_grid(hp, h, h.mass);
      written.push_back(hp.string());
      if (art.oracle_masses[j]) {
        const fs::path op = dir / ("oracle_p" + std::to_string(j + 1) + ".csv");
        write_grid(op, h, *art.oracle_masses[j]);
        written.push_back(op.string());
      }
    }
  }

  if (cfg.emit.svg && !e.trajectories.empty() && !e.trajectories.front().samples.empty()) {
    write_svg(dir / "phase_space.svg", e, report.bounds);
    written.push_back((dir / "phase_space.svg").string());
  }

  if (cfg.emit.report) {
    Writer w(dir / "summary.json");
    w.stream() << summary_json(report);
    w.close();
    written.push_back((dir / "summary.json").string());
  }
  return written;
}

}  // namespace levsim
