#include "levsim/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "levsim/errors.hpp"

namespace levsim {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void check_particle(int particle) {
  if (particle != 1 && particle != 2) throw AnalysisError("particle must be 1 or 2");
}

std::array<double, 2> qp(const QuadratureState& x, int particle) {
  return particle == 1 ? std::array<double, 2>{x.q1, x.p1} : std::array<double, 2>{x.q2, x.p2};
}

// Index range [first, last) of the recorded times inside the window.
std::pair<std::size_t, std::size_t> window_indices(const std::vector<double>& times, const TimeWindow& w) {
  std::size_t first = times.size();
  std::size_t last = 0;
  for (std::size_t k = 0; k < times.size(); ++k) {
    if (w.contains(times[k])) {
      first = std::min(first, k);
      last = k + 1;
    }
  }
  if (first >= last) {
    std::ostringstream os;
    os << "no recorded samples in window [" << w.begin << ", " << w.end << "]";
    throw AnalysisError(os.str());
  }
  return {first, last};
}

double standard_error(const std::vector<double>& batch) {
  const std::size_t m = batch.size();
  if (m < 2) return kNaN;
  const double mean = std::accumulate(batch.begin(), batch.end(), 0.0) / static_cast<double>(m);
  double ss = 0.0;
  for (double b : batch) ss += (b - mean) * (b - mean);
  return std::sqrt(ss / static_cast<double>(m - 1) / static_cast<double>(m));
}

}  // namespace

bool TimeWindow::contains(double t) const {
  const double eps = 1e-9 * std::max(1.0, std::abs(t));
  return t >= begin - eps && t <= end + eps;
}

TimeWindow full_window(const Ensemble& e) {
  const auto& t = e.times();
  if (t.empty()) throw AnalysisError("ensemble has no recorded samples");
  return {t.front(), t.back()};
}

TimeWindow window_centered(double center, double width) {
  if (!(width >= 0.0)) throw AnalysisError("window width must be >= 0");
  return {center - 0.5 * width, center + 0.5 * width};
}

VarianceReport quadrature_variances(const Ensemble& e, int particle, const TimeWindow& window) {
  check_particle(particle);
  if (e.trajectories.empty()) throw AnalysisError("empty ensemble");
  const auto [first, last] = window_indices(e.times(), window);
  const std::size_t per = last - first;
  const std::size_t m = e.trajectories.size();
  const double n = static_cast<double>(per * m);

  double sq = 0.0;
  double sp = 0.0;
  for (const auto& tr : e.trajectories) {
    for (std::size_t k = first; k < last; ++k) {
      const auto x = qp(tr.samples[k], particle);
      sq += x[0];
      sp += x[1];
    }
  }
  VarianceReport r;
  r.particle = particle;
  r.mean_q = sq / n;
  r.mean_p = sp / n;
  r.n_samples = per * m;
  r.n_trajectories = m;

  std::vector<double> bq, bp, bc;
  bq.reserve(m);
  bp.reserve(m);
  bc.reserve(m);
  double vq = 0.0, vp = 0.0, c = 0.0;
  for (const auto& tr : e.trajectories) {
    double tq = 0.0, tp = 0.0, tc = 0.0;
    for (std::size_t k = first; k < last; ++k) {
      const auto x = qp(tr.samples[k], particle);
      const double dq = x[0] - r.mean_q;
      const double dp = x[1] - r.mean_p;
      tq += dq * dq;
      tp += dp * dp;
      tc += dq * dp;
    }
    vq += tq;
    vp += tp;
    c += tc;
    bq.push_back(tq / static_cast<double>(per));
    bp.push_back(tp / static_cast<double>(per));
    bc.push_back(tc / static_cast<double>(per));
  }
  const double dof = n > 1.0 ? n - 1.0 : 1.0;
  r.var_q = vq / dof;
  r.var_p = vp / dof;
  r.cov_qp = c / dof;
  r.se_var_q = standard_error(bq);
  r.se_var_p = standard_error(bp);
  r.se_cov_qp = standard_error(bc);
  return r;
}

Estimate phonon_population(const Ensemble& e, int particle, const TimeWindow& window) {
  check_particle(particle);
  if (e.trajectories.empty()) throw AnalysisError("empty ensemble");
  const auto [first, last] = window_indices(e.times(), window);
  const std::size_t per = last - first;
  std::vector<double> batch;
  batch.reserve(e.trajectories.size());
  double total = 0.0;
  for (const auto& tr : e.trajectories) {
    double s = 0.0;
    for (std::size_t k = first; k < last; ++k) {
      const auto x = qp(tr.samples[k], particle);
      s += x[0] * x[0] + x[1] * x[1];
    }
    total += s;
    batch.push_back(s / static_cast<double>(per));
  }
  Estimate est;
  est.n_samples = per * e.trajectories.size();
  est.value = total / static_cast<double>(est.n_samples);
  est.se = standard_error(batch);
  return est;
}

CoherenceCurve second_order_coherence(const Ensemble& e, int particle, std::span<const double> lags,
                                      const TimeWindow& window) {
  check_particle(particle);
  if (e.trajectories.empty()) throw AnalysisError("empty ensemble");
  if (lags.empty()) throw AnalysisError("lag grid is empty");
  const auto& times = e.times();
  const auto [first, last] = window_indices(times, window);
  const double max_lag = *std::max_element(lags.begin(), lags.end());
  if (window.width() < max_lag - 1e-9 * std::max(1.0, max_lag)) {
    std::ostringstream os;
    os << "window width " << window.width() << " is shorter than the largest lag " << max_lag;
    throw AnalysisError(os.str());
  }
  const double interval = times.size() > 1 ? times[1] - times[0] : 0.0;

  std::vector<std::size_t> steps;
  for (double tau : lags) {
    if (tau < 0.0) throw AnalysisError("lags must be >= 0");
    if (tau == 0.0) {
      steps.push_back(0);
      continue;
    }
    if (interval <= 0.0) throw AnalysisError("a single recorded time cannot resolve non-zero lags");
    const double ratio = tau / interval;
    const double m = std::round(ratio);
    if (std::abs(ratio - m) > 1e-6 * std::max(1.0, m)) {
      std::ostringstream os;
      os << "lag " << tau << " is not a multiple of the record interval " << interval;
      throw AnalysisError(os.str());
    }
    steps.push_back(static_cast<std::size_t>(m));
  }
  const std::size_t per = last - first;
  for (std::size_t m : steps) {
    if (m >= per) throw AnalysisError("lag exceeds the samples available in the window");
  }

  const std::size_t ntr = e.trajectories.size();
  // Per-trajectory intensity series and sums; everything below is additive
  // so the jackknife only needs the per-trajectory pieces.
  std::vector<std::vector<double>> n(ntr, std::vector<double>(per));
  std::vector<double> sum_n(ntr, 0.0);
  for (std::size_t i = 0; i < ntr; ++i) {
    for (std::size_t k = 0; k < per; ++k) {
      const auto x = qp(e.trajectories[i].samples[first + k], particle);
      n[i][k] = x[0] * x[0] + x[1] * x[1];
      sum_n[i] += n[i][k];
    }
  }
  const double total_n = std::accumulate(sum_n.begin(), sum_n.end(), 0.0);

  CoherenceCurve curve;
  curve.window = window;
  curve.n_trajectories = ntr;
  for (std::size_t l = 0; l < steps.size(); ++l) {
    const std::size_t m = steps[l];
    const std::size_t pairs = per - m;
    std::vector<double> num(ntr, 0.0);
    for (std::size_t i = 0; i < ntr; ++i) {
      double s = 0.0;
      for (std::size_t k = 0; k + m < per; ++k) s += n[i][k] * n[i][k + m];
      num[i] = s;
    }
    const double total_num = std::accumulate(num.begin(), num.end(), 0.0);
    auto ratio = [&](double snum, double sn, double count) {
      const double mean_n = sn / (count * static_cast<double>(per));
      const double mean_nn = snum / (count * static_cast<double>(pairs));
      return mean_n > 0.0 ? mean_nn / (mean_n * mean_n) : kNaN;
    };
    const double g2 = ratio(total_num, total_n, static_cast<double>(ntr));
    double se = kNaN;
    if (ntr >= 2) {
      std::vector<double> jack(ntr);
      for (std::size_t i = 0; i < ntr; ++i) {
        jack[i] = ratio(total_num - num[i], total_n - sum_n[i], static_cast<double>(ntr - 1));
      }
      const double mean = std::accumulate(jack.begin(), jack.end(), 0.0) / static_cast<double>(ntr);
      double ss = 0.0;
      for (double v : jack) ss += (v - mean) * (v - mean);
      se = std::sqrt(ss * static_cast<double>(ntr - 1) / static_cast<double>(ntr));
    }
    curve.tau.push_back(lags[l]);
    curve.g2.push_back(g2);
    curve.se.push_back(se);
  }
  return curve;
}

DecayFit fit_coherence_decay(const CoherenceCurve& curve, double floor) {
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  std::size_t count = 0;
  for (std::size_t k = 0; k < curve.tau.size(); ++k) {
    const double excess = curve.g2[k] - 1.0;
    const double se = std::isfinite(curve.se[k]) ? curve.se[k] : 0.0;
    if (!(excess > floor && excess > 3.0 * se)) continue;
    const double x = curve.tau[k];
    const double y = std::log(excess);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++count;
  }
  DecayFit fit;
  fit.points = count;
  const double c = static_cast<double>(count);
  const double den = c * sxx - sx * sx;
  if (count < 2 || den <= 0.0) {
    fit.amplitude = kNaN;
    fit.rate = kNaN;
    return fit;
  }
  const double slope = (c * sxy - sx * sy) / den;
  fit.rate = -slope;
  fit.amplitude = std::exp((sy - slope * sx) / c);
  return fit;
}

double PhaseSpaceHistogram::cell_area() const {
  return (bounds.q_max - bounds.q_min) / nq * (bounds.p_max - bounds.p_min) / np;
}

double PhaseSpaceHistogram::q_center(int i) const {
  return bounds.q_min + (i + 0.5) * (bounds.q_max - bounds.q_min) / nq;
}

double PhaseSpaceHistogram::p_center(int j) const {
  return bounds.p_min + (j + 0.5) * (bounds.p_max - bounds.p_min) / np;
}

double PhaseSpaceHistogram::out_of_bounds_fraction() const {
  const std::size_t total = in_bounds + out_of_bounds;
  return total == 0 ? 0.0 : static_cast<double>(out_of_bounds) / static_cast<double>(total);
}

std::vector<std::array<double, 2>> phase_points(const Ensemble& e, int particle, const TimeWindow& window) {
  check_particle(particle);
  if (e.trajectories.empty()) throw AnalysisError("empty ensemble");
  const auto [first, last] = window_indices(e.times(), window);
  std::vector<std::array<double, 2>> pts;
  pts.reserve((last - first) * e.trajectories.size());
  for (const auto& tr : e.trajectories) {
    for (std::size_t k = first; k < last; ++k) pts.push_back(qp(tr.samples[k], particle));
  }
  return pts;
}

PhaseSpaceHistogram histogram2d(std::span<const std::array<double, 2>> points, const Bounds& bounds, int nq,
                                int np) {
  if (nq < 2 || np < 2) throw AnalysisError("histogram needs at least 2 bins per axis");
  if (!(bounds.q_max > bounds.q_min && bounds.p_max > bounds.p_min)) {
    throw AnalysisError("histogram bounds must have positive extent");
  }
  PhaseSpaceHistogram h;
  h.bounds = bounds;
  h.nq = nq;
  h.np = np;
  std::vector<std::size_t> counts(static_cast<std::size_t>(nq) * np, 0);
  const double hq = (bounds.q_max - bounds.q_min) / nq;
  const double hp = (bounds.p_max - bounds.p_min) / np;
  for (const auto& x : points) {
    if (!(x[0] >= bounds.q_min && x[0] <= bounds.q_max && x[1] >= bounds.p_min && x[1] <= bounds.p_max)) {
      ++h.out_of_bounds;
      continue;
    }
    const int i = std::min(nq - 1, static_cast<int>((x[0] - bounds.q_min) / hq));
    const int j = std::min(np - 1, static_cast<int>((x[1] - bounds.p_min) / hp));
    ++counts[static_cast<std::size_t>(i) * np + j];
    ++h.in_bounds;
  }
  if (h.in_bounds == 0) throw AnalysisError("no samples fall inside the histogram bounds");
  h.mass.resize(counts.size());
  for (std::size_t k = 0; k < counts.size(); ++k) {
    h.mass[k] = static_cast<double>(counts[k]) / static_cast<double>(h.in_bounds);
  }
  return h;
}

PhaseSpaceHistogram histogram2d(const Ensemble& e, int particle, const Bounds& bounds, int nq, int np,
                                const TimeWindow& window) {
  const auto pts = phase_points(e, particle, window);
  return histogram2d(pts, bounds, nq, np);
}

double fidelity_numeric(const PhaseSpaceHistogram& target, const PhaseSpaceHistogram& source) {
  if (!(target.bounds == source.bounds) || target.nq != source.nq || target.np != source.np) {
    throw AnalysisError("fidelity needs histograms on identical grids");
  }
  double overlap = 0.0;
  double norm = 0.0;
  for (std::size_t k = 0; k < source.mass.size(); ++k) {
    overlap += target.mass[k] * source.mass[k];
    norm += source.mass[k] * source.mass[k];
  }
  return overlap / norm;
}

double distribution_distance(const PhaseSpaceHistogram& h, std::span<const double> oracle_masses) {
  if (oracle_masses.size() != h.mass.size()) throw AnalysisError("oracle grid does not match the histogram");
  double d = 0.0;
  for (std::size_t k = 0; k < h.mass.size(); ++k) d += std::abs(h.mass[k] - oracle_masses[k]);
  return 0.5 * d;
}

double distribution_distance(const PhaseSpaceHistogram& h, const StationaryDensity& oracle) {
  const auto masses = cell_masses(oracle, h.bounds, h.nq, h.np);
  return distribution_distance(h, masses);
}

namespace {

WitnessReport compare(const Ensemble& a, const Ensemble& b, Model model) {
  WitnessReport w;
  w.model = model;
  for (std::size_t i = 0; i < a.trajectories.size(); ++i) {
    const auto& sa = a.trajectories[i].samples;
    const auto& sb = b.trajectories[i].samples;
    for (std::size_t k = 0; k < sa.size(); ++k) {
      w.max_dev_particle1 = std::max({w.max_dev_particle1, std::abs(sa[k].q1 - sb[k].q1), std::abs(sa[k].p1 - sb[k].p1)});
      w.max_dev_particle2 = std::max({w.max_dev_particle2, std::abs(sa[k].q2 - sb[k].q2), std::abs(sa[k].p2 - sb[k].p2)});
    }
  }
  w.particle2_identical = w.max_dev_particle2 == 0.0;
  w.particle1_differs = w.max_dev_particle1 > 0.0;
  return w;
}

}  // namespace

WitnessReport unidirectionality_witness(const ScenarioParams& sp, const SimConfig& cfg, double delta_q1) {
  SimConfig shifted = cfg;
  shifted.initial.mean.q1 += delta_q1;
  return compare(run_ensemble(cfg, sp), run_ensemble(shifted, sp), Model::slow_flow);
}

WitnessReport unidirectionality_witness(const ScenarioParams& sp, const SimConfig& cfg,
                                        const CouplingCoefficients& c, double delta_q1) {
  SimConfig shifted = cfg;
  shifted.initial.mean.q1 += delta_q1;
  return compare(run_full_ensemble(cfg, sp, c), run_full_ensemble(shifted, sp, c), Model::full_oscillation);
}

std::vector<Mode> mode_detect(const PhaseSpaceHistogram& h, double smoothing, double threshold,
                              double prominence) {
  if (!(smoothing >= 1.0)) throw AnalysisError("smoothing kernel must be at least one bin wide");
  const int nq = h.nq;
  const int np = h.np;
  auto at = [np](int i, int j) { return static_cast<std::size_t>(i) * np + j; };

  const int half = static_cast<int>(std::ceil(3.0 * smoothing));
  std::vector<double> kernel(2 * half + 1);
  for (int k = -half; k <= half; ++k) kernel[k + half] = std::exp(-0.5 * k * k / (smoothing * smoothing));
  const double ksum = std::accumulate(kernel.begin(), kernel.end(), 0.0);
  for (auto& v : kernel) v /= ksum;

  std::vector<double> tmp(h.mass.size(), 0.0);
  std::vector<double> s(h.mass.size(), 0.0);
  for (int i = 0; i < nq; ++i) {
    for (int j = 0; j < np; ++j) {
      double acc = 0.0;
      for (int k = -half; k <= half; ++k) {
        const int jj = j + k;
        if (jj >= 0 && jj < np) acc += kernel[k + half] * h.mass[at(i, jj)];
      }
      tmp[at(i, j)] = acc;
    }
  }
  for (int i = 0; i < nq; ++i) {
    for (int j = 0; j < np; ++j) {
      double acc = 0.0;
      for (int k = -half; k <= half; ++k) {
        const int ii = i + k;
        if (ii >= 0 && ii < nq) acc += kernel[k + half] * tmp[at(ii, j)];
      }
      s[at(i, j)] = acc;
    }
  }

  // Strict order on cells: higher value wins, ties go to the earlier raster index.
  auto above = [&](std::size_t a, std::size_t b) { return s[a] > s[b] || (s[a] == s[b] && a < b); };
  auto uphill = [&](int i, int j) {
    std::size_t best = at(i, j);
    for (int di = -1; di <= 1; ++di) {
      for (int dj = -1; dj <= 1; ++dj) {
        const int ii = i + di;
        const int jj = j + dj;
        if ((di == 0 && dj == 0) || ii < 0 || ii >= nq || jj < 0 || jj >= np) continue;
        if (above(at(ii, jj), best)) best = at(ii, jj);
      }
    }
    return best;
  };

  const double peak = *std::max_element(s.begin(), s.end());
  std::vector<std::size_t> candidates;
  for (int i = 0; i < nq; ++i) {
    for (int j = 0; j < np; ++j) {
      if (uphill(i, j) == at(i, j) && s[at(i, j)] >= threshold * peak && s[at(i, j)] > 0.0) {
        candidates.push_back(at(i, j));
      }
    }
  }
  std::sort(candidates.begin(), candidates.end(), above);

  // Merge maxima that are not separated by a dip of the requested depth.
  std::vector<std::size_t> accepted;
  std::vector<std::ptrdiff_t> owner(s.size(), -1);  // local-max cell -> accepted mode index
  for (std::size_t c : candidates) {
    const int ci = static_cast<int>(c) / np;
    const int cj = static_cast<int>(c) % np;
    std::ptrdiff_t merged = -1;
    for (std::size_t a = 0; a < accepted.size() && merged < 0; ++a) {
      const int ai = static_cast<int>(accepted[a]) / np;
      const int aj = static_cast<int>(accepted[a]) % np;
      const int steps = std::max(std::abs(ai - ci), std::abs(aj - cj));
      double low = s[c];
      for (int t = 0; t <= steps; ++t) {
        const double f = steps == 0 ? 0.0 : static_cast<double>(t) / steps;
        const int ii = static_cast<int>(std::lround(ci + f * (ai - ci)));
        const int jj = static_cast<int>(std::lround(cj + f * (aj - cj)));
        low = std::min(low, s[at(ii, jj)]);
      }
      if (low >= (1.0 - prominence) * s[c]) merged = static_cast<std::ptrdiff_t>(a);
    }
    if (merged >= 0) {
      owner[c] = merged;
    } else {
      owner[c] = static_cast<std::ptrdiff_t>(accepted.size());
      accepted.push_back(c);
    }
  }

  std::vector<Mode> modes(accepted.size());
  for (std::size_t a = 0; a < accepted.size(); ++a) {
    const int i = static_cast<int>(accepted[a]) / np;
    const int j = static_cast<int>(accepted[a]) % np;
    modes[a].q = h.q_center(i);
    modes[a].p = h.p_center(j);
    modes[a].height = s[accepted[a]] / h.cell_area();
  }
  // Basins by steepest ascent; cells draining into sub-threshold maxima are left out.
  for (int i = 0; i < nq; ++i) {
    for (int j = 0; j < np; ++j) {
      int ci = i;
      int cj = j;
      for (;;) {
        const std::size_t next = uphill(ci, cj);
        if (next == at(ci, cj)) break;
        ci = static_cast<int>(next) / np;
        cj = static_cast<int>(next) % np;
      }
      const std::ptrdiff_t o = owner[at(ci, cj)];
      if (o >= 0) modes[static_cast<std::size_t>(o)].mass += h.mass[at(i, j)];
    }
  }
  std::stable_sort(modes.begin(), modes.end(), [](const Mode& a, const Mode& b) { return a.mass > b.mass; });
  return modes;
}

}  // namespace levsim
