#include "nlg/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace nlg {

BifurcationPoint measure_steady_state(const NlgParams& params, const TireModel& model,
                                      double v, const SweepConfig& cfg) {
  BifurcationPoint pt;
  pt.v = v;
  const PlantMatrices pm = build_matrices(params.with_velocity(v));
  const long n_trans = std::lround(cfg.transient / cfg.dt);
  const long n_win = std::lround(cfg.window / cfg.dt);
  // ~10 kHz sampling is plenty for a ~50 Hz cycle count
  const long decim = std::max(1L, std::lround(1e-4 / cfg.dt));

  const auto field = [&](const StateVec& x) {
    return vector_field(pm, params.i_z, model, x, 0.0, 0.0);
  };

  StateVec x = cfg.x0;
  for (long i = 0; i < n_trans; ++i) {
    x = rk4_step(field, x, cfg.dt);
    if (!x.allFinite() || x.cwiseAbs().maxCoeff() > kDivergenceGuard) {
      pt.diverged = true;
      return pt;
    }
  }

  pt.psi_min = pt.psi_max = x[0];
  pt.alpha_min = pt.alpha_max = x[2];
  std::vector<double> ts, psis;
  ts.reserve(static_cast<std::size_t>(n_win / decim + 2));
  psis.reserve(ts.capacity());
  for (long i = 0; i < n_win; ++i) {
    x = rk4_step(field, x, cfg.dt);
    if (!x.allFinite() || x.cwiseAbs().maxCoeff() > kDivergenceGuard) {
      pt.diverged = true;
      return pt;
    }
    pt.psi_min = std::min(pt.psi_min, x[0]);
    pt.psi_max = std::max(pt.psi_max, x[0]);
    pt.alpha_min = std::min(pt.alpha_min, x[2]);
    pt.alpha_max = std::max(pt.alpha_max, x[2]);
    if (i % decim == 0) {
      ts.push_back(static_cast<double>(i) * cfg.dt);
      psis.push_back(x[0]);
    }
  }
  const FrequencyEstimate fe = estimate_frequency(ts, psis);
  pt.dominant_freq = fe.oscillatory ? fe.hz : 0.0;
  return pt;
}

namespace {

std::vector<double> sweep_grid(const SweepConfig& cfg) {
  std::vector<double> vs;
  for (double v = cfg.v_start; v <= cfg.v_end + 1e-9; v += cfg.v_step) vs.push_back(v);
  return vs;
}

}  // namespace

std::vector<BifurcationPoint> bifurcation_sweep(const NlgParams& params,
                                                const TireModel& model,
                                                const SweepConfig& cfg) {
  const std::vector<double> vs = sweep_grid(cfg);
  std::vector<BifurcationPoint> out(vs.size());
#ifdef _OPENMP
  const int threads = cfg.jobs > 0 ? cfg.jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (std::size_t i = 0; i < vs.size(); ++i) {
    out[i] = measure_steady_state(params, model, vs[i], cfg);
  }
#else
  for (std::size_t i = 0; i < vs.size(); ++i) {
    out[i] = measure_steady_state(params, model, vs[i], cfg);
  }
#endif
  return out;
}

std::vector<BifurcationPoint> bifurcation_sweep_serial(const NlgParams& params,
                                                       const TireModel& model,
                                                       const SweepConfig& cfg) {
  const std::vector<double> vs = sweep_grid(cfg);
  std::vector<BifurcationPoint> out(vs.size());
  for (std::size_t i = 0; i < vs.size(); ++i) {
    out[i] = measure_steady_state(params, model, vs[i], cfg);
  }
  return out;
}

std::optional<double> detect_hopf(const std::vector<BifurcationPoint>& points,
                                  double amp_threshold) {
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double amp = points[i].diverged
                           ? std::numeric_limits<double>::infinity()
                           : points[i].psi_amplitude();
    if (amp <= amp_threshold) continue;
    if (i == 0) return points[0].v;
    const double prev = points[i - 1].psi_amplitude();
    const double frac = std::isinf(amp) ? 0.0 : (amp_threshold - prev) / (amp - prev);
    return points[i - 1].v + frac * (points[i].v - points[i - 1].v);
  }
  return std::nullopt;
}

FrequencyEstimate estimate_frequency(std::span<const double> t,
                                     std::span<const double> y, double hysteresis) {
  FrequencyEstimate fe;
  if (y.size() < 3) return fe;
  double mean = 0.0;
  for (double v : y) mean += v;
  mean /= static_cast<double>(y.size());

  double lo = y[0] - mean, hi = lo;
  for (double v : y) {
    lo = std::min(lo, v - mean);
    hi = std::max(hi, v - mean);
  }
  if (0.5 * (hi - lo) < hysteresis) return fe;  // sub-threshold ripple

  // upward zero crossings, armed below -h to reject chatter around zero
  std::vector<double> crossings;
  std::vector<double> peak_times;
  bool armed = false;
  double seg_peak = -std::numeric_limits<double>::infinity();
  double seg_peak_t = 0.0;
  bool in_segment = false;
  for (std::size_t i = 1; i < y.size(); ++i) {
    const double y0 = y[i - 1] - mean;
    const double y1 = y[i] - mean;
    if (y0 < -hysteresis) armed = true;
    if (armed && y0 < 0.0 && y1 >= 0.0) {
      crossings.push_back(t[i - 1] + (t[i] - t[i - 1]) * (-y0) / (y1 - y0));
      armed = false;
      if (in_segment) peak_times.push_back(seg_peak_t);
      seg_peak = -std::numeric_limits<double>::infinity();
      in_segment = true;
    }
    if (in_segment && y1 > seg_peak) {
      seg_peak = y1;
      seg_peak_t = t[i];
    }
  }
  if (crossings.size() < 2) return fe;

  fe.oscillatory = true;
  fe.hz = static_cast<double>(crossings.size() - 1) /
          (crossings.back() - crossings.front());
  if (peak_times.size() >= 2) {
    fe.hz_peak_spacing = static_cast<double>(peak_times.size() - 1) /
                         (peak_times.back() - peak_times.front());
  }
  return fe;
}

FrequencyEstimate dominant_frequency(const Trajectory& traj, Signal signal,
                                     double window, double hysteresis) {
  if (traj.rows.empty()) return {};
  const double t_start = traj.rows.back().t - window;
  std::vector<double> ts, ys;
  for (const auto& r : traj.rows) {
    if (r.t < t_start) continue;
    ts.push_back(r.t);
    switch (signal) {
      case Signal::Psi: ys.push_back(r.x[0]); break;
      case Signal::PsiDot: ys.push_back(r.x[1]); break;
      case Signal::Alpha: ys.push_back(r.x[2]); break;
    }
  }
  return estimate_frequency(ts, ys, hysteresis);
}

PerfMetrics perf_metrics(const Trajectory& traj, double disturb_onset,
                         double settle_threshold) {
  PerfMetrics m;
  double last_above = -1.0;
  bool any_after_onset = false;
  for (const auto& r : traj.rows) {
    if (r.t < disturb_onset) continue;
    any_after_onset = true;
    m.overshoot = std::max(m.overshoot, std::abs(r.x[0]));
    if (std::abs(r.x[0]) >= settle_threshold) last_above = r.t;
  }
  if (any_after_onset) {
    if (last_above < 0.0) {
      m.settle_time = 0.0;  // never exceeded the band
    } else if (last_above < traj.rows.back().t) {
      m.settle_time = last_above - disturb_onset;
    }  // still outside the band at the end: never settles
  }
  m.freq = dominant_frequency(traj, Signal::Psi,
                              traj.rows.empty() ? 0.0
                                                : traj.rows.back().t - disturb_onset);
  return m;
}

}  // namespace nlg
