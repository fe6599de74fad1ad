#pragma once

#include <optional>
#include <span>
#include <vector>

#include "nlg/integrate.hpp"
#include "nlg/plant.hpp"

namespace nlg {

// Steady-state envelope of one open-loop run at fixed velocity.
struct BifurcationPoint {
  double v = 0.0;
  double psi_min = 0.0, psi_max = 0.0;    // rad
  double alpha_min = 0.0, alpha_max = 0.0;  // rad
  double dominant_freq = 0.0;             // Hz, 0 when non-oscillatory
  bool diverged = false;

  double psi_amplitude() const { return 0.5 * (psi_max - psi_min); }
};

struct SweepConfig {
  double v_start = 1.0;   // m/s
  double v_end = 80.0;    // m/s
  double v_step = 1.0;    // m/s
  double transient = 5.0; // s discarded before measuring
  double window = 1.0;    // s measured
  double dt = 1e-5;       // s
  StateVec x0 = StateVec(0.05, 0.0, 0.0);  // the origin is an equilibrium at
                                           // every V; sweeps need a nudge
  int jobs = 0;  // 0 = OpenMP default
};

// One sweep point: integrate the open-loop plant, drop the transient, track
// the psi/alpha envelope and the dominant frequency over the window.
// Divergence is recorded, not thrown.
BifurcationPoint measure_steady_state(const NlgParams& params, const TireModel& model,
                                      double v, const SweepConfig& cfg);

// Open-loop sweep over velocity, one point per grid value. Points are
// independent; the parallel version distributes them over OpenMP workers
// and merges in V order, bit-identical to the serial reference.
std::vector<BifurcationPoint> bifurcation_sweep(const NlgParams& params,
                                                const TireModel& model,
                                                const SweepConfig& cfg);
std::vector<BifurcationPoint> bifurcation_sweep_serial(const NlgParams& params,
                                                       const TireModel& model,
                                                       const SweepConfig& cfg);

// Smallest V whose steady amplitude (psi_max - psi_min)/2 exceeds the
// threshold, linearly interpolated between bracketing grid points; nullopt
// when no crossing exists.
std::optional<double> detect_hopf(const std::vector<BifurcationPoint>& points,
                                  double amp_threshold);

struct FrequencyEstimate {
  bool oscillatory = false;
  double hz = 0.0;              // from interpolated upward zero crossings
  double hz_peak_spacing = 0.0; // cross-check from peak-to-peak spacing
};

// Zero-crossing frequency of the mean-removed signal, with a hysteresis
// band rejecting sub-threshold ripple; cross-checked against peak spacing.
FrequencyEstimate estimate_frequency(std::span<const double> t,
                                     std::span<const double> y,
                                     double hysteresis = 1e-3);

enum class Signal { Psi, PsiDot, Alpha };

// Frequency over the trailing `window` seconds of a trajectory.
FrequencyEstimate dominant_frequency(const Trajectory& traj, Signal signal,
                                     double window, double hysteresis = 1e-3);

struct PerfMetrics {
  double overshoot = 0.0;                // max |psi| past the onset, rad
  std::optional<double> settle_time{};   // nullopt = never settles
  FrequencyEstimate freq;
};

PerfMetrics perf_metrics(const Trajectory& traj, double disturb_onset,
                         double settle_threshold);

}  // namespace nlg
