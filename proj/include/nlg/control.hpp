#pragma once

#include <utility>

#include "nlg/plant.hpp"

namespace nlg {

// Quasi-sliding PWM controller: each period T the duty d_k is chosen so the
// linearized sliding function S = psi + k_s*psi_dot averages to zero over
// the period, then realized as a centered three-segment pulse.
struct ZadConfig {
  double t = 1e-3;    // PWM period, s
  double k_s = 0.5;   // sliding-surface velocity weight, s
  double mu = 1000.0; // pulse torque, N*m
};

struct ZadCycleState {
  double d_k = 0.0;           // current duty, s, in [0, T]
  double t_cycle_start = 0.0; // s
};

double zad_sliding(const ZadConfig& cfg, double psi, double psi_dot);

// Sliding-function slopes at the cycle start under u = +mu and u = -mu,
// evaluated on the nominal model with the observer estimate standing in for
// the full state. S_dot = psi_dot + k_s*psi_ddot.
std::pair<double, double> zad_sliding_derivatives(const NlgParams& params,
                                                  const TireModel& model,
                                                  const ZadConfig& cfg,
                                                  const StateVec& x_hat);

// d_k = (2 S + T S_dot_2) / (S_dot_2 - S_dot_1), clamped to [0, T]. When dt
// is positive the result is additionally rounded to the nearest even
// multiple of dt so the centered half-pulses align to integration steps.
// Throws DegenerateSwitchingError when the two slopes coincide.
double zad_duty_cycle(const ZadConfig& cfg, double s, double s_dot_1, double s_dot_2,
                      double dt = 0.0);

// The three-segment centered PWM value at time t inside the current cycle.
double zad_control_signal(const ZadCycleState& cycle, const ZadConfig& cfg, double t);

// Adaptive regulator in the minimal-control-synthesis form: gains are the
// proportional plus integral parts of w * x_hat^T with w = B_m^T P e_m and
// e_m = x_hat - x_m; the control is u = -K x_hat. The reference model
// x_m_dot = A_m x_m runs from x_m(0) = 0 with zero reference input, so the
// regulation target is the origin.
struct McsConfig {
  double k_p = 1e3;
  double k_i = 1e4;  // 1/s
  Eigen::Matrix3d p_m = Eigen::Matrix3d::Identity();
  Eigen::Matrix3d a_m = Eigen::Matrix3d::Zero();
  Eigen::Vector3d b_m = Eigen::Vector3d::Zero();
};

// Reference model matrices copied from the plant at the given parameters.
McsConfig mcs_default_config(const NlgParams& params);

struct McsState {
  Eigen::RowVector3d k_gain = Eigen::RowVector3d::Zero();
  Eigen::RowVector3d k_integral = Eigen::RowVector3d::Zero();
  StateVec x_m = StateVec::Zero();
  Eigen::RowVector3d prev_integrand = Eigen::RowVector3d::Zero();  // trapezoid memory
};

// Advances the reference model one RK4 step, accumulates the integral gain
// (trapezoidal), refreshes K and returns u = -K x_hat. Throws
// AdaptationDivergenceError when ||K|| exceeds 1e9.
double mcs_update(const McsConfig& cfg, McsState& state, const StateVec& x_hat,
                  double dt);

}  // namespace nlg
