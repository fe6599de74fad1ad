#include "nlg/control.hpp"

#include <algorithm>
#include <cmath>

#include "nlg/integrate.hpp"

namespace nlg {

double zad_sliding(const ZadConfig& cfg, double psi, double psi_dot) {
  return psi + cfg.k_s * psi_dot;
}

std::pair<double, double> zad_sliding_derivatives(const NlgParams& params,
                                                  const TireModel& model,
                                                  const ZadConfig& cfg,
                                                  const StateVec& x_hat) {
  // psi_ddot with the control torque left out; no disturbance knowledge.
  const double base = (strut_moment(params, x_hat[0], x_hat[1]) +
                       (params.kappa / params.v) * x_hat[1] +
                       model.ground_moment(x_hat[2])) /
                      params.i_z;
  const double s_dot_1 = x_hat[1] + cfg.k_s * (base + cfg.mu / params.i_z);
  const double s_dot_2 = x_hat[1] + cfg.k_s * (base - cfg.mu / params.i_z);
  return {s_dot_1, s_dot_2};
}

double zad_duty_cycle(const ZadConfig& cfg, double s, double s_dot_1, double s_dot_2,
                      double dt) {
  const double denom = s_dot_2 - s_dot_1;
  if (std::abs(denom) < 1e-12) {
    throw DegenerateSwitchingError("ZAD duty cycle: sliding slopes coincide");
  }
  double d = (2.0 * s + cfg.t * s_dot_2) / denom;
  d = std::clamp(d, 0.0, cfg.t);
  if (dt > 0.0) {
    d = 2.0 * dt * std::round(d / (2.0 * dt));
    d = std::clamp(d, 0.0, cfg.t);
  }
  return d;
}

double zad_control_signal(const ZadCycleState& cycle, const ZadConfig& cfg, double t) {
  const double tau = t - cycle.t_cycle_start;
  const double half = 0.5 * cycle.d_k;
  if (tau <= half) return cfg.mu;
  if (tau < cfg.t - half) return -cfg.mu;
  return cfg.mu;
}

McsConfig mcs_default_config(const NlgParams& params) {
  McsConfig cfg;
  const PlantMatrices pm = build_matrices(params);
  cfg.a_m = pm.a;
  cfg.b_m = pm.b;
  return cfg;
}

double mcs_update(const McsConfig& cfg, McsState& state, const StateVec& x_hat,
                  double dt) {
  state.x_m = rk4_step([&](const StateVec& x) { return StateVec(cfg.a_m * x); },
                       state.x_m, dt);
  const StateVec e_m = x_hat - state.x_m;
  const double w = cfg.b_m.dot(cfg.p_m * e_m);
  const Eigen::RowVector3d integrand = w * x_hat.transpose();
  state.k_integral += 0.5 * cfg.k_i * dt * (state.prev_integrand + integrand);
  state.prev_integrand = integrand;
  state.k_gain = cfg.k_p * integrand + state.k_integral;
  if (state.k_gain.norm() > 1e9) {
    throw AdaptationDivergenceError("MCS adaptation diverged: ||K|| > 1e9");
  }
  return -state.k_gain.dot(x_hat);
}

}  // namespace nlg
