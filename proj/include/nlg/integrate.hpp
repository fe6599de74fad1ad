#pragma once

#include <cassert>
#include <utility>
#include <vector>

#include "nlg/plant.hpp"

namespace nlg {

struct StepConfig {
  double dt = 1e-5;      // s
  double t_end = 2.0;    // s
  int record_every = 10; // output decimation
};

struct TrajectoryRow {
  double t = 0.0;
  StateVec x = StateVec::Zero();
  StateVec x_hat = StateVec::Zero();
  double u = 0.0;     // applied control torque, N*m
  double d_c = 0.0;   // normalized PWM duty (0 outside ZAD runs)
  double zeta = 0.0;  // disturbance torque, N*m
  double v = 0.0;     // forward velocity, m/s
};

struct Trajectory {
  std::vector<TrajectoryRow> rows;

  std::vector<double> times() const;
  // 0 = psi, 1 = psi_dot, 2 = alpha
  std::vector<double> state_component(int i) const;
  std::vector<double> estimate_component(int i) const;
  std::vector<double> duty() const;
};

// Classical fourth-order Runge-Kutta update for an autonomous field. Any
// time dependence (held control, disturbance, velocity) is frozen into the
// callable for the step.
template <typename Field, typename Vec>
Vec rk4_step(Field&& f, const Vec& x, double dt) {
  assert(dt > 0.0);
  const Vec k1 = f(x);
  const Vec k2 = f(Vec(x + (0.5 * dt) * k1));
  const Vec k3 = f(Vec(x + (0.5 * dt) * k2));
  const Vec k4 = f(Vec(x + dt * k3));
  return x + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

// Any state beyond this magnitude is treated as numerical blow-up; the
// open-loop shimmy states stay below 1 rad.
inline constexpr double kDivergenceGuard = 1e6;

inline void check_divergence(double t, const StateVec& x) {
  if (!x.allFinite() || x.cwiseAbs().maxCoeff() > kDivergenceGuard) {
    throw DivergenceError(t, {x[0], x[1], x[2]});
  }
}

}  // namespace nlg
