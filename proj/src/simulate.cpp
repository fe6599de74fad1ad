#include "nlg/simulate.hpp"

#include <cmath>

namespace nlg {

namespace {

using CoupledVec = Eigen::Matrix<double, 6, 1>;

long steps_per_cycle(const ZadConfig& zad, double dt) {
  const double ratio = zad.t / dt;
  const long n = std::lround(ratio);
  if (n < 2 || std::abs(ratio - static_cast<double>(n)) > 1e-9 * ratio || n % 2 != 0) {
    throw ConfigError("integration step must divide the PWM period into an even "
                      "number of sub-steps");
  }
  return n;
}

}  // namespace

Trajectory simulate(const SimSetup& setup) {
  const StepConfig& cfg = setup.cfg;
  if (!(cfg.dt > 0.0) || cfg.record_every < 1) {
    throw ConfigError("step configuration requires dt > 0 and record_every >= 1");
  }
  const double t_end = setup.scenario.duration;
  const long n_steps = std::lround(t_end / cfg.dt);

  long zad_cycle_steps = 0;
  if (setup.controller.kind == ControllerKind::Zad) {
    zad_cycle_steps = steps_per_cycle(setup.controller.zad, cfg.dt);
  }

  McsConfig mcs_cfg = setup.controller.mcs;
  McsState mcs_state;
  if (setup.controller.kind == ControllerKind::Mcs && mcs_cfg.b_m.isZero()) {
    mcs_cfg = mcs_default_config(
        setup.params.with_velocity(setup.scenario.velocity(0.0)));
    mcs_cfg.k_p = setup.controller.mcs.k_p;
    mcs_cfg.k_i = setup.controller.mcs.k_i;
    mcs_cfg.p_m = setup.controller.mcs.p_m;
  }

  CoupledVec z;
  z << setup.scenario.x0, setup.x_hat0;

  Trajectory traj;
  traj.rows.reserve(static_cast<std::size_t>(n_steps / cfg.record_every + 2));

  ZadCycleState cycle;
  double u = 0.0;
  double d_c = 0.0;

  for (long i = 0; i <= n_steps; ++i) {
    const double t = static_cast<double>(i) * cfg.dt;
    const double v = setup.scenario.velocity(t);
    const double zeta = setup.scenario.disturbance(t);
    const PlantMatrices pm = build_matrices(setup.params.with_velocity(v));

    const StateVec x = z.head<3>();
    const StateVec x_hat = z.tail<3>();

    if (i < n_steps) {
      switch (setup.controller.kind) {
        case ControllerKind::None:
          u = 0.0;
          break;
        case ControllerKind::Zad: {
          const ZadConfig& zc = setup.controller.zad;
          if (i % zad_cycle_steps == 0) {
            const double s = zad_sliding(zc, x_hat[0], x_hat[1]);
            const auto [sd1, sd2] = zad_sliding_derivatives(
                setup.params.with_velocity(v), setup.scenario.controller_tire, zc,
                x_hat);
            cycle.d_k = zad_duty_cycle(zc, s, sd1, sd2, cfg.dt);
            cycle.t_cycle_start = t;
            d_c = cycle.d_k / zc.t;
          }
          // evaluate at the step midpoint so the held value matches the
          // rounded segment boundaries exactly
          u = zad_control_signal(cycle, zc, t + 0.5 * cfg.dt);
          break;
        }
        case ControllerKind::Mcs:
          u = mcs_update(mcs_cfg, mcs_state, x_hat, cfg.dt);
          break;
      }
    }

    if (i % cfg.record_every == 0) {
      traj.rows.push_back({t, x, x_hat, u, d_c, zeta, v});
    }
    if (i == n_steps) break;

    const auto coupled_field = [&](const CoupledVec& zz) {
      const StateVec xs = zz.head<3>();
      const StateVec xh = zz.tail<3>();
      CoupledVec dz;
      dz.head<3>() = vector_field(pm, setup.params.i_z, setup.scenario.plant_tire,
                                  xs, u, zeta);
      const OutputVec y = pm.c * xs;
      dz.tail<3>() = observer_rhs(pm, setup.params.i_z, setup.scenario.controller_tire,
                                  setup.cert.l, xh, u, y);
      return dz;
    };
    z = rk4_step(coupled_field, z, cfg.dt);
    check_divergence(t + cfg.dt, z.head<3>());
    check_divergence(t + cfg.dt, z.tail<3>());
  }

  return traj;
}

}  // namespace nlg
