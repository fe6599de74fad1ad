#include "nlg/scenario.hpp"

namespace nlg {

Scenario test1(const Test1Config& cfg) {
  Scenario s;
  s.name = "test1";
  s.duration = cfg.duration;
  s.velocity = [v = cfg.v](double) { return v; };
  s.disturbance = [cfg](double t) {
    return (t >= cfg.t_on && t <= cfg.t_off) ? cfg.zeta : 0.0;
  };
  s.plant_tire = TireModel::piecewise();
  s.controller_tire = TireModel::smooth();
  return s;
}

Scenario test2(const Test2Config& cfg) {
  Scenario s;
  s.name = "test2";
  s.duration = cfg.duration;
  s.velocity = [cfg](double t) {
    return cfg.v_start + (cfg.v_end - cfg.v_start) * t / cfg.duration;
  };
  s.disturbance = [cfg](double t) {
    for (double tp : cfg.pothole_times) {
      if (t >= tp && t <= tp + cfg.pothole_width) return cfg.pothole_amp;
    }
    return 0.0;
  };
  s.plant_tire = TireModel::piecewise();
  s.controller_tire = TireModel::smooth();
  return s;
}

Scenario custom_scenario(const CustomConfig& cfg) {
  Scenario s;
  s.name = "custom";
  s.duration = cfg.duration;
  s.velocity = [v = cfg.v](double) { return v; };
  s.disturbance = [cfg](double t) {
    return (cfg.zeta != 0.0 && t >= cfg.zeta_on && t <= cfg.zeta_off) ? cfg.zeta : 0.0;
  };
  s.x0 = StateVec(cfg.psi0, 0.0, 0.0);
  s.plant_tire = TireModel::piecewise();
  s.controller_tire = TireModel::smooth();
  return s;
}

}  // namespace nlg
