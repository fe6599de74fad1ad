#pragma once

#include <functional>
#include <string>
#include <vector>

#include "nlg/plant.hpp"

namespace nlg {

// A benchmark run: velocity profile, disturbance torque, tire model driving
// the plant and the (possibly mismatched) tire model the observer and
// controllers believe in. Signal closures are pure functions of t.
struct Scenario {
  std::string name;
  std::function<double(double)> velocity;     // t -> m/s
  std::function<double(double)> disturbance;  // t -> N*m
  double duration = 2.0;                      // s
  TireModel plant_tire = TireModel::piecewise();
  TireModel controller_tire = TireModel::smooth();
  StateVec x0 = StateVec::Zero();
};

struct Test1Config {
  double v = 80.0;         // m/s
  double zeta = 1000.0;    // N*m
  double t_on = 0.2;       // s
  double t_off = 0.3;      // s
  double duration = 2.0;   // s
};

// Tire damage: constant speed, one torque impulse, zero initial conditions.
// Plant runs the piecewise tire, observer/controllers the smooth one.
Scenario test1(const Test1Config& cfg = {});

struct Test2Config {
  double v_start = 1.0;    // m/s
  double v_end = 80.0;     // m/s
  double duration = 10.0;  // s
  double pothole_amp = 500.0;    // N*m
  double pothole_width = 0.05;   // s
  std::vector<double> pothole_times = {2.0, 3.5, 5.0, 6.5, 8.0};  // s
};

// Taxiing on a non-uniform road: velocity ramp plus a pothole pulse train.
// The waveform numbers are declared reproduction parameters, not published
// values; same cross-model setup as test1.
Scenario test2(const Test2Config& cfg = {});

struct CustomConfig {
  double v = 80.0;
  double duration = 6.0;
  double psi0 = 0.05;       // rad
  double zeta = 0.0;        // N*m
  double zeta_on = 0.0;     // s
  double zeta_off = 0.0;    // s
};

// Constant-velocity run from a perturbed yaw angle, optional torque pulse.
Scenario custom_scenario(const CustomConfig& cfg = {});

}  // namespace nlg
