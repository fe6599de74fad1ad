#pragma once

#include "nlg/control.hpp"
#include "nlg/integrate.hpp"
#include "nlg/observer.hpp"
#include "nlg/scenario.hpp"

namespace nlg {

enum class ControllerKind { None, Zad, Mcs };

struct ControllerSpec {
  ControllerKind kind = ControllerKind::None;
  ZadConfig zad;
  McsConfig mcs;  // a_m/b_m filled from the run parameters when left zero
};

struct SimSetup {
  NlgParams params;  // params.v is overridden by the scenario's profile
  Scenario scenario;
  ControllerSpec controller;
  ObserverCert cert = reference_cert();
  StepConfig cfg;
  StateVec x_hat0 = StateVec::Zero();
};

// Integrates plant and observer together with RK4 on the coupled 6-state
// system. Control and disturbance are held constant over each step (ZAD
// switching instants land exactly on step boundaries; the MCS law refreshes
// every step). The disturbance drives the plant only.
Trajectory simulate(const SimSetup& setup);

}  // namespace nlg
