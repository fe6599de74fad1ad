#pragma once

#include <array>
#include <stdexcept>
#include <string>

namespace nlg {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// kappa/V and the slip-lag dynamics blow up toward V = 0.
struct SingularVelocityError : std::runtime_error {
  explicit SingularVelocityError(double v)
      : std::runtime_error("velocity " + std::to_string(v) +
                           " m/s below the model's validity floor"),
        v(v) {}
  double v;
};

struct DivergenceError : std::runtime_error {
  DivergenceError(double t, const std::array<double, 3>& state)
      : std::runtime_error("state diverged at t = " + std::to_string(t) +
                           " s (psi = " + std::to_string(state[0]) +
                           ", psi_dot = " + std::to_string(state[1]) +
                           ", alpha = " + std::to_string(state[2]) + ")"),
        t(t),
        state(state) {}
  double t;
  std::array<double, 3> state;
};

struct DegenerateSwitchingError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct AdaptationDivergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CertificateError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SynthesisError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace nlg
