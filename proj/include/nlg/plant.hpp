#pragma once

#include <Eigen/Dense>

#include "nlg/errors.hpp"
#include "nlg/tire.hpp"

namespace nlg {

// State layout: x = [psi, psi_dot, alpha] in rad, rad/s, rad.
using StateVec = Eigen::Vector3d;
using OutputVec = Eigen::Vector2d;

// Physical constants of the gear plus the current forward velocity.
struct NlgParams {
  double v = 80.0;          // forward velocity, m/s
  double a = 0.1;           // half contact length, m
  double e = 0.1;           // caster length, m
  double i_z = 1.0;         // yaw moment of inertia, kg*m^2
  double f_z = 9000.0;      // vertical force, N
  double c = -100000.0;     // torsional spring rate, N*m/rad
  double c_f_alpha = 20.0;  // side force derivative, 1/rad
  double c_m_alpha = -2.0;  // moment derivative, m/rad
  double k = -10.0;         // torsional damping, N*m/rad/s
  double kappa = -270.0;    // tread width moment constant, N*m^2/rad
  double sigma = 0.3;       // relaxation length (= 3a), m

  static constexpr double v_min = 0.5;  // m/s

  // Tire model sharing this parameter set's f_z, e and force derivatives.
  TireModel tire(TireKind kind) const;

  NlgParams with_velocity(double velocity) const {
    NlgParams p = *this;
    p.v = velocity;
    return p;
  }
};

// x_dot = A x + f(x) + B u + B zeta, y = C x. A carries every linear term
// (including the kappa/V tire damping on psi_dot); f holds only M_G/I_z.
struct PlantMatrices {
  Eigen::Matrix3d a;
  Eigen::Vector3d b;
  Eigen::Matrix<double, 2, 3> c;
};

// c*psi + k*psi_dot, the elastic + viscous strut torque.
double strut_moment(const NlgParams& p, double psi, double psi_dot);

// Throws SingularVelocityError below NlgParams::v_min.
PlantMatrices build_matrices(const NlgParams& p);

// A x + [0, M_G(alpha)/I_z, 0]^T + B (u + zeta) with prebuilt matrices.
StateVec vector_field(const PlantMatrices& pm, double i_z, const TireModel& tire,
                      const StateVec& x, double u, double zeta);

StateVec vector_field(const NlgParams& p, const TireModel& tire, const StateVec& x,
                      double u, double zeta);

}  // namespace nlg
