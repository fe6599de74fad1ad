#pragma once

#include <numbers>

namespace nlg {

enum class TireKind { Piecewise, Smooth };

namespace tire_defaults {
inline constexpr double pi = std::numbers::pi;
inline constexpr double alpha_g = 10.0 * pi / 180.0;  // sine-lobe half width
inline constexpr double delta = 5.0 * pi / 180.0;     // side-force saturation knee
inline constexpr double alpha_m = 3.0 * pi / 180.0;   // smooth M_z peak location
inline constexpr double gamma_m = alpha_g / pi;       // smooth M_z peak scale
inline constexpr double alpha_f = 3.0 * alpha_g;      // smooth F_y peak location
inline constexpr double gamma_f = 0.085;              // smooth F_y peak scale
}  // namespace tire_defaults

// Ground-interaction curves: aligning torque M_z(alpha) about the contact
// patch and lateral side force F_y(alpha), in the piecewise (sine lobe +
// saturated ramp) or smooth (rational) form. Angles are radians; degree
// conversion is an I/O concern.
//
// Both forms are odd in alpha. The piecewise M_z vanishes identically for
// |alpha| > alpha_g and is continuous there (sin(pi) = 0); the piecewise
// F_y saturates at +-c_f_alpha*f_z*delta for |alpha| >= delta.
struct TireModel {
  TireKind kind = TireKind::Piecewise;

  double alpha_g = tire_defaults::alpha_g;  // rad
  double delta = tire_defaults::delta;      // rad
  double alpha_m = tire_defaults::alpha_m;  // rad
  double gamma_m = tire_defaults::gamma_m;
  double alpha_f = tire_defaults::alpha_f;  // rad
  double gamma_f = tire_defaults::gamma_f;

  double c_f_alpha = 20.0;  // side force derivative, 1/rad
  double c_m_alpha = -2.0;  // moment derivative, m/rad
  double f_z = 9000.0;      // vertical force, N
  double e = 0.1;           // caster length, m

  static TireModel piecewise();
  static TireModel smooth();

  double aligning_torque(double alpha) const;  // M_z, N*m
  double side_force(double alpha) const;       // F_y, N
  double ground_moment(double alpha) const;    // M_G = M_z - e*F_y, N*m

  // dM_G/dalpha, analytic. Kinks of the piecewise form take the closed
  // branch (|alpha| <= delta keeps the saturation slope, |alpha| <= alpha_g
  // keeps the sine branch).
  double ground_moment_slope(double alpha) const;
};

// sup over alpha of |d(M_G/i_z)/dalpha|. Closed form for the piecewise kind
// (the extremum candidates are alpha = 0, the saturation knee and the sine
// half-lobe); dense grid search over [-pi/2, pi/2] with step 1e-5 rad for
// the smooth kind.
double jacobian_bound(const TireModel& model, double i_z = 1.0);

// Grid-search reference for either kind, single threaded.
double jacobian_bound_serial(const TireModel& model, double i_z = 1.0);

// Signed extremes of dM_G/dalpha over [-alpha_box, alpha_box], grid step
// 1e-5 rad. Feeds the QUAD certificate sweep.
struct SlopeRange {
  double min = 0.0;
  double max = 0.0;
};
SlopeRange ground_moment_slope_range(const TireModel& model, double alpha_box);
SlopeRange ground_moment_slope_range_serial(const TireModel& model, double alpha_box);

}  // namespace nlg
