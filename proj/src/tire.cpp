#include "nlg/tire.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nlg {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kGridStep = 1e-5;  // rad

void require_finite(double alpha) {
  if (!std::isfinite(alpha)) {
    throw std::domain_error("tire model evaluated at non-finite slip angle");
  }
}

}  // namespace

TireModel TireModel::piecewise() { return TireModel{}; }

TireModel TireModel::smooth() {
  TireModel m;
  m.kind = TireKind::Smooth;
  return m;
}

double TireModel::aligning_torque(double alpha) const {
  require_finite(alpha);
  if (kind == TireKind::Piecewise) {
    if (std::abs(alpha) <= alpha_g) {
      return f_z * c_m_alpha * (alpha_g / kPi) * std::sin(kPi * alpha / alpha_g);
    }
    return 0.0;
  }
  return c_m_alpha * f_z * gamma_m * 2.0 * alpha * alpha_m /
         (alpha * alpha + alpha_m * alpha_m);
}

double TireModel::side_force(double alpha) const {
  require_finite(alpha);
  if (kind == TireKind::Piecewise) {
    return 0.5 * c_f_alpha * f_z *
           (std::abs(alpha + delta) - std::abs(alpha - delta));
  }
  return c_f_alpha * f_z * gamma_f * 2.0 * alpha * alpha_f /
         (alpha * alpha + alpha_f * alpha_f);
}

double TireModel::ground_moment(double alpha) const {
  return aligning_torque(alpha) - e * side_force(alpha);
}

double TireModel::ground_moment_slope(double alpha) const {
  require_finite(alpha);
  if (kind == TireKind::Piecewise) {
    const double m1 = f_z * c_m_alpha;
    const double m2 = e * c_f_alpha * f_z;
    const double a = std::abs(alpha);
    double s = 0.0;
    if (a <= alpha_g) s += m1 * std::cos(kPi * alpha / alpha_g);
    if (a <= delta) s -= m2;
    return s;
  }
  const double am2 = alpha_m * alpha_m;
  const double af2 = alpha_f * alpha_f;
  const double dm = c_m_alpha * f_z * gamma_m * 2.0 * alpha_m * (am2 - alpha * alpha) /
                    ((alpha * alpha + am2) * (alpha * alpha + am2));
  const double df = c_f_alpha * f_z * gamma_f * 2.0 * alpha_f * (af2 - alpha * alpha) /
                    ((alpha * alpha + af2) * (alpha * alpha + af2));
  return dm - e * df;
}

namespace {

double grid_sup_abs_slope(const TireModel& model, double i_z, bool parallel) {
  const long n = std::lround(kPi / kGridStep);  // covers [-pi/2, pi/2]
  double sup = 0.0;
  if (parallel) {
#pragma omp parallel for reduction(max : sup) schedule(static)
    for (long i = 0; i <= n; ++i) {
      const double alpha = -0.5 * kPi + static_cast<double>(i) * kGridStep;
      sup = std::max(sup, std::abs(model.ground_moment_slope(alpha)) / i_z);
    }
  } else {
    for (long i = 0; i <= n; ++i) {
      const double alpha = -0.5 * kPi + static_cast<double>(i) * kGridStep;
      sup = std::max(sup, std::abs(model.ground_moment_slope(alpha)) / i_z);
    }
  }
  return sup;
}

}  // namespace

double jacobian_bound(const TireModel& model, double i_z) {
  if (model.kind == TireKind::Piecewise) {
    const double m1 = model.f_z * model.c_m_alpha;
    const double m2 = model.e * model.c_f_alpha * model.f_z;
    // |m1*cos - m2| on [0, delta] is extremal at the endpoints; beyond the
    // knee only the sine branch survives, whose slope magnitude peaks at |m1|.
    const double at_zero = std::abs(m1 - m2);
    const double at_knee = std::abs(m1 * std::cos(kPi * model.delta / model.alpha_g) - m2);
    const double lobe = std::abs(m1);
    return std::max({at_zero, at_knee, lobe}) / i_z;
  }
  return grid_sup_abs_slope(model, i_z, true);
}

double jacobian_bound_serial(const TireModel& model, double i_z) {
  return grid_sup_abs_slope(model, i_z, false);
}

namespace {

SlopeRange grid_slope_range(const TireModel& model, double alpha_box, bool parallel) {
  const long n = std::lround(2.0 * alpha_box / kGridStep);
  double lo = model.ground_moment_slope(-alpha_box);
  double hi = lo;
  if (parallel) {
#pragma omp parallel for reduction(min : lo) reduction(max : hi) schedule(static)
    for (long i = 0; i <= n; ++i) {
      const double s =
          model.ground_moment_slope(-alpha_box + static_cast<double>(i) * kGridStep);
      lo = std::min(lo, s);
      hi = std::max(hi, s);
    }
  } else {
    for (long i = 0; i <= n; ++i) {
      const double s =
          model.ground_moment_slope(-alpha_box + static_cast<double>(i) * kGridStep);
      lo = std::min(lo, s);
      hi = std::max(hi, s);
    }
  }
  return {lo, hi};
}

}  // namespace

SlopeRange ground_moment_slope_range(const TireModel& model, double alpha_box) {
  return grid_slope_range(model, alpha_box, true);
}

SlopeRange ground_moment_slope_range_serial(const TireModel& model, double alpha_box) {
  return grid_slope_range(model, alpha_box, false);
}

}  // namespace nlg
