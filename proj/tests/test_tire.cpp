#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "nlg/tire.hpp"

using namespace nlg;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("aligning torque examples") {
  const TireModel pw = TireModel::piecewise();
  const TireModel sm = TireModel::smooth();

  CHECK(pw.aligning_torque(0.0) == 0.0);
  CHECK(std::abs(pw.aligning_torque(pw.alpha_g)) < 1e-11);  // sin(pi) boundary
  CHECK(pw.aligning_torque(2.0 * pw.alpha_g) == 0.0);

  // peak of the rational form: value at alpha_m is c_m_alpha*f_z*gamma_m
  CHECK(sm.aligning_torque(sm.alpha_m) ==
        doctest::Approx(-1000.0).epsilon(1e-12));
  // both approximations peak at the same magnitude
  const double pw_peak = std::abs(pw.aligning_torque(0.5 * pw.alpha_g));
  CHECK(pw_peak == doctest::Approx(1000.0).epsilon(1e-3));
}

TEST_CASE("side force examples") {
  const TireModel pw = TireModel::piecewise();
  const TireModel sm = TireModel::smooth();

  CHECK(pw.side_force(0.0) == 0.0);
  const double sat = 0.5 * pw.c_f_alpha * pw.f_z * 2.0 * pw.delta;
  CHECK(pw.side_force(pw.delta) == doctest::Approx(sat).epsilon(1e-14));
  CHECK(pw.side_force(pw.delta) == doctest::Approx(15707.963267948966).epsilon(1e-12));

  CHECK(sm.side_force(sm.alpha_f) == doctest::Approx(15300.0).epsilon(1e-12));
}

TEST_CASE("ground moment composes the two curves") {
  const TireModel pw = TireModel::piecewise();
  const TireModel sm = TireModel::smooth();

  CHECK(pw.ground_moment(0.0) == 0.0);
  // beyond alpha_g the torque lobe is gone and the side force is saturated
  CHECK(pw.ground_moment(2.0 * pw.alpha_g) ==
        doctest::Approx(-1570.7963267948966).epsilon(1e-12));
  CHECK(sm.ground_moment(sm.alpha_m) ==
        doctest::Approx(sm.aligning_torque(sm.alpha_m) -
                        sm.e * sm.side_force(sm.alpha_m)));
}

TEST_CASE("non-finite slip angle is a domain error") {
  const TireModel pw = TireModel::piecewise();
  CHECK_THROWS_AS(pw.aligning_torque(std::nan("")), std::domain_error);
  CHECK_THROWS_AS(pw.side_force(std::numeric_limits<double>::infinity()),
                  std::domain_error);
  CHECK_THROWS_AS(pw.ground_moment_slope(std::nan("")), std::domain_error);
}

TEST_CASE("oddness over random angles") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  for (const TireModel& m : {TireModel::piecewise(), TireModel::smooth()}) {
    for (int i = 0; i < 1000; ++i) {
      const double a = u(rng);
      CHECK(std::abs(m.aligning_torque(-a) + m.aligning_torque(a)) < 1e-9);
      CHECK(std::abs(m.side_force(-a) + m.side_force(a)) < 1e-9);
    }
  }
}

TEST_CASE("piecewise continuity at the lobe edge") {
  const TireModel pw = TireModel::piecewise();
  const double m1 = std::abs(pw.f_z * pw.c_m_alpha);
  double prev = 1e30;
  for (double eps : {1e-3, 1e-6}) {
    const double v = std::abs(pw.aligning_torque(pw.alpha_g - eps));
    CHECK(v <= 1.01 * m1 * eps);  // slope-bounded approach to zero
    CHECK(v < prev);
    prev = v;
  }
}

TEST_CASE("piecewise side force saturates past the knee") {
  const TireModel pw = TireModel::piecewise();
  const double sat = pw.side_force(pw.delta);
  for (double a : {pw.delta, 0.1, 0.15, 0.3, 1.0}) {
    CHECK(pw.side_force(a) == doctest::Approx(sat).epsilon(1e-12));
  }
}

TEST_CASE("analytic slope matches central differences away from kinks") {
  const double h = 1e-7;
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-0.3, 0.3);
  for (const TireModel& m : {TireModel::piecewise(), TireModel::smooth()}) {
    int checked = 0;
    for (int i = 0; i < 400; ++i) {
      const double a = u(rng);
      if (m.kind == TireKind::Piecewise) {
        const double da = std::abs(a);
        if (std::abs(da - m.delta) < 1e-6 || std::abs(da - m.alpha_g) < 1e-6) continue;
      }
      const double fd = (m.ground_moment(a + h) - m.ground_moment(a - h)) / (2.0 * h);
      const double an = m.ground_moment_slope(a);
      if (std::abs(an) < 1.0) continue;  // relative comparison needs scale
      CHECK(std::abs(fd - an) <= 1e-4 * std::abs(an));
      ++checked;
    }
    CHECK(checked > 300);
  }
}

TEST_CASE("jacobian bound, piecewise closed form") {
  CHECK(jacobian_bound(TireModel::piecewise()) == 36000.0);

  TireModel unloaded = TireModel::piecewise();
  unloaded.f_z = 0.0;
  CHECK(jacobian_bound(unloaded) == 0.0);

  // i_z scales the bound
  CHECK(jacobian_bound(TireModel::piecewise(), 2.0) == 18000.0);
}

TEST_CASE("jacobian bound, smooth grid search vs independent oracle") {
  const TireModel sm = TireModel::smooth();
  const double bound = jacobian_bound(sm);

  // brute-force oracle: central differences of M_G on a coarse grid
  double sup_fd = 0.0;
  const double h = 1e-7;
  for (double a = -0.5 * kPi + 1e-3; a < 0.5 * kPi - 1e-3; a += 1e-4) {
    const double fd = (sm.ground_moment(a + h) - sm.ground_moment(a - h)) / (2.0 * h);
    sup_fd = std::max(sup_fd, std::abs(fd));
  }
  CHECK(sup_fd <= bound * (1.0 + 1e-9));
  CHECK(bound == doctest::Approx(sup_fd).epsilon(1e-4));

  // the extremum sits at the origin: |M_z'(0) - e F_y'(0)| = 138360/pi
  CHECK(bound == doctest::Approx(138360.0 / kPi).epsilon(1e-6));
}

TEST_CASE("grid sup never exceeds the analytic bound, tight for piecewise") {
  const TireModel pw = TireModel::piecewise();
  const double grid = jacobian_bound_serial(pw);
  const double exact = jacobian_bound(pw);
  CHECK(grid <= exact);
  CHECK(grid == doctest::Approx(exact).epsilon(1e-6));
}

TEST_CASE("slope range brackets the bound") {
  for (const TireModel& m : {TireModel::piecewise(), TireModel::smooth()}) {
    const SlopeRange r = ground_moment_slope_range(m, 1.0);
    CHECK(r.min < 0.0);
    CHECK(r.max > 0.0);
    CHECK(std::max(std::abs(r.min), std::abs(r.max)) <=
          jacobian_bound(m) * (1.0 + 1e-9));
  }
}
