#include "nlg/plant.hpp"

namespace nlg {

TireModel NlgParams::tire(TireKind kind) const {
  TireModel m = kind == TireKind::Piecewise ? TireModel::piecewise() : TireModel::smooth();
  m.c_f_alpha = c_f_alpha;
  m.c_m_alpha = c_m_alpha;
  m.f_z = f_z;
  m.e = e;
  return m;
}

double strut_moment(const NlgParams& p, double psi, double psi_dot) {
  return p.c * psi + p.k * psi_dot;
}

PlantMatrices build_matrices(const NlgParams& p) {
  if (!(p.v >= NlgParams::v_min)) throw SingularVelocityError(p.v);
  PlantMatrices pm;
  pm.a << 0.0, 1.0, 0.0,
      p.c / p.i_z, p.k / p.i_z + p.kappa / (p.i_z * p.v), 0.0,
      p.v / p.sigma, (p.e - p.a) / p.sigma, -p.v / p.sigma;
  pm.b << 0.0, 1.0 / p.i_z, 0.0;
  pm.c << 1.0, 0.0, 0.0,
      0.0, 1.0, 0.0;
  return pm;
}

StateVec vector_field(const PlantMatrices& pm, double i_z, const TireModel& tire,
                      const StateVec& x, double u, double zeta) {
  StateVec dx = pm.a * x + pm.b * (u + zeta);
  dx[1] += tire.ground_moment(x[2]) / i_z;
  return dx;
}

StateVec vector_field(const NlgParams& p, const TireModel& tire, const StateVec& x,
                      double u, double zeta) {
  return vector_field(build_matrices(p), p.i_z, tire, x, u, zeta);
}

}  // namespace nlg
