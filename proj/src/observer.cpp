#include "nlg/observer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

namespace nlg {

namespace {

Eigen::Matrix3d implied_q(const Eigen::Matrix3d& p, const Eigen::Matrix3d& a_cl) {
  const Eigen::Matrix3d pa = p * a_cl;
  return -(pa + pa.transpose());
}

double lambda_min(const Eigen::Matrix3d& m) {
  return Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d>(m).eigenvalues().minCoeff();
}

// Smallest rho satisfying condition (i) for this P. With f = [0, M_G/I_z, 0]
// the worst-pair margin reduces to the slope extremes q of M_G'/I_z:
//   rho*(P) = max over q in {min, max} of (p_2 q + |q| ||p||) / 2,  p = P e_2.
double rho_critical_from_range(const Eigen::Matrix3d& p, const SlopeRange& r,
                               double i_z) {
  const Eigen::Vector3d pcol = p.col(1);
  const double pn = pcol.norm();
  const double p2 = pcol[2];
  double rho = 0.0;
  for (double q : {r.min / i_z, r.max / i_z}) {
    rho = std::max(rho, 0.5 * (p2 * q + std::abs(q) * pn));
  }
  return rho;
}

double quad_margin_sampled_impl(const TireModel& model, double i_z,
                                const Eigen::Matrix3d& p, double rho,
                                const VerifyOptions& opts, bool parallel) {
  const int n = opts.quad_samples;
  double worst = -std::numeric_limits<double>::infinity();
  auto sample_margin = [&](int i) {
    std::mt19937_64 rng(opts.seed + static_cast<std::uint64_t>(i) * 0x9e3779b97f4a7c15ull);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    StateVec v1{u(rng) * opts.psi_box, u(rng) * opts.psi_dot_box, u(rng) * opts.alpha_box};
    StateVec v2{u(rng) * opts.psi_box, u(rng) * opts.psi_dot_box, u(rng) * opts.alpha_box};
    const StateVec d = v1 - v2;
    const double dd = d.squaredNorm();
    if (dd < 1e-16) return -rho;
    const double df = (model.ground_moment(v1[2]) - model.ground_moment(v2[2])) / i_z;
    const double lhs = df * d.dot(p.col(1));
    return lhs / dd - rho;
  };
  if (parallel) {
#pragma omp parallel for reduction(max : worst) schedule(static)
    for (int i = 0; i < n; ++i) worst = std::max(worst, sample_margin(i));
  } else {
    for (int i = 0; i < n; ++i) worst = std::max(worst, sample_margin(i));
  }
  return worst;
}

}  // namespace

ObserverCert reference_cert() {
  ObserverCert c;
  c.p << 0.6995, 0.0, -0.004,
      0.0, 0.001, 0.0,
      -0.004, 0.0, 3.0;
  c.l << 21.0, -141.0,
      0.12, 14705.0,
      267.0, -0.18;
  c.q = Eigen::Vector3d(29.437, 29.437, 1624.266).asDiagonal();
  c.rho = 27.8644;
  c.v_design = 80.0;
  return c;
}

StateVec observer_rhs(const PlantMatrices& pm, double i_z, const TireModel& model,
                      const Eigen::Matrix<double, 3, 2>& l, const StateVec& x_hat,
                      double u, const OutputVec& y) {
  StateVec dx = pm.a * x_hat + pm.b * u - l * (pm.c * x_hat - y);
  dx[1] += model.ground_moment(x_hat[2]) / i_z;
  return dx;
}

StateVec observer_derivative(const NlgParams& params, const TireModel& model,
                             const ObserverCert& cert, const StateVec& x_hat,
                             double u, const OutputVec& y) {
  return observer_rhs(build_matrices(params), params.i_z, model, cert.l, x_hat, u, y);
}

double quad_margin_sampled_serial(const TireModel& model, double i_z,
                                  const Eigen::Matrix3d& p, double rho,
                                  const VerifyOptions& opts) {
  return quad_margin_sampled_impl(model, i_z, p, rho, opts, false);
}

VerifyReport verify_cert(const NlgParams& params, const TireModel& model,
                         const ObserverCert& cert, const VerifyOptions& opts) {
  VerifyReport rep;
  const PlantMatrices pm = build_matrices(params.with_velocity(cert.v_design));
  const Eigen::Matrix3d a_cl = pm.a - cert.l * pm.c;

  const SlopeRange range = ground_moment_slope_range(model, opts.alpha_box);
  rep.rho_critical = rho_critical_from_range(cert.p, range, params.i_z);
  rep.quad_margin_sampled =
      quad_margin_sampled_impl(model, params.i_z, cert.p, cert.rho, opts, true);

  rep.q_implied = implied_q(cert.p, a_cl);
  rep.lambda_min_p = lambda_min(cert.p);
  rep.lambda_min_q_implied = lambda_min(rep.q_implied);
  rep.lambda_min_q_stored = lambda_min(cert.q);
  rep.lyap_residual = (rep.q_implied - cert.q).norm();

  rep.quad_ok = cert.rho >= rep.rho_critical - 1e-12 && rep.quad_margin_sampled <= 1e-9;
  rep.lyap_ok = rep.lambda_min_p > 0.0 && rep.lambda_min_q_implied > 0.0 &&
                cert.p.isApprox(cert.p.transpose(), 1e-12);
  rep.gap_ok = rep.lambda_min_q_implied > cert.rho;
  return rep;
}

void validate_cert(const NlgParams& params, const TireModel& model,
                   const ObserverCert& cert, const VerifyOptions& opts) {
  const VerifyReport rep = verify_cert(params, model, cert, opts);
  if (rep.ok()) return;
  std::ostringstream msg;
  msg << "observer certificate invalid:";
  if (!rep.quad_ok) {
    msg << " condition (i) QUAD fails (rho = " << cert.rho << " < critical "
        << rep.rho_critical << ", sampled margin " << rep.quad_margin_sampled << ");";
  }
  if (!rep.lyap_ok) {
    msg << " condition (ii) Lyapunov fails (lambda_min(P) = " << rep.lambda_min_p
        << ", lambda_min(Q) = " << rep.lambda_min_q_implied << ");";
  }
  if (!rep.gap_ok) {
    msg << " condition (iii) gap fails (lambda_min(Q) = " << rep.lambda_min_q_implied
        << " <= rho = " << cert.rho << ");";
  }
  throw CertificateError(msg.str());
}

namespace {

Eigen::Matrix3d project_spd(const Eigen::Matrix3d& p, double floor, double trace_target) {
  Eigen::Matrix3d sym = 0.5 * (p + p.transpose());
  for (int pass = 0; pass < 2; ++pass) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(sym);
    const Eigen::Vector3d ev = es.eigenvalues().cwiseMax(floor);
    sym = es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().transpose();
    sym *= trace_target / sym.trace();
    sym = 0.5 * (sym + sym.transpose());
    if (es.eigenvalues().minCoeff() >= floor) break;
  }
  return sym;
}

}  // namespace

ObserverCert synthesize_cert(const NlgParams& params, const TireModel& model,
                             const SynthesisConfig& cfg) {
  if (cfg.max_outer <= 0) {
    throw SynthesisError("observer synthesis: zero iteration budget");
  }
  const PlantMatrices pm = build_matrices(params.with_velocity(cfg.v_design));
  const SlopeRange range = ground_moment_slope_range(model, 1.0);

  Eigen::Matrix3d p = Eigen::Matrix3d::Identity();
  Eigen::Matrix<double, 3, 2> l = Eigen::Matrix<double, 3, 2>::Zero();

  auto lam_min_q = [&](const Eigen::Matrix3d& pp, const Eigen::Matrix<double, 3, 2>& ll,
                       Eigen::Vector3d* vec = nullptr) {
    const Eigen::Matrix3d a_cl = pm.a - ll * pm.c;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(implied_q(pp, a_cl));
    if (vec) *vec = es.eigenvectors().col(0);  // eigenvalues are sorted ascending
    return es.eigenvalues()[0];
  };
  auto rho_of = [&](const Eigen::Matrix3d& pp) {
    return rho_critical_from_range(pp, range, params.i_z);
  };

  double best_obj = std::numeric_limits<double>::infinity();
  ObserverCert best;
  bool feasible = false;

  for (int outer = 0; outer < cfg.max_outer; ++outer) {
    // (a) grow lambda_min(Q) over L by subgradient ascent (concave in L)
    // until it clears the gap target for the current P.
    const double target = std::max(cfg.feas_margin * cfg.feas_margin * rho_of(p), 1e-6);
    double step = 1.0 + l.norm();
    for (int it = 0; it < cfg.l_steps; ++it) {
      Eigen::Vector3d v;
      const double g0 = lam_min_q(p, l, &v);
      if (g0 >= target) break;
      const Eigen::Matrix<double, 3, 2> grad =
          2.0 * (p * v) * (pm.c * v).transpose() -
          cfg.l_penalty * l / std::max(l.norm(), 1e-12);
      bool advanced = false;
      for (int bt = 0; bt < 40; ++bt) {
        const Eigen::Matrix<double, 3, 2> cand = l + step * grad;
        if (lam_min_q(p, cand) > g0) {
          l = cand;
          step *= 1.5;
          advanced = true;
          break;
        }
        step *= 0.5;
      }
      if (!advanced) break;
    }

    // (b) shrink the swept QUAD constant over P by projected gradient.
    // While infeasible, accept any step that shrinks the violation
    // rho*(P) - lambda_min(Q); once feasible, insist on keeping the margin.
    double pstep = 0.25;
    for (int it = 0; it < cfg.p_steps; ++it) {
      const double rho0 = rho_of(p);
      if (rho0 <= 0.0) break;
      const double g0 = lam_min_q(p, l);
      const bool in_feasible_phase = g0 > cfg.feas_margin * rho0;
      const Eigen::Vector3d pcol = p.col(1);
      const double pn = std::max(pcol.norm(), 1e-12);
      double qact = range.min / params.i_z;
      if (0.5 * (pcol[2] * range.max / params.i_z +
                 std::abs(range.max / params.i_z) * pn) >= rho0 - 1e-15) {
        qact = range.max / params.i_z;
      }
      Eigen::Vector3d grad_col = std::abs(qact) * pcol / pn;
      grad_col[2] += qact;
      const double gn = std::max(grad_col.norm(), 1e-12);
      bool advanced = false;
      for (int bt = 0; bt < 30; ++bt) {
        Eigen::Matrix3d cand = p;
        cand.col(1) -= (pstep * pn / gn) * grad_col;
        cand.row(1) = cand.col(1).transpose();
        cand = project_spd(cand, cfg.p_floor, 3.0);
        const double rho_new = rho_of(cand);
        const double g_new = lam_min_q(cand, l);
        const bool accept = in_feasible_phase
                                ? (rho_new < rho0 && g_new > cfg.feas_margin * rho_new)
                                : (rho_new - g_new < rho0 - g0 - 1e-12);
        if (accept) {
          p = cand;
          pstep = std::min(pstep * 1.5, 0.9);
          advanced = true;
          break;
        }
        pstep *= 0.5;
      }
      if (!advanced) break;
    }

    const double rho = rho_of(p);
    const double gap = lam_min_q(p, l);
    if (gap > rho) {
      const double obj = rho + cfg.l_penalty * l.norm();
      if (obj < best_obj - cfg.tol) {
        best_obj = obj;
        best.p = p;
        best.l = l;
        best.rho = std::max(rho * 1.0001, 1e-12);
        best.v_design = cfg.v_design;
        best.q = implied_q(p, pm.a - l * pm.c);
        feasible = true;
      } else if (feasible) {
        break;  // improvement under tolerance
      }
    }
  }

  if (!feasible) {
    std::ostringstream msg;
    msg << "observer synthesis failed: best gap " << lam_min_q(p, l) << " vs rho "
        << rho_of(p) << " after " << cfg.max_outer << " rounds";
    throw SynthesisError(msg.str());
  }
  validate_cert(params, model, best);
  return best;
}

}  // namespace nlg
