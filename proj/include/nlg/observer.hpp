#pragma once

#include <cstdint>

#include "nlg/plant.hpp"

namespace nlg {

// Certificate for the output-injection observer
//   x_hat_dot = A x_hat + B u + f(x_hat) - L (C x_hat - y)
// valid at the velocity the A matrix was taken at. Conditions:
//   (i)   (v1-v2)^T P (f(v1)-f(v2)) <= rho |v1-v2|^2 on the operating box,
//   (ii)  P(A-LC) + (A-LC)^T P = -Q with P, Q symmetric positive definite,
//   (iii) lambda_min(Q) > rho.
struct ObserverCert {
  Eigen::Matrix3d p = Eigen::Matrix3d::Identity();
  Eigen::Matrix<double, 3, 2> l = Eigen::Matrix<double, 3, 2>::Zero();
  Eigen::Matrix3d q = Eigen::Matrix3d::Zero();
  double rho = 0.0;
  double v_design = 80.0;  // m/s
};

// The published reference design (valid at v_design = 80).
ObserverCert reference_cert();

// Observer state derivative; the disturbance never enters here.
StateVec observer_derivative(const NlgParams& params, const TireModel& model,
                             const ObserverCert& cert, const StateVec& x_hat,
                             double u, const OutputVec& y);

// Hot-path variant with prebuilt matrices.
StateVec observer_rhs(const PlantMatrices& pm, double i_z, const TireModel& model,
                      const Eigen::Matrix<double, 3, 2>& l, const StateVec& x_hat,
                      double u, const OutputVec& y);

struct VerifyOptions {
  int quad_samples = 20000;  // random pairs for the safety-net check
  double psi_box = 1.0;      // rad
  double psi_dot_box = 50.0; // rad/s
  double alpha_box = 1.0;    // rad
  std::uint64_t seed = 20240u;
};

struct VerifyReport {
  // Smallest rho for which condition (i) holds with this P, from the dense
  // slope sweep in alpha (f depends on alpha only).
  double rho_critical = 0.0;
  // Worst sampled value of [(v1-v2)^T P (f(v1)-f(v2)) - rho |v1-v2|^2] / |v1-v2|^2.
  double quad_margin_sampled = 0.0;
  double lyap_residual = 0.0;        // ||P A_cl + A_cl^T P + Q_stored||_F
  double lambda_min_p = 0.0;
  double lambda_min_q_implied = 0.0; // Q_implied = -(P A_cl + A_cl^T P)
  double lambda_min_q_stored = 0.0;
  Eigen::Matrix3d q_implied = Eigen::Matrix3d::Zero();
  bool quad_ok = false;   // (i)
  bool lyap_ok = false;   // (ii): P SPD and Q_implied SPD
  bool gap_ok = false;    // (iii): lambda_min(Q_implied) > rho

  bool ok() const { return quad_ok && lyap_ok && gap_ok; }
};

// Checks the three conditions at cert.v_design (params.v is ignored).
VerifyReport verify_cert(const NlgParams& params, const TireModel& model,
                         const ObserverCert& cert, const VerifyOptions& opts = {});

// Serial reference for the sampled QUAD margin.
double quad_margin_sampled_serial(const TireModel& model, double i_z,
                                  const Eigen::Matrix3d& p, double rho,
                                  const VerifyOptions& opts);

// Throws CertificateError naming the violated condition.
void validate_cert(const NlgParams& params, const TireModel& model,
                   const ObserverCert& cert, const VerifyOptions& opts = {});

struct SynthesisConfig {
  double v_design = 80.0;
  int max_outer = 40;        // alternating rounds; 0 fails immediately
  int l_steps = 80;          // subgradient ascent steps per round
  int p_steps = 25;          // projected gradient steps per round
  double tol = 1e-4;         // stop when the objective improves less than this
  double l_penalty = 1e-6;   // weight on ||L||_F added to rho in the objective
  double feas_margin = 1.3;  // require lambda_min(Q) >= feas_margin * rho
  double p_floor = 1e-4;     // eigenvalue floor keeping P well conditioned
  std::uint64_t seed = 99u;
};

// min rho over (P, L) subject to (i)-(iii), by alternating a subgradient
// ascent on lambda_min(Q) over L with a projected gradient descent on the
// swept QUAD constant over P. trace(P) is pinned to 3 (the problem is
// scale-invariant). Throws SynthesisError when no feasible certificate is
// found within the budget.
ObserverCert synthesize_cert(const NlgParams& params, const TireModel& model,
                             const SynthesisConfig& cfg = {});

}  // namespace nlg
