#pragma once

#include <map>
#include <string>

#include "nlg/analysis.hpp"
#include "nlg/observer.hpp"
#include "nlg/simulate.hpp"

namespace nlg {

// Header: t,psi,psi_dot,alpha,alpha_hat,psi_hat,psi_dot_hat,u,d_c,zeta,V
// All angles stay in radians; values carry 17 significant digits.
void write_trajectory_csv(const std::string& path, const Trajectory& traj);

// Header: V,psi_min,psi_max,alpha_min,alpha_max,dominant_freq,diverged
void write_bifurcation_csv(const std::string& path,
                           const std::vector<BifurcationPoint>& points);

// Cert JSON carries P, L, Q row-major plus rho and v_design.
std::string cert_to_json(const ObserverCert& cert);
ObserverCert cert_from_json(const std::string& text);
void save_cert(const std::string& path, const ObserverCert& cert);
ObserverCert load_cert(const std::string& path);  // ConfigError when missing

// Flat `key = value` text; '#' starts a comment. Unknown keys are the
// caller's problem (apply_config rejects them).
std::map<std::string, std::string> parse_config_file(const std::string& path);

}  // namespace nlg
