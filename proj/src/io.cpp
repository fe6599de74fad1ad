#include "nlg/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace nlg {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open output file: " + path);
  return out;
}

}  // namespace

void write_trajectory_csv(const std::string& path, const Trajectory& traj) {
  std::ofstream out = open_out(path);
  out << "t,psi,psi_dot,alpha,alpha_hat,psi_hat,psi_dot_hat,u,d_c,zeta,V\n";
  for (const auto& r : traj.rows) {
    out << fmt(r.t) << ',' << fmt(r.x[0]) << ',' << fmt(r.x[1]) << ',' << fmt(r.x[2])
        << ',' << fmt(r.x_hat[2]) << ',' << fmt(r.x_hat[0]) << ',' << fmt(r.x_hat[1])
        << ',' << fmt(r.u) << ',' << fmt(r.d_c) << ',' << fmt(r.zeta) << ','
        << fmt(r.v) << '\n';
  }
}

void write_bifurcation_csv(const std::string& path,
                           const std::vector<BifurcationPoint>& points) {
  std::ofstream out = open_out(path);
  out << "V,psi_min,psi_max,alpha_min,alpha_max,dominant_freq,diverged\n";
  for (const auto& p : points) {
    out << fmt(p.v) << ',' << fmt(p.psi_min) << ',' << fmt(p.psi_max) << ','
        << fmt(p.alpha_min) << ',' << fmt(p.alpha_max) << ',' << fmt(p.dominant_freq)
        << ',' << (p.diverged ? 1 : 0) << '\n';
  }
}

namespace {

template <typename Mat>
nlohmann::json matrix_rows(const Mat& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

template <typename Mat>
void matrix_from(const nlohmann::json& rows, Mat& m, const char* name) {
  if (!rows.is_array() || static_cast<Eigen::Index>(rows.size()) != m.rows()) {
    throw ConfigError(std::string("cert JSON: bad shape for ") + name);
  }
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    const auto& row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != m.cols()) {
      throw ConfigError(std::string("cert JSON: bad shape for ") + name);
    }
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      m(i, j) = row[static_cast<std::size_t>(j)].get<double>();
    }
  }
}

}  // namespace

std::string cert_to_json(const ObserverCert& cert) {
  nlohmann::json j;
  j["P"] = matrix_rows(cert.p);
  j["L"] = matrix_rows(cert.l);
  j["Q"] = matrix_rows(cert.q);
  j["rho"] = cert.rho;
  j["v_design"] = cert.v_design;
  return j.dump(2) + "\n";
}

ObserverCert cert_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("cert JSON parse failed: ") + e.what());
  }
  ObserverCert cert;
  try {
    matrix_from(j.at("P"), cert.p, "P");
    matrix_from(j.at("L"), cert.l, "L");
    matrix_from(j.at("Q"), cert.q, "Q");
    cert.rho = j.at("rho").get<double>();
    cert.v_design = j.at("v_design").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("cert JSON missing field: ") + e.what());
  }
  return cert;
}

void save_cert(const std::string& path, const ObserverCert& cert) {
  std::ofstream out = open_out(path);
  out << cert_to_json(cert);
}

ObserverCert load_cert(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("observer certificate file not found: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return cert_from_json(ss.str());
}

std::map<std::string, std::string> parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config file not found: " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(path + ":" + std::to_string(lineno) +
                        ": expected `key = value`");
    }
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key.empty()) {
      throw ConfigError(path + ":" + std::to_string(lineno) + ": empty key");
    }
    kv[key] = value;
  }
  return kv;
}

}  // namespace nlg
