#include "nlg/integrate.hpp"

namespace nlg {

std::vector<double> Trajectory::times() const {
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r.t);
  return out;
}

std::vector<double> Trajectory::state_component(int i) const {
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r.x[i]);
  return out;
}

std::vector<double> Trajectory::estimate_component(int i) const {
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r.x_hat[i]);
  return out;
}

std::vector<double> Trajectory::duty() const {
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r.d_c);
  return out;
}

}  // namespace nlg
