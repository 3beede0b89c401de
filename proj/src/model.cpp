#include "aoisim/model.hpp"

#include <cmath>
#include <stdexcept>

namespace aoisim {

bool SystemModel::iid_sensors() const {
  for (const auto& d : sensor_dists)
    if (!(d == sensor_dists.front())) return false;
  return true;
}

void SystemModel::validate() const {
  if (sensor_dists.empty()) throw std::invalid_argument("model: need at least one sensor");
}

SystemModel SystemModel::homogeneous(int n, const DistributionSpec& sensor,
                                     const DistributionSpec& monitor) {
  if (n < 1) throw std::invalid_argument("model: need at least one sensor");
  return SystemModel{std::vector<DistributionSpec>(static_cast<size_t>(n), sensor), monitor};
}

void apply_poll(AgeState& st, int sensor, double x) {
  if (sensor < 0 || sensor >= st.n()) throw std::invalid_argument("apply_poll: sensor out of range");
  if (!(x > 0) || !std::isfinite(x)) throw std::invalid_argument("apply_poll: x must be positive");
  st.t += x;
  for (double& a : st.age_mon) a += x;
  for (double& a : st.age_gw) a += x;
  st.age_gw[sensor] = x;
  ++st.polls_since_send;
}

void apply_send(AgeState& st, double x0) {
  if (!(x0 > 0) || !std::isfinite(x0)) throw std::invalid_argument("apply_send: x0 must be positive");
  st.t += x0;
  for (double& a : st.age_gw) a += x0;
  st.age_mon = st.age_gw;
  st.polls_since_send = 0;
}

}  // namespace aoisim
