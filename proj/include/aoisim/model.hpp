#pragma once

#include <vector>

#include "aoisim/distribution.hpp"

namespace aoisim {

// n sensors plus one gateway-to-monitor link, all sharing one medium: exactly
// one transmission is in flight at any time.
struct SystemModel {
  std::vector<DistributionSpec> sensor_dists;
  DistributionSpec monitor_dist;

  int n() const { return static_cast<int>(sensor_dists.size()); }
  bool iid_sensors() const;
  void validate() const;  // throws std::invalid_argument if n < 1

  static SystemModel homogeneous(int n, const DistributionSpec& sensor,
                                 const DistributionSpec& monitor);
};

// Paired gateway/monitor age vectors plus the poll count since the last
// gateway-to-monitor transmission. Both vectors grow at slope 1 between
// events; age_mon[i] >= age_gw[i] holds at all times.
struct AgeState {
  double t = 0.0;
  std::vector<double> age_gw;
  std::vector<double> age_mon;
  long polls_since_send = 0;

  explicit AgeState(int n) : age_gw(n, 0.0), age_mon(n, 0.0) {}
  int n() const { return static_cast<int>(age_gw.size()); }
};

struct Decision {
  int sensor;  // -1 means transmit to the monitor

  static Decision poll(int sensor) { return {sensor}; }
  static Decision send() { return {-1}; }
  bool is_send() const { return sensor < 0; }
  bool operator==(const Decision&) const = default;
};

// A poll of `sensor` completes after transmission time x: the clock and every
// age advance by x, then the polled sensor's gateway age becomes exactly x
// (the update's timestamp is the poll instant).
void apply_poll(AgeState& st, int sensor, double x);

// A gateway-to-monitor transmission completes after x0: the clock and every
// age advance by x0, then every monitor age is reset to the corresponding
// gateway age and the poll counter returns to zero.
void apply_send(AgeState& st, double x0);

}  // namespace aoisim
