#pragma once

#include <string>
#include <vector>

#include "aoisim/model.hpp"
#include "aoisim/rng.hpp"

namespace aoisim {

// Sensor-selection rules for the fixed-s family. All ties break toward the
// lowest sensor index.
//   MaxAgeFirst   poll the sensor with the largest gateway age
//   MinChangeInAge poll argmin_i E[X_i] - age_gw[i]/n
//   RoundRobin    cycle through sensors in index order
//   RandomUniform uniform over sensors (consumes one draw per decision)
//   MinAgeFirst   poll the smallest gateway age (adversarial baseline)
enum class SelectionRule { MaxAgeFirst, MinChangeInAge, RoundRobin, RandomUniform, MinAgeFirst };

// Config names: maf | mca | rr | random | minage
SelectionRule parse_rule(const std::string& name);
std::string rule_name(SelectionRule rule);

struct PolicyConfig {
  int s = 1;  // send to the monitor after exactly s polls; 1 <= s <= n
  SelectionRule rule = SelectionRule::MaxAgeFirst;
};

// Per-replicate policy instance: owns the round-robin cursor and caches the
// exact sensor means the MCA score needs. Never shared across replicates.
class Policy {
 public:
  Policy(PolicyConfig cfg, const SystemModel& model);

  // SendToMonitor iff polls_since_send has reached s, otherwise a poll of the
  // sensor chosen by the rule. Only RandomUniform consumes from the stream.
  Decision decide(const AgeState& st, RngStream& rng);

  const PolicyConfig& config() const { return cfg_; }

 private:
  PolicyConfig cfg_;
  std::vector<double> sensor_means_;
  int rr_cursor_ = 0;
};

}  // namespace aoisim
