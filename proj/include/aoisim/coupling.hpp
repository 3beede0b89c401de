#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "aoisim/model.hpp"
#include "aoisim/policy.hpp"
#include "aoisim/simulator.hpp"

namespace aoisim {

// A coupled pair of trajectories: max-age-first against an alternative rule,
// both inside the fixed-s family, advanced on one shared sequence of
// transmission-time draws. Requires iid sensors; the fixed s forces both
// policies through the same poll/send slot pattern, so slot j's draw is valid
// for whichever sensor either policy polls.
struct CoupledRun {
  SystemModel model;
  int s = 1;
  SelectionRule alt_rule = SelectionRule::RandomUniform;
  long decisions = 100000;
  std::uint64_t seed = 1;
};

struct Violation {
  long decision_index = 0;
  int position = 0;  // index into the ascending-sorted age vectors
  double maf_value = 0;
  double alt_value = 0;
  bool monitor_side = false;  // violation seen in the monitor-age vectors
};

struct DominanceReport {
  bool holds = true;
  std::optional<Violation> first_violation;
  long decisions_checked = 0;
  // Final raw (unsorted) gateway age vectors, for replay checks.
  std::vector<double> final_age_gw_maf;
  std::vector<double> final_age_gw_alt;
};

// Advances both policies decision by decision on the shared draws and checks,
// after every decision completion, that the ascending-sorted MAF gateway ages
// are elementwise <= the alternative's; at send completions the monitor-age
// vectors are checked as well. Stops at the first violation. The alternative
// rule's own selection randomness (RandomUniform) comes from a separate
// derived stream so it cannot perturb the shared draw sequence.
DominanceReport verify_dominance(const CoupledRun& run);

struct PolicyAoi {
  SelectionRule rule;
  int s = 1;
  double mean_aoi = 0, std_aoi = 0, ci_lo = 0, ci_hi = 0;
  int replicates = 0;
};

// Uncoupled long-run AoI comparison of several rules at one threshold, all
// with the same base seed and run controls.
std::vector<PolicyAoi> aoi_dominance_summary(const SystemModel& model, int s,
                                             const std::vector<SelectionRule>& rules,
                                             int replicates, const SimConfig& cfg);

}  // namespace aoisim
