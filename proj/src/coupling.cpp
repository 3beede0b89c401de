#include "aoisim/coupling.hpp"

#include <algorithm>
#include <stdexcept>

namespace aoisim {

namespace {

// Tag for the alternative policy's private selection stream.
constexpr std::uint64_t kSelectionStream = 0x73656C6563740000ULL;

}  // namespace

DominanceReport verify_dominance(const CoupledRun& run) {
  run.model.validate();
  if (!run.model.iid_sensors())
    throw std::invalid_argument("coupling: not applicable, sensors must be iid");
  if (run.s < 1 || run.s > run.model.n())
    throw std::invalid_argument("coupling: require 1 <= s <= n");
  if (run.decisions < 1) throw std::invalid_argument("coupling: need at least one decision");

  const int n = run.model.n();
  RngStream shared(run.seed);
  RngStream selection(RngStream::derive(run.seed, kSelectionStream));
  RngStream unused(0);  // max-age-first never consumes selection draws

  Policy maf_policy({run.s, SelectionRule::MaxAgeFirst}, run.model);
  Policy alt_policy({run.s, run.alt_rule}, run.model);
  AgeState maf(n), alt(n);

  std::vector<double> sorted_maf(n), sorted_alt(n);
  DominanceReport report;

  for (long j = 0; j < run.decisions; ++j) {
    const Decision dm = maf_policy.decide(maf, unused);
    const Decision da = alt_policy.decide(alt, selection);
    if (dm.is_send() != da.is_send())
      throw std::logic_error("coupling: slot pattern diverged despite fixed s");

    const bool send = dm.is_send();
    if (send) {
      const double x0 = run.model.monitor_dist.sample(shared);
      apply_send(maf, x0);
      apply_send(alt, x0);
    } else {
      const double x = run.model.sensor_dists.front().sample(shared);
      apply_poll(maf, dm.sensor, x);
      apply_poll(alt, da.sensor, x);
    }

    auto check = [&](const std::vector<double>& a, const std::vector<double>& b,
                     bool monitor_side) {
      sorted_maf = a;
      sorted_alt = b;
      std::sort(sorted_maf.begin(), sorted_maf.end());
      std::sort(sorted_alt.begin(), sorted_alt.end());
      for (int i = 0; i < n; ++i) {
        if (sorted_maf[i] > sorted_alt[i]) {
          report.holds = false;
          report.first_violation = Violation{j, i, sorted_maf[i], sorted_alt[i], monitor_side};
          return false;
        }
      }
      return true;
    };

    if (!check(maf.age_gw, alt.age_gw, false)) break;
    if (send && !check(maf.age_mon, alt.age_mon, true)) break;
    report.decisions_checked = j + 1;
  }

  report.final_age_gw_maf = maf.age_gw;
  report.final_age_gw_alt = alt.age_gw;
  return report;
}

std::vector<PolicyAoi> aoi_dominance_summary(const SystemModel& model, int s,
                                             const std::vector<SelectionRule>& rules,
                                             int replicates, const SimConfig& cfg) {
  std::vector<PolicyAoi> out;
  out.reserve(rules.size());
  for (const SelectionRule rule : rules) {
    const ReplicateSummary r = replicate(model, {s, rule}, cfg, replicates);
    out.push_back({rule, s, r.mean_aoi, r.std_aoi, r.ci_lo, r.ci_hi, r.replicates});
  }
  return out;
}

}  // namespace aoisim
