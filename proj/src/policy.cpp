#include "aoisim/policy.hpp"

#include <stdexcept>

namespace aoisim {

SelectionRule parse_rule(const std::string& name) {
  if (name == "maf") return SelectionRule::MaxAgeFirst;
  if (name == "mca") return SelectionRule::MinChangeInAge;
  if (name == "rr") return SelectionRule::RoundRobin;
  if (name == "random") return SelectionRule::RandomUniform;
  if (name == "minage") return SelectionRule::MinAgeFirst;
  throw std::invalid_argument("unknown rule '" + name + "' (expected maf|mca|rr|random|minage)");
}

std::string rule_name(SelectionRule rule) {
  switch (rule) {
    case SelectionRule::MaxAgeFirst: return "maf";
    case SelectionRule::MinChangeInAge: return "mca";
    case SelectionRule::RoundRobin: return "rr";
    case SelectionRule::RandomUniform: return "random";
    case SelectionRule::MinAgeFirst: return "minage";
  }
  return "?";
}

Policy::Policy(PolicyConfig cfg, const SystemModel& model) : cfg_(cfg) {
  model.validate();
  if (cfg_.s < 1 || cfg_.s > model.n())
    throw std::invalid_argument("policy: require 1 <= s <= n, got s=" + std::to_string(cfg_.s) +
                                " with n=" + std::to_string(model.n()));
  sensor_means_.reserve(model.sensor_dists.size());
  for (const auto& d : model.sensor_dists) sensor_means_.push_back(d.mean());
}

Decision Policy::decide(const AgeState& st, RngStream& rng) {
  const int n = static_cast<int>(sensor_means_.size());
  if (st.n() != n) throw std::invalid_argument("policy: state/model size mismatch");
  if (st.polls_since_send >= cfg_.s) return Decision::send();

  switch (cfg_.rule) {
    case SelectionRule::MaxAgeFirst: {
      int best = 0;
      for (int i = 1; i < n; ++i)
        if (st.age_gw[i] > st.age_gw[best]) best = i;
      return Decision::poll(best);
    }
    case SelectionRule::MinChangeInAge: {
      // argmin_i E[X_i] - age_gw[i]/n; equals MaxAgeFirst when means are equal.
      int best = 0;
      double best_score = sensor_means_[0] - st.age_gw[0] / n;
      for (int i = 1; i < n; ++i) {
        const double score = sensor_means_[i] - st.age_gw[i] / n;
        if (score < best_score) {
          best = i;
          best_score = score;
        }
      }
      return Decision::poll(best);
    }
    case SelectionRule::RoundRobin: {
      const int pick = rr_cursor_;
      rr_cursor_ = (rr_cursor_ + 1) % n;
      return Decision::poll(pick);
    }
    case SelectionRule::RandomUniform: return Decision::poll(rng.next_index(n));
    case SelectionRule::MinAgeFirst: {
      int best = 0;
      for (int i = 1; i < n; ++i)
        if (st.age_gw[i] < st.age_gw[best]) best = i;
      return Decision::poll(best);
    }
  }
  throw std::logic_error("unreachable rule");
}

}  // namespace aoisim
