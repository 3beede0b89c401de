#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <variant>
#include <vector>

#include "aoisim/model.hpp"
#include "aoisim/policy.hpp"

namespace aoisim {

struct TimeHorizon {
  double t_max;  // stop once the clock reaches t_max
};

struct SendHorizon {
  long sends;  // stop after this many measured monitor deliveries
};

struct SimConfig {
  std::variant<SendHorizon, TimeHorizon> horizon = SendHorizon{1000};
  // Discarded before measurement; defaults to 10*n*(max sensor mean + monitor mean).
  std::optional<double> warmup;
  std::uint64_t seed = 1;
  bool record_trace = false;
};

enum class EventKind { Poll, Send };

struct EventRecord {
  double t_start = 0;
  double t_end = 0;
  EventKind kind = EventKind::Poll;
  int sensor = -1;  // -1 for Send
  double duration = 0;
};

struct ResetRecord {
  double t = 0;
  int sensor = 0;
  double new_age = 0;  // monitor age right after the reset (the T sample)
};

// Measurement opens at the first send completion at or after warmup and
// closes at the last send completion inside the horizon, so the window is
// bounded by reset instants. Each sensor's time-average is additionally taken
// over that sensor's own complete inter-reset cycles inside the window; a
// sensor that never completes a cycle (possible under degenerate rules that
// starve sensors) falls back to the whole-window average.
struct SimResult {
  std::vector<double> avg_age_per_sensor;
  double aoi = 0.0;  // arithmetic mean of avg_age_per_sensor

  std::vector<long> polls_per_sensor;  // polls completed inside the window
  long sends = 0;                      // measured send completions
  double measured_time = 0.0;          // window length

  // Renewal-cycle estimates. A "reset" of sensor i is a send that delivers a
  // freshly polled update from i; Y is the spacing between consecutive resets
  // and T the age of the update on delivery.
  std::vector<long> per_sensor_reset_count;
  std::vector<double> mean_y_per_sensor;  // 0 when no complete cycle
  std::vector<double> mean_t_per_sensor;  // 0 when no reset observed
  std::vector<double> sum_y, sum_y2, sum_y_tprev;  // per-cycle accumulators
  std::vector<long> cycle_count;

  std::vector<EventRecord> trace;    // populated when record_trace
  std::vector<ResetRecord> resets;   // populated when record_trace
};

double default_warmup(const SystemModel& model);

// Executes the policy on the model until the horizon is exhausted.
// Deterministic function of (model, policy, cfg). Throws std::runtime_error
// if the horizon is too short to contain one measured send.
SimResult run(const SystemModel& model, const PolicyConfig& policy, const SimConfig& cfg);

struct ReplicateSummary {
  double mean_aoi = 0;
  double std_aoi = 0;  // sample standard deviation; 0 when replicates == 1
  double ci_lo = 0, ci_hi = 0;  // mean +- 1.96 std/sqrt(R)
  int replicates = 0;
  std::vector<double> aoi;  // per replicate, ordered by replicate index
};

// R independent replicates; replicate r runs with seed derive(cfg.seed, r).
// Aggregation is by replicate index, independent of execution order.
ReplicateSummary replicate(const SystemModel& model, const PolicyConfig& policy,
                           const SimConfig& cfg, int replicates);

// Tab-separated event log: "t_start<TAB>t_end<TAB>kind<TAB>sensor<TAB>duration"
// lines plus "t<TAB>RESET<TAB>sensor<TAB>new_age" lines after each send.
void write_trace(std::ostream& os, const SimResult& result);

}  // namespace aoisim
