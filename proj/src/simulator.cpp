#include "aoisim/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace aoisim {

double default_warmup(const SystemModel& model) {
  double max_mean = 0;
  for (const auto& d : model.sensor_dists) max_mean = std::max(max_mean, d.mean());
  return 10.0 * model.n() * (max_mean + model.monitor_dist.mean());
}

namespace {

void validate(const SystemModel& model, const SimConfig& cfg, double warmup) {
  model.validate();
  if (const auto* th = std::get_if<TimeHorizon>(&cfg.horizon)) {
    if (!(th->t_max > 0)) throw std::invalid_argument("sim: time horizon must be positive");
    if (!(warmup < th->t_max))
      throw std::invalid_argument("sim: warmup must be below the time horizon");
  } else {
    if (std::get<SendHorizon>(cfg.horizon).sends < 1)
      throw std::invalid_argument("sim: send horizon must be at least 1");
  }
  if (warmup < 0) throw std::invalid_argument("sim: warmup must be nonnegative");
}

}  // namespace

SimResult run(const SystemModel& model, const PolicyConfig& pcfg, const SimConfig& cfg) {
  const double warmup = cfg.warmup.value_or(default_warmup(model));
  validate(model, cfg, warmup);
  const int n = model.n();

  RngStream rng(cfg.seed);
  Policy policy(pcfg, model);
  AgeState st(n);

  const bool by_time = std::holds_alternative<TimeHorizon>(cfg.horizon);
  const double t_max =
      by_time ? std::get<TimeHorizon>(cfg.horizon).t_max : std::numeric_limits<double>::infinity();
  const long send_budget =
      by_time ? std::numeric_limits<long>::max() : std::get<SendHorizon>(cfg.horizon).sends;

  SimResult res;
  res.avg_age_per_sensor.assign(n, 0.0);
  res.polls_per_sensor.assign(n, 0);
  res.per_sensor_reset_count.assign(n, 0);
  res.mean_y_per_sensor.assign(n, 0.0);
  res.mean_t_per_sensor.assign(n, 0.0);
  res.sum_y.assign(n, 0.0);
  res.sum_y2.assign(n, 0.0);
  res.sum_y_tprev.assign(n, 0.0);
  res.cycle_count.assign(n, 0);

  // Window bookkeeping. area[i] integrates sensor i's monitor-age sawtooth
  // from the window-opening send onward; each inter-event segment of length d
  // starting at age a contributes a*d + d*d/2. Cycle-aligned averages come
  // from area snapshots taken at the sensor's own resets.
  std::vector<char> polled_since_send(n, 0);
  std::vector<double> area(n, 0.0);
  std::vector<double> area_at_first(n, 0.0), area_at_last(n, 0.0), area_at_close(n, 0.0);
  std::vector<double> first_reset_t(n, 0.0), last_reset_t(n, 0.0);
  std::vector<double> t_prev(n, 0.0);  // T sample opening the in-progress cycle
  std::vector<char> active(n, 0);
  std::vector<double> sum_t(n, 0.0);
  std::vector<long> polls_run(n, 0), polls_at_close(n, 0);

  bool window_open = false;
  double window_open_t = 0.0, window_close_t = 0.0;
  long sends_measured = 0;

  while (st.t < t_max) {
    const Decision d = policy.decide(st, rng);
    const double t0 = st.t;

    if (d.is_send()) {
      const double x0 = model.monitor_dist.sample(rng);
      if (window_open)
        for (int i = 0; i < n; ++i) area[i] += st.age_mon[i] * x0 + 0.5 * x0 * x0;
      apply_send(st, x0);
      if (cfg.record_trace) res.trace.push_back({t0, st.t, EventKind::Send, -1, x0});

      const double tc = st.t;
      const bool counted = !by_time || tc <= t_max;
      if (!window_open) {
        if (counted && tc >= warmup) {
          window_open = true;
          window_open_t = tc;
          std::fill(area.begin(), area.end(), 0.0);
          // Sensors delivered fresh at this send start their first cycle here.
          for (int i = 0; i < n; ++i) {
            if (!polled_since_send[i]) continue;
            active[i] = 1;
            first_reset_t[i] = last_reset_t[i] = tc;
            area_at_first[i] = area_at_last[i] = 0.0;
            t_prev[i] = st.age_mon[i];
            sum_t[i] += st.age_mon[i];
            ++res.per_sensor_reset_count[i];
            if (cfg.record_trace) res.resets.push_back({tc, i, st.age_mon[i]});
          }
        }
      } else if (counted) {
        ++sends_measured;
        window_close_t = tc;
        area_at_close = area;
        polls_at_close = polls_run;
        for (int i = 0; i < n; ++i) {
          if (!polled_since_send[i]) continue;
          const double t_new = st.age_mon[i];
          if (active[i]) {
            const double y = tc - last_reset_t[i];
            res.sum_y[i] += y;
            res.sum_y2[i] += y * y;
            res.sum_y_tprev[i] += y * t_prev[i];
            ++res.cycle_count[i];
            last_reset_t[i] = tc;
            area_at_last[i] = area[i];
          } else {
            active[i] = 1;
            first_reset_t[i] = last_reset_t[i] = tc;
            area_at_first[i] = area_at_last[i] = area[i];
          }
          t_prev[i] = t_new;
          sum_t[i] += t_new;
          ++res.per_sensor_reset_count[i];
          if (cfg.record_trace) res.resets.push_back({tc, i, t_new});
        }
        if (sends_measured >= send_budget) break;
      }
      std::fill(polled_since_send.begin(), polled_since_send.end(), 0);
    } else {
      const double x = model.sensor_dists[d.sensor].sample(rng);
      if (window_open)
        for (int i = 0; i < n; ++i) area[i] += st.age_mon[i] * x + 0.5 * x * x;
      apply_poll(st, d.sensor, x);
      polled_since_send[d.sensor] = 1;
      if (window_open) ++polls_run[d.sensor];
      if (cfg.record_trace) res.trace.push_back({t0, st.t, EventKind::Poll, d.sensor, x});
    }
  }

  if (!window_open || sends_measured == 0)
    throw std::runtime_error("sim: horizon too short to contain one measured send "
                             "(increase the horizon or reduce warmup)");

  res.sends = sends_measured;
  res.measured_time = window_close_t - window_open_t;
  res.polls_per_sensor = polls_at_close;
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    if (res.cycle_count[i] > 0) {
      res.avg_age_per_sensor[i] =
          (area_at_last[i] - area_at_first[i]) / (last_reset_t[i] - first_reset_t[i]);
      res.mean_y_per_sensor[i] = res.sum_y[i] / static_cast<double>(res.cycle_count[i]);
    } else {
      // Starved sensor: no complete cycle inside the window.
      res.avg_age_per_sensor[i] = area_at_close[i] / res.measured_time;
    }
    if (res.per_sensor_reset_count[i] > 0)
      res.mean_t_per_sensor[i] = sum_t[i] / static_cast<double>(res.per_sensor_reset_count[i]);
    total += res.avg_age_per_sensor[i];
  }
  res.aoi = total / n;
  return res;
}

ReplicateSummary replicate(const SystemModel& model, const PolicyConfig& policy,
                           const SimConfig& cfg, int replicates) {
  if (replicates < 1) throw std::invalid_argument("replicate: need at least one replicate");

  std::vector<double> aoi(replicates, 0.0);
  std::vector<std::exception_ptr> errors(replicates);

  auto run_range = [&](int begin, int stride) {
    for (int r = begin; r < replicates; r += stride) {
      try {
        SimConfig rc = cfg;
        rc.seed = RngStream::derive(cfg.seed, static_cast<std::uint64_t>(r));
        rc.record_trace = false;
        aoi[r] = run(model, policy, rc).aoi;
      } catch (...) {
        errors[r] = std::current_exception();
      }
    }
  };

  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const int workers = static_cast<int>(std::min<unsigned>(hw, replicates));
  if (workers <= 1) {
    run_range(0, 1);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(run_range, w, workers);
    for (auto& th : pool) th.join();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  ReplicateSummary s;
  s.replicates = replicates;
  s.aoi = aoi;
  s.mean_aoi = std::accumulate(aoi.begin(), aoi.end(), 0.0) / replicates;
  if (replicates > 1) {
    double ss = 0.0;
    for (double v : aoi) ss += (v - s.mean_aoi) * (v - s.mean_aoi);
    s.std_aoi = std::sqrt(ss / (replicates - 1));
  }
  const double half = 1.96 * s.std_aoi / std::sqrt(static_cast<double>(replicates));
  s.ci_lo = s.mean_aoi - half;
  s.ci_hi = s.mean_aoi + half;
  return s;
}

void write_trace(std::ostream& os, const SimResult& result) {
  char buf[256];
  size_t next_reset = 0;
  for (const auto& ev : result.trace) {
    const bool send = ev.kind == EventKind::Send;
    std::snprintf(buf, sizeof(buf), "%.17g\t%.17g\t%s\t%d\t%.17g\n", ev.t_start, ev.t_end,
                  send ? "SEND" : "POLL", ev.sensor, ev.duration);
    os << buf;
    if (send) {
      while (next_reset < result.resets.size() && result.resets[next_reset].t == ev.t_end) {
        const auto& rr = result.resets[next_reset++];
        std::snprintf(buf, sizeof(buf), "%.17g\tRESET\t%d\t%.17g\n", rr.t, rr.sensor, rr.new_age);
        os << buf;
      }
    }
  }
}

}  // namespace aoisim
