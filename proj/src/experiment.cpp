#include "aoisim/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "aoisim/analytics.hpp"

namespace aoisim {

namespace {

// Stream tag for heterogeneous sensor-mean generation.
constexpr std::uint64_t kModelStream = 0x6D6F64656C000000ULL;

double avg_sensor_mean(const SystemModel& m) {
  double s = 0;
  for (const auto& d : m.sensor_dists) s += d.mean();
  return s / m.n();
}

double avg_sensor_variance(const SystemModel& m) {
  double s = 0;
  for (const auto& d : m.sensor_dists) s += d.variance();
  return s / m.n();
}

double display_eta1(const SystemModel& m) { return m.monitor_dist.mean() / avg_sensor_mean(m); }

double display_eta2(const SystemModel& m) {
  const double v = avg_sensor_variance(m);
  return v > 0 ? m.monitor_dist.variance() / v : std::nan("");
}

std::string u64_str(std::uint64_t v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%llu", static_cast<unsigned long long>(v));
  return buf;
}

int resolve_s(const SChoice& choice, const SystemModel& model) {
  const int n = model.n();
  switch (choice.mode) {
    case SChoice::Fixed:
      if (choice.value < 1 || choice.value > n)
        throw ConfigError("s = " + std::to_string(choice.value) + " is outside [1, n] with n = " +
                          std::to_string(n));
      return choice.value;
    case SChoice::Max: return n;
    case SChoice::Auto: return s_hat(n, display_eta1(model));
    case SChoice::Opt: {
      if (!model.iid_sensors())
        throw ConfigError("s = opt needs the exact closed form, which requires iid sensors; "
                          "use s = auto for heterogeneous models");
      const auto& sensor = model.sensor_dists.front();
      return s_star(n, sensor.mean(), sensor.variance(), model.monitor_dist.mean(),
                    model.monitor_dist.variance());
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace

std::string csv_number(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

ExperimentKind parse_experiment_kind(const std::string& name) {
  if (name == "simulate") return ExperimentKind::Simulate;
  if (name == "analyze") return ExperimentKind::Analyze;
  if (name == "sweep-s") return ExperimentKind::SweepS;
  if (name == "sweep-n") return ExperimentKind::SweepN;
  if (name == "compare-policies") return ExperimentKind::ComparePolicies;
  if (name == "verify-coupling") return ExperimentKind::VerifyCoupling;
  throw ConfigError("unknown experiment '" + name + "'");
}

std::string experiment_kind_name(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::Simulate: return "simulate";
    case ExperimentKind::Analyze: return "analyze";
    case ExperimentKind::SweepS: return "sweep-s";
    case ExperimentKind::SweepN: return "sweep-n";
    case ExperimentKind::ComparePolicies: return "compare-policies";
    case ExperimentKind::VerifyCoupling: return "verify-coupling";
  }
  return "?";
}

SChoice SChoice::parse(const std::string& text) {
  if (text == "auto") return {Auto, 0};
  if (text == "opt") return {Opt, 0};
  if (text == "max") return {Max, 0};
  char* end = nullptr;
  const long v = std::strtol(text.c_str(), &end, 10);
  if (end == text.c_str() || *end != '\0' || v < 1)
    throw ConfigError("s = '" + text + "' is not a positive integer or auto|opt|max");
  return {Fixed, static_cast<int>(v)};
}

std::string SChoice::to_string() const {
  switch (mode) {
    case Fixed: return std::to_string(value);
    case Auto: return "auto";
    case Opt: return "opt";
    case Max: return "max";
  }
  return "?";
}

SystemModel ModelDescription::build(std::uint64_t experiment_seed) const {
  std::vector<DistributionSpec> sensors;
  sensors.reserve(static_cast<size_t>(n));
  if (heterogeneous()) {
    RngStream means(RngStream::derive(experiment_seed, kModelStream));
    for (int i = 0; i < n; ++i) {
      const double m = means.next_uniform(hetero_mean_lo, hetero_mean_hi);
      if (*hetero_family == DistKind::Exponential) {
        sensors.push_back(DistributionSpec::exponential(m));
      } else {
        sensors.push_back(fit_hyperexponential(m, hetero_cv2 * m * m));
      }
    }
  } else {
    if (!sensor_dist) throw ConfigError("model: sensor_dist missing");
    sensors.assign(static_cast<size_t>(n), *sensor_dist);
  }

  DistributionSpec monitor = [&] {
    if (monitor_dist) return *monitor_dist;
    if (!monitor_family)
      throw ConfigError("model: need monitor_dist or monitor_family with eta1");
    double mean_sum = 0, var_sum = 0;
    for (const auto& d : sensors) {
      mean_sum += d.mean();
      var_sum += d.variance();
    }
    const double target_mean = eta1 * mean_sum / n;
    double target_var = -1.0;  // family-implied (det, exp)
    if (*monitor_family == DistKind::Uniform || *monitor_family == DistKind::TruncatedGaussian ||
        *monitor_family == DistKind::Hyperexponential) {
      if (!eta2)
        throw ConfigError("model: monitor_family " + dist_kind_name(*monitor_family) +
                          " needs eta2 to fix its variance");
      target_var = *eta2 * var_sum / n;
    }
    return dist_from_moments(*monitor_family, target_mean, target_var);
  }();

  return SystemModel{std::move(sensors), std::move(monitor)};
}

ModelDescription ModelDescription::with_eta1(double value) const {
  ModelDescription d = *this;
  d.eta1 = value;
  return d;
}

ModelDescription ModelDescription::with_n(int value) const {
  ModelDescription d = *this;
  d.n = value;
  return d;
}

SimConfig RunControls::sim_config(int s) const {
  SimConfig cfg;
  cfg.seed = seed;
  cfg.warmup = warmup;
  switch (horizon_kind) {
    case Polls: {
      const long sends = std::max(1L, static_cast<long>(std::ceil(horizon_value / s)));
      cfg.horizon = SendHorizon{sends};
      break;
    }
    case Sends: cfg.horizon = SendHorizon{static_cast<long>(horizon_value)}; break;
    case Time: cfg.horizon = TimeHorizon{horizon_value}; break;
  }
  return cfg;
}

namespace {

ModelDescription load_model(const ConfigFile& f, bool allow_n_values) {
  ModelDescription d;
  if (auto n = f.get_long("model", "n")) {
    if (*n < 1) throw ConfigError("model: n must be at least 1");
    d.n = static_cast<int>(*n);
  } else if (!allow_n_values) {
    throw ConfigError(f.name() + ": missing required key 'n' in [model]");
  }

  const auto sensor = f.get("model", "sensor_dist");
  const auto family = f.get("model", "sensor_family");
  if (sensor && family)
    throw ConfigError("model: give either sensor_dist (homogeneous) or sensor_family "
                      "(heterogeneous), not both");
  if (sensor) {
    d.sensor_dist = parse_distribution(*sensor);
  } else if (family) {
    d.hetero_family = parse_dist_kind(*family);
    if (*d.hetero_family != DistKind::Exponential &&
        *d.hetero_family != DistKind::Hyperexponential)
      throw ConfigError("model: sensor_family must be exp or hyperexp");
    auto lo = f.get_double("model", "sensor_mean_lo");
    auto hi = f.get_double("model", "sensor_mean_hi");
    if (!lo || !hi) throw ConfigError("model: sensor_family needs sensor_mean_lo/sensor_mean_hi");
    if (!(*lo >= 0) || !(*hi > *lo))
      throw ConfigError("model: need 0 <= sensor_mean_lo < sensor_mean_hi");
    d.hetero_mean_lo = *lo;
    d.hetero_mean_hi = *hi;
    if (*d.hetero_family == DistKind::Hyperexponential) {
      auto cv2 = f.get_double("model", "sensor_cv2");
      if (!cv2 || !(*cv2 > 1))
        throw ConfigError("model: heterogeneous hyperexp needs sensor_cv2 > 1");
      d.hetero_cv2 = *cv2;
    }
  } else {
    throw ConfigError("model: need sensor_dist or sensor_family");
  }

  const auto monitor = f.get("model", "monitor_dist");
  const auto mon_family = f.get("model", "monitor_family");
  if (monitor && mon_family)
    throw ConfigError("model: give either monitor_dist or monitor_family, not both");
  if (monitor) {
    d.monitor_dist = parse_distribution(*monitor);
    if (f.has("model", "eta1") || f.has("model", "eta2") || f.has("model", "eta1_values"))
      throw ConfigError("model: eta1/eta2 scaling conflicts with an explicit monitor_dist");
  } else if (mon_family) {
    d.monitor_family = parse_dist_kind(*mon_family);
    if (auto e1 = f.get_double("model", "eta1")) {
      if (!(*e1 > 0)) throw ConfigError("model: eta1 must be positive");
      d.eta1 = *e1;
    }
    d.eta2 = f.get_double("model", "eta2");
    if (d.eta2 && !(*d.eta2 >= 0)) throw ConfigError("model: eta2 must be nonnegative");
  } else {
    throw ConfigError("model: need monitor_dist or monitor_family");
  }
  return d;
}

RunControls load_run(const ConfigFile& f) {
  RunControls r;
  int horizons = 0;
  if (auto v = f.get_double("run", "horizon_polls")) {
    r.horizon_kind = RunControls::Polls;
    r.horizon_value = *v;
    ++horizons;
  }
  if (auto v = f.get_double("run", "horizon_sends")) {
    r.horizon_kind = RunControls::Sends;
    r.horizon_value = *v;
    ++horizons;
  }
  if (auto v = f.get_double("run", "horizon_time")) {
    r.horizon_kind = RunControls::Time;
    r.horizon_value = *v;
    ++horizons;
  }
  if (horizons > 1)
    throw ConfigError("run: give at most one of horizon_polls/horizon_sends/horizon_time");
  if (r.horizon_value <= 0) throw ConfigError("run: horizon must be positive");
  r.warmup = f.get_double("run", "warmup");
  if (r.warmup && *r.warmup < 0) throw ConfigError("run: warmup must be nonnegative");
  if (auto v = f.get_long("run", "replicates")) {
    if (*v < 1) throw ConfigError("run: replicates must be at least 1");
    r.replicates = static_cast<int>(*v);
  }
  if (auto v = f.get_u64("run", "seed")) r.seed = *v;
  if (auto v = f.get("run", "trace")) r.trace_path = *v;
  return r;
}

}  // namespace

ExperimentConfig ExperimentConfig::load(ExperimentKind kind, const ConfigFile& f) {
  ExperimentConfig cfg;
  cfg.kind = kind;
  cfg.model = load_model(f, kind == ExperimentKind::SweepN);
  cfg.run = load_run(f);
  cfg.out_path = f.get("run", "out");
  cfg.no_timestamp = f.get_bool("run", "no_timestamp").value_or(false);

  if (auto rule = f.get("policy", "rule")) cfg.rule = parse_rule(*rule);

  switch (kind) {
    case ExperimentKind::Simulate:
    case ExperimentKind::Analyze:
      cfg.s = SChoice::parse(f.require("policy", "s"));
      break;
    case ExperimentKind::SweepS:
      if (auto e = f.get("model", "eta1_values")) {
        if (!cfg.model.monitor_family)
          throw ConfigError("model: eta1_values needs monitor_family scaling");
        cfg.eta1_values = parse_double_list(*e, "eta1_values");
        for (double v : cfg.eta1_values)
          if (!(v > 0)) throw ConfigError("eta1_values must be positive");
      }
      break;
    case ExperimentKind::SweepN: {
      if (cfg.model.heterogeneous())
        throw ConfigError("sweep-n needs a homogeneous sensor_dist (closed form only)");
      cfg.n_values = parse_int_list_or_range(f.require("model", "n_values"), "n_values");
      for (int n : cfg.n_values)
        if (n < 1) throw ConfigError("n_values must be at least 1");
      if (auto e = f.get("model", "eta1_values")) {
        if (!cfg.model.monitor_family)
          throw ConfigError("model: eta1_values needs monitor_family scaling");
        cfg.eta1_values = parse_double_list(*e, "eta1_values");
        for (double v : cfg.eta1_values)
          if (!(v > 0)) throw ConfigError("eta1_values must be positive");
      }
      break;
    }
    case ExperimentKind::ComparePolicies: {
      for (const std::string& tok : split_list(f.require("policy", "policies"))) {
        const size_t colon = tok.find(':');
        if (colon == std::string::npos)
          throw ConfigError("policies: entry '" + tok + "' is not rule:s");
        cfg.policies.emplace_back(parse_rule(tok.substr(0, colon)),
                                  SChoice::parse(tok.substr(colon + 1)));
      }
      if (cfg.policies.empty()) throw ConfigError("policies: list is empty");
      break;
    }
    case ExperimentKind::VerifyCoupling: {
      cfg.s = SChoice::parse(f.require("policy", "s"));
      if (auto rules = f.get("run", "alt_rules")) {
        for (const std::string& tok : split_list(*rules)) cfg.alt_rules.push_back(parse_rule(tok));
      } else {
        cfg.alt_rules = {SelectionRule::MinAgeFirst, SelectionRule::RandomUniform,
                         SelectionRule::RoundRobin};
      }
      if (auto d = f.get_long("run", "decisions")) {
        if (*d < 1) throw ConfigError("run: decisions must be at least 1");
        cfg.decisions = *d;
      }
      if (auto sc = f.get_long("run", "seeds")) {
        if (*sc < 1) throw ConfigError("run: seeds must be at least 1");
        cfg.coupling_seeds = static_cast<int>(*sc);
      }
      if (auto list = f.get("run", "seed_list")) {
        for (const std::string& tok : split_list(*list)) {
          char* end = nullptr;
          const unsigned long long v = std::strtoull(tok.c_str(), &end, 10);
          if (tok.empty() || end == tok.c_str() || *end != '\0')
            throw ConfigError("run: seed_list entry '" + tok + "' is not an unsigned integer");
          cfg.coupling_seed_list.push_back(static_cast<std::uint64_t>(v));
        }
      }
      break;
    }
  }

  f.check_all_consumed();
  cfg.config_echo = f.canonical_lines();
  return cfg;
}

void CsvTable::write(std::ostream& os) const {
  for (const auto& line : meta) os << "# " << line << "\n";
  os << body();
}

std::string CsvTable::body() const {
  std::ostringstream os;
  for (size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i];
  os << "\n";
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
    os << "\n";
  }
  return os.str();
}

namespace {

std::vector<std::string> common_meta(const ExperimentConfig& cfg) {
  std::vector<std::string> meta;
  meta.push_back(std::string("aoisim ") + kToolVersion);
  meta.push_back("experiment = " + experiment_kind_name(cfg.kind));
  if (!cfg.no_timestamp) {
    char buf[64];
    const std::time_t now = std::time(nullptr);
    std::tm tm_utc{};
    gmtime_r(&now, &tm_utc);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    meta.push_back(std::string("generated = ") + buf);
  }
  for (const auto& line : cfg.config_echo) meta.push_back("config: " + line);
  meta.push_back("base_seed = " + u64_str(cfg.run.seed));
  meta.push_back("rng = splitmix64 (gamma 0x9e3779b97f4a7c15); "
                 "substream r = mix64(seed + gamma*(r+1))");
  meta.push_back("hyperexp_fit = balanced-means: p = (1+sqrt((c2-1)/(c2+1)))/2, "
                 "mean1 = mean/(2p), mean2 = mean/(2(1-p))");
  return meta;
}

void echo_model(std::vector<std::string>& meta, const SystemModel& model,
                const ModelDescription& desc) {
  if (desc.heterogeneous()) {
    for (int i = 0; i < model.n(); ++i)
      meta.push_back("resolved: sensor[" + std::to_string(i) + "] = " +
                     model.sensor_dists[static_cast<size_t>(i)].to_string());
  } else {
    meta.push_back("resolved: sensor = " + model.sensor_dists.front().to_string());
  }
  meta.push_back("resolved: monitor = " + model.monitor_dist.to_string());
  meta.push_back("resolved: eta1 = " + csv_number(display_eta1(model)) +
                 ", eta2 = " + csv_number(display_eta2(model)));
}

ExperimentResult run_simulate(const ExperimentConfig& cfg) {
  ExperimentResult res;
  const SystemModel model = cfg.model.build(cfg.run.seed);
  const int s = resolve_s(cfg.s, model);
  const PolicyConfig policy{s, cfg.rule};
  const SimConfig sim = cfg.run.sim_config(s);

  res.table.meta = common_meta(cfg);
  echo_model(res.table.meta, model, cfg.model);
  res.table.meta.push_back("resolved: s = " + std::to_string(s) + " (from " + cfg.s.to_string() +
                           "), rule = " + rule_name(cfg.rule));

  const ReplicateSummary sum = replicate(model, policy, sim, cfg.run.replicates);
  res.table.columns = {"n",      "s",     "rule",  "eta1",       "eta2",
                       "sim_aoi", "ci_lo", "ci_hi", "replicates", "seed"};
  res.table.rows.push_back({std::to_string(model.n()), std::to_string(s), rule_name(cfg.rule),
                            csv_number(display_eta1(model)), csv_number(display_eta2(model)),
                            csv_number(sum.mean_aoi), csv_number(sum.ci_lo),
                            csv_number(sum.ci_hi), std::to_string(sum.replicates),
                            u64_str(cfg.run.seed)});

  if (cfg.run.trace_path) {
    SimConfig traced = sim;
    traced.seed = RngStream::derive(cfg.run.seed, 0);  // replicate 0
    traced.record_trace = true;
    const SimResult one = run(model, policy, traced);
    std::ofstream out(*cfg.run.trace_path);
    if (!out) throw std::runtime_error("cannot open trace file '" + *cfg.run.trace_path + "'");
    write_trace(out, one);
    res.table.meta.push_back("trace = " + *cfg.run.trace_path + " (replicate 0)");
  }
  return res;
}

ExperimentResult run_analyze(const ExperimentConfig& cfg) {
  ExperimentResult res;
  const SystemModel model = cfg.model.build(cfg.run.seed);
  if (!model.iid_sensors())
    throw ConfigError("analyze uses the homogeneous closed form; sensors must be iid");
  const int s = resolve_s(cfg.s, model);
  const HomogeneousParams p = HomogeneousParams::from_model(model, s);

  res.table.meta = common_meta(cfg);
  echo_model(res.table.meta, model, cfg.model);
  res.table.meta.push_back("resolved: s = " + std::to_string(s) + " (from " + cfg.s.to_string() +
                           ")");

  res.table.columns = {"n",    "s",    "ex",        "varx",       "ex0",    "varx0",
                       "eta1", "eta2", "exact_aoi", "approx_aoi", "s_star", "s_hat"};
  res.table.rows.push_back(
      {std::to_string(p.n), std::to_string(s), csv_number(p.ex), csv_number(p.varx),
       csv_number(p.ex0), csv_number(p.varx0), csv_number(p.eta1()),
       csv_number(p.varx > 0 ? p.eta2() : std::nan("")), csv_number(avg_age_exact(p)),
       csv_number(avg_age_approx(p)), std::to_string(s_star(p.n, p.ex, p.varx, p.ex0, p.varx0)),
       std::to_string(s_hat(p.n, p.eta1()))});
  return res;
}

ExperimentResult run_sweep_s(const ExperimentConfig& cfg) {
  ExperimentResult res;
  res.table.columns = {"n",            "s",       "rule",  "eta1",  "eta2",       "analytic_aoi",
                       "sim_aoi",      "ci_lo",   "ci_hi", "replicates", "seed"};
  res.table.meta = common_meta(cfg);

  const std::vector<double> etas = cfg.eta1_values.empty()
                                       ? std::vector<double>{cfg.model.eta1}
                                       : cfg.eta1_values;
  bool echoed = false;
  for (double eta : etas) {
    const ModelDescription desc =
        cfg.model.monitor_family ? cfg.model.with_eta1(eta) : cfg.model;
    const SystemModel model = desc.build(cfg.run.seed);
    if (!echoed || cfg.model.monitor_family) {
      if (!echoed) echo_model(res.table.meta, model, desc);
      else res.table.meta.push_back("resolved: monitor(eta1=" + csv_number(eta) + ") = " +
                                    model.monitor_dist.to_string());
      echoed = true;
    }
    const bool homogeneous = model.iid_sensors();
    for (int s = 1; s <= model.n(); ++s) {
      double analytic = std::nan("");
      if (homogeneous) analytic = avg_age_exact(HomogeneousParams::from_model(model, s));
      const ReplicateSummary sum =
          replicate(model, {s, cfg.rule}, cfg.run.sim_config(s), cfg.run.replicates);
      res.table.rows.push_back({std::to_string(model.n()), std::to_string(s), rule_name(cfg.rule),
                                csv_number(display_eta1(model)), csv_number(display_eta2(model)),
                                csv_number(analytic), csv_number(sum.mean_aoi),
                                csv_number(sum.ci_lo), csv_number(sum.ci_hi),
                                std::to_string(sum.replicates), u64_str(cfg.run.seed)});
    }
  }
  return res;
}

ExperimentResult run_sweep_n(const ExperimentConfig& cfg) {
  ExperimentResult res;
  res.table.meta = common_meta(cfg);
  res.table.columns = {"n", "eta1", "eta2", "ex", "varx", "ex0", "varx0", "s_star", "s_hat"};

  const std::vector<double> etas = cfg.eta1_values.empty()
                                       ? std::vector<double>{cfg.model.eta1}
                                       : cfg.eta1_values;
  for (double eta : etas) {
    for (int n : cfg.n_values) {
      const ModelDescription desc =
          (cfg.model.monitor_family ? cfg.model.with_eta1(eta) : cfg.model).with_n(n);
      const SystemModel model = desc.build(cfg.run.seed);
      const HomogeneousParams p = HomogeneousParams::from_model(model, 1);
      res.table.rows.push_back(
          {std::to_string(n), csv_number(p.eta1()),
           csv_number(p.varx > 0 ? p.eta2() : std::nan("")), csv_number(p.ex),
           csv_number(p.varx), csv_number(p.ex0), csv_number(p.varx0),
           std::to_string(s_star(n, p.ex, p.varx, p.ex0, p.varx0)),
           std::to_string(s_hat(n, p.eta1()))});
    }
  }
  return res;
}

ExperimentResult run_compare(const ExperimentConfig& cfg) {
  ExperimentResult res;
  const SystemModel model = cfg.model.build(cfg.run.seed);
  res.table.meta = common_meta(cfg);
  echo_model(res.table.meta, model, cfg.model);
  res.table.columns = {"n",      "s",     "rule",  "eta1",       "eta2",
                       "sim_aoi", "ci_lo", "ci_hi", "replicates", "seed"};

  for (const auto& [rule, choice] : cfg.policies) {
    const int s = resolve_s(choice, model);
    const ReplicateSummary sum =
        replicate(model, {s, rule}, cfg.run.sim_config(s), cfg.run.replicates);
    res.table.rows.push_back({std::to_string(model.n()), std::to_string(s), rule_name(rule),
                              csv_number(display_eta1(model)), csv_number(display_eta2(model)),
                              csv_number(sum.mean_aoi), csv_number(sum.ci_lo),
                              csv_number(sum.ci_hi), std::to_string(sum.replicates),
                              u64_str(cfg.run.seed)});
  }
  return res;
}

ExperimentResult run_verify_coupling(const ExperimentConfig& cfg) {
  ExperimentResult res;
  const SystemModel model = cfg.model.build(cfg.run.seed);
  if (!model.iid_sensors())
    throw ConfigError("verify-coupling requires iid sensors (use sensor_dist)");
  const int s = resolve_s(cfg.s, model);

  res.table.meta = common_meta(cfg);
  echo_model(res.table.meta, model, cfg.model);
  res.table.meta.push_back("resolved: s = " + std::to_string(s) + " (from " + cfg.s.to_string() +
                           ")");
  res.table.columns = {"n",     "s",     "alt_rule",        "seed_index",
                       "seed",  "decisions", "checked",     "holds",
                       "violation_index", "violation_position", "maf_value", "alt_value"};

  std::vector<std::uint64_t> seeds = cfg.coupling_seed_list;
  if (seeds.empty()) {
    for (int k = 0; k < cfg.coupling_seeds; ++k)
      seeds.push_back(RngStream::derive(cfg.run.seed, static_cast<std::uint64_t>(k)));
  }

  for (const SelectionRule alt : cfg.alt_rules) {
    for (size_t k = 0; k < seeds.size(); ++k) {
      const std::uint64_t seed = seeds[k];
      const DominanceReport rep =
          verify_dominance({model, s, alt, cfg.decisions, seed});
      std::vector<std::string> row = {std::to_string(model.n()), std::to_string(s),
                                      rule_name(alt), std::to_string(k), u64_str(seed),
                                      std::to_string(cfg.decisions),
                                      std::to_string(rep.decisions_checked),
                                      rep.holds ? "true" : "false"};
      if (rep.first_violation) {
        const Violation& v = *rep.first_violation;
        row.push_back(std::to_string(v.decision_index));
        row.push_back(std::to_string(v.position));
        row.push_back(csv_number(v.maf_value));
        row.push_back(csv_number(v.alt_value));
        if (!res.property_violation) {
          res.property_violation = true;
          std::ostringstream rp;
          rp << "# dominance violation reproducer\n"
             << "[model]\n"
             << "n = " << model.n() << "\n"
             << "sensor_dist = " << model.sensor_dists.front().to_string() << "\n"
             << "monitor_dist = " << model.monitor_dist.to_string() << "\n"
             << "[policy]\n"
             << "s = " << s << "\n"
             << "[run]\n"
             << "alt_rules = " << rule_name(alt) << "\n"
             << "decisions = " << cfg.decisions << "\n"
             << "seed_list = " << u64_str(seed) << "\n";
          res.reproducer = rp.str();
        }
      } else {
        row.insert(row.end(), {"", "", "", ""});
      }
      res.table.rows.push_back(std::move(row));
    }
  }
  return res;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  switch (cfg.kind) {
    case ExperimentKind::Simulate: return run_simulate(cfg);
    case ExperimentKind::Analyze: return run_analyze(cfg);
    case ExperimentKind::SweepS: return run_sweep_s(cfg);
    case ExperimentKind::SweepN: return run_sweep_n(cfg);
    case ExperimentKind::ComparePolicies: return run_compare(cfg);
    case ExperimentKind::VerifyCoupling: return run_verify_coupling(cfg);
  }
  throw std::logic_error("unreachable experiment kind");
}

}  // namespace aoisim
