#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "aoisim/config.hpp"
#include "aoisim/coupling.hpp"
#include "aoisim/model.hpp"
#include "aoisim/policy.hpp"
#include "aoisim/simulator.hpp"

namespace aoisim {

inline constexpr const char* kToolVersion = "1.0.0";

enum class ExperimentKind { Simulate, Analyze, SweepS, SweepN, ComparePolicies, VerifyCoupling };

ExperimentKind parse_experiment_kind(const std::string& name);
std::string experiment_kind_name(ExperimentKind kind);

// How the send threshold is chosen: a fixed integer, the round(sqrt(eta1 n))
// heuristic, the exact argmin scan (homogeneous only), or s = n.
struct SChoice {
  enum Mode { Fixed, Auto, Opt, Max } mode = Fixed;
  int value = 1;  // for Fixed

  static SChoice parse(const std::string& text);
  std::string to_string() const;
};

// Model description as written in the config; build() resolves it into a
// SystemModel, drawing heterogeneous sensor means from a stream derived from
// the experiment seed.
struct ModelDescription {
  int n = 1;
  std::optional<DistributionSpec> sensor_dist;  // homogeneous
  // Heterogeneous family: per-sensor means uniform on (mean_lo, mean_hi).
  std::optional<DistKind> hetero_family;
  double hetero_mean_lo = 0, hetero_mean_hi = 0;
  double hetero_cv2 = 0;  // squared coefficient of variation, hyperexp only
  // Monitor: explicit, or scaled from the sensor-side aggregate moments.
  std::optional<DistributionSpec> monitor_dist;
  std::optional<DistKind> monitor_family;
  double eta1 = 1.0;
  std::optional<double> eta2;

  bool heterogeneous() const { return hetero_family.has_value(); }
  SystemModel build(std::uint64_t experiment_seed) const;
  ModelDescription with_eta1(double value) const;
  ModelDescription with_n(int value) const;
};

struct RunControls {
  enum HorizonKind { Polls, Sends, Time } horizon_kind = Polls;
  double horizon_value = 100000;
  std::optional<double> warmup;
  int replicates = 30;
  std::uint64_t seed = 1;
  std::optional<std::string> trace_path;  // simulate only

  SimConfig sim_config(int s) const;  // converts a poll budget into sends
};

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::Simulate;
  ModelDescription model;
  SelectionRule rule = SelectionRule::MaxAgeFirst;
  SChoice s;
  std::vector<std::pair<SelectionRule, SChoice>> policies;  // compare-policies
  std::vector<double> eta1_values;                          // sweep-s / sweep-n
  std::vector<int> n_values;                                // sweep-n
  std::vector<SelectionRule> alt_rules;                     // verify-coupling
  long decisions = 100000;                                  // verify-coupling
  int coupling_seeds = 10;                                  // verify-coupling
  std::vector<std::uint64_t> coupling_seed_list;            // explicit seeds override
  RunControls run;
  std::optional<std::string> out_path;
  bool no_timestamp = false;
  std::vector<std::string> config_echo;

  // Reads the sections relevant to `kind` and rejects unknown keys.
  static ExperimentConfig load(ExperimentKind kind, const ConfigFile& file);
};

struct CsvTable {
  std::vector<std::string> meta;  // metadata lines, written with "# " prefix
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void write(std::ostream& os) const;
  std::string body() const;  // header + rows, no metadata
};

struct ExperimentResult {
  CsvTable table;
  bool property_violation = false;  // a coupling run reported a violation
  std::string reproducer;           // config snippet for the first violation
};

ExperimentResult run_experiment(const ExperimentConfig& cfg);

// CSV cell formatting used across the tool ("%.12g"; "nan" for NaN).
std::string csv_number(double v);

}  // namespace aoisim
