#include <doctest.h>

#include <cstdlib>
#include <string>

#include "aoisim/experiment.hpp"

using namespace aoisim;

namespace {

ExperimentConfig load(ExperimentKind kind, const std::string& text) {
  return ExperimentConfig::load(kind, ConfigFile::parse_string(text));
}

const char* kSimulateConfig = R"(
[model]
n = 4
sensor_dist = det(1)
monitor_dist = det(1)

[policy]
rule = maf
s = 2

[run]
horizon_time = 600
warmup = 60
replicates = 1
seed = 7
no_timestamp = true
)";

std::string cell(const CsvTable& t, size_t row, const std::string& column) {
  for (size_t c = 0; c < t.columns.size(); ++c)
    if (t.columns[c] == column) return t.rows.at(row).at(c);
  FAIL("no column " << column);
  return "";
}

}  // namespace

TEST_CASE("config parsing reports line numbers") {
  CHECK_THROWS_WITH_AS(ConfigFile::parse_string("[model]\nn 4\n", "bad.cfg"),
                       doctest::Contains("bad.cfg:2"), ConfigError);
  CHECK_THROWS_WITH_AS(ConfigFile::parse_string("n = 4\n", "bad.cfg"),
                       doctest::Contains("outside any [section]"), ConfigError);
  CHECK_THROWS_WITH_AS(ConfigFile::parse_string("[model]\nn = 4\nn = 5\n", "bad.cfg"),
                       doctest::Contains("duplicate key"), ConfigError);

  const auto f = ConfigFile::parse_string("[model]\nn = 4  # sensors\n");
  CHECK(f.get_long("model", "n") == 4);

  // unknown keys are rejected with their line number
  CHECK_THROWS_WITH_AS(load(ExperimentKind::Simulate,
                            std::string(kSimulateConfig) + "\n[run]\ntypo_key = 1\n"),
                       doctest::Contains("typo_key"), ConfigError);
}

TEST_CASE("config validation names infeasible combinations") {
  CHECK_THROWS_WITH_AS(
      load(ExperimentKind::Simulate,
           "[model]\nn = 2\nsensor_dist = det(1)\nsensor_family = exp\n"
           "sensor_mean_lo = 0\nsensor_mean_hi = 1\nmonitor_dist = det(1)\n"
           "[policy]\ns = 1\n"),
      doctest::Contains("not both"), ConfigError);
  CHECK_THROWS_WITH_AS(load(ExperimentKind::Simulate,
                            "[model]\nn = 2\nsensor_dist = det(1)\nmonitor_dist = det(1)\n"
                            "eta1 = 2\n[policy]\ns = 1\n"),
                       doctest::Contains("conflicts"), ConfigError);
  CHECK_THROWS_WITH_AS(load(ExperimentKind::Simulate,
                            "[model]\nn = 2\nsensor_family = exp\nsensor_mean_lo = 0\n"
                            "sensor_mean_hi = 40\nmonitor_family = exp\n"
                            "[policy]\ns = opt\n[run]\nseed = 1\n"),
                       doctest::Contains("requires iid"), ConfigError);
}

TEST_CASE("simulate experiment reproduces the deterministic schedule") {
  const ExperimentConfig cfg = load(ExperimentKind::Simulate, kSimulateConfig);
  const ExperimentResult res = run_experiment(cfg);
  CHECK(res.table.columns ==
        std::vector<std::string>{"n", "s", "rule", "eta1", "eta2", "sim_aoi", "ci_lo", "ci_hi",
                                 "replicates", "seed"});
  REQUIRE(res.table.rows.size() == 1);
  CHECK(cell(res.table, 0, "sim_aoi") == "5.5");
  CHECK(cell(res.table, 0, "seed") == "7");
  CHECK(cell(res.table, 0, "eta2") == "nan");

  // no timestamp line when suppressed
  for (const auto& line : res.table.meta) CHECK(line.find("generated") == std::string::npos);
}

TEST_CASE("sweep-s bodies are byte-identical across reruns and rows round-trip") {
  const char* sweep = R"(
[model]
n = 4
sensor_dist = exp(mean=1)
monitor_dist = exp(mean=1)
[policy]
rule = maf
[run]
horizon_polls = 2000
replicates = 3
seed = 99
no_timestamp = true
)";
  const ExperimentConfig cfg = load(ExperimentKind::SweepS, sweep);
  const ExperimentResult a = run_experiment(cfg);
  const ExperimentResult b = run_experiment(cfg);
  CHECK(a.table.body() == b.table.body());
  CHECK(a.table.columns ==
        std::vector<std::string>{"n", "s", "rule", "eta1", "eta2", "analytic_aoi", "sim_aoi",
                                 "ci_lo", "ci_hi", "replicates", "seed"});
  REQUIRE(a.table.rows.size() == 4);

  // every row re-runs to the same result through the simulate experiment
  for (size_t r = 0; r < a.table.rows.size(); ++r) {
    const std::string config_text =
        "[model]\nn = " + cell(a.table, r, "n") +
        "\nsensor_dist = exp(mean=1)\nmonitor_dist = exp(mean=1)\n"
        "[policy]\nrule = " + cell(a.table, r, "rule") + "\ns = " + cell(a.table, r, "s") +
        "\n[run]\nhorizon_polls = 2000\nreplicates = " + cell(a.table, r, "replicates") +
        "\nseed = " + cell(a.table, r, "seed") + "\nno_timestamp = true\n";
    const ExperimentResult rerun =
        run_experiment(load(ExperimentKind::Simulate, config_text));
    CHECK(cell(rerun.table, 0, "sim_aoi") == cell(a.table, r, "sim_aoi"));
    CHECK(cell(rerun.table, 0, "ci_lo") == cell(a.table, r, "ci_lo"));
    CHECK(cell(rerun.table, 0, "ci_hi") == cell(a.table, r, "ci_hi"));
  }
}

TEST_CASE("analyze emits the closed-form row") {
  const char* analyze = R"(
[model]
n = 10
sensor_dist = exp(mean=1)
monitor_dist = exp(mean=1)
[policy]
s = 3
[run]
no_timestamp = true
)";
  const ExperimentResult res = run_experiment(load(ExperimentKind::Analyze, analyze));
  REQUIRE(res.table.rows.size() == 1);
  CHECK(cell(res.table, 0, "exact_aoi") == "10.2");
  CHECK(cell(res.table, 0, "s_star") == "3");
  CHECK(cell(res.table, 0, "s_hat") == "3");
  CHECK(cell(res.table, 0, "eta1") == "1");
}

TEST_CASE("sweep-n emits thresholds per network size") {
  const char* sweep = R"(
[model]
n_values = 4,16,36
sensor_dist = det(1)
monitor_family = det
eta1 = 1
[run]
no_timestamp = true
)";
  const ExperimentResult res = run_experiment(load(ExperimentKind::SweepN, sweep));
  REQUIRE(res.table.rows.size() == 3);
  CHECK(cell(res.table, 0, "s_star") == "2");
  CHECK(cell(res.table, 1, "s_star") == "4");
  CHECK(cell(res.table, 1, "s_hat") == "4");
  CHECK(cell(res.table, 2, "s_star") == "6");
  CHECK(cell(res.table, 2, "s_hat") == "6");
}

TEST_CASE("compare-policies duplicates a repeated policy exactly") {
  const char* compare = R"(
[model]
n = 6
sensor_dist = exp(mean=1)
monitor_dist = exp(mean=1)
[policy]
policies = maf:2, maf:2, rr:2
[run]
horizon_polls = 3000
replicates = 2
seed = 5
no_timestamp = true
)";
  const ExperimentResult res = run_experiment(load(ExperimentKind::ComparePolicies, compare));
  REQUIRE(res.table.rows.size() == 3);
  CHECK(res.table.rows[0] == res.table.rows[1]);
  CHECK(res.table.rows[0] != res.table.rows[2]);
}

TEST_CASE("verify-coupling experiment reports clean runs") {
  const char* coupling = R"(
[model]
n = 3
sensor_dist = exp(mean=1)
monitor_dist = exp(mean=1)
[policy]
s = 2
[run]
alt_rules = minage, rr
decisions = 2000
seeds = 2
seed = 11
no_timestamp = true
)";
  const ExperimentResult res = run_experiment(load(ExperimentKind::VerifyCoupling, coupling));
  REQUIRE(res.table.rows.size() == 4);
  for (size_t r = 0; r < res.table.rows.size(); ++r) CHECK(cell(res.table, r, "holds") == "true");
  CHECK(!res.property_violation);
  CHECK(res.reproducer.empty());
}

TEST_CASE("heterogeneous model generation is seeded and scaled") {
  const char* hetero = R"(
[model]
n = 10
sensor_family = exp
sensor_mean_lo = 0
sensor_mean_hi = 40
monitor_family = exp
eta1 = 2
[policy]
s = auto
[run]
seed = 12
horizon_polls = 2000
replicates = 1
no_timestamp = true
)";
  const ExperimentConfig cfg = load(ExperimentKind::Simulate, hetero);
  const SystemModel m1 = cfg.model.build(cfg.run.seed);
  const SystemModel m2 = cfg.model.build(cfg.run.seed);
  CHECK(m1.sensor_dists == m2.sensor_dists);
  CHECK(!m1.iid_sensors());

  double mean_sum = 0;
  for (const auto& d : m1.sensor_dists) {
    CHECK(d.mean() > 0.0);
    CHECK(d.mean() < 40.0);
    mean_sum += d.mean();
  }
  CHECK(m1.monitor_dist.mean() == doctest::Approx(2.0 * mean_sum / 10).epsilon(1e-12));

  const SystemModel other = cfg.model.build(13);
  CHECK(m1.sensor_dists != other.sensor_dists);

  // runs end to end
  const ExperimentResult res = run_experiment(cfg);
  CHECK(res.table.rows.size() == 1);
}
