// aoisim: gateway status-update scheduling simulator and analyzer.
//
// Subcommands: simulate | analyze | sweep-s | sweep-n | compare-policies |
// verify-coupling. Each reads a [model]/[policy]/[run] config file and emits
// CSV with a '#'-prefixed metadata header.
//
// Exit codes: 0 success, 1 usage/config error, 2 runtime error,
// 3 dominance violation found by verify-coupling.

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "aoisim/experiment.hpp"

namespace {

struct CommonFlags {
  std::string config_path;
  std::string seed;
  std::string replicates;
  std::string out;
  std::string trace;
  bool no_timestamp = false;
};

void add_common(CLI::App* sub, CommonFlags& flags, bool with_trace) {
  sub->add_option("--config", flags.config_path, "experiment config file")->required();
  sub->add_option("--seed", flags.seed, "override [run] seed");
  sub->add_option("--replicates", flags.replicates, "override [run] replicates");
  sub->add_option("--out", flags.out, "output CSV path (default: stdout)");
  sub->add_flag("--no-timestamp", flags.no_timestamp, "omit the generated-at metadata line");
  if (with_trace) sub->add_option("--trace", flags.trace, "write an event trace (replicate 0)");
}

int run_kind(aoisim::ExperimentKind kind, const CommonFlags& flags) {
  aoisim::ExperimentResult result;
  try {
    aoisim::ConfigFile file = aoisim::ConfigFile::parse_file(flags.config_path);
    if (!flags.seed.empty()) file.set("run", "seed", flags.seed);
    if (!flags.replicates.empty()) file.set("run", "replicates", flags.replicates);
    if (!flags.out.empty()) file.set("run", "out", flags.out);
    if (flags.no_timestamp) file.set("run", "no_timestamp", "true");
    if (!flags.trace.empty()) file.set("run", "trace", flags.trace);

    const aoisim::ExperimentConfig cfg = aoisim::ExperimentConfig::load(kind, file);
    try {
      result = aoisim::run_experiment(cfg);
    } catch (const aoisim::ConfigError& e) {
      std::cerr << "aoisim: " << e.what() << "\n";
      return 1;
    } catch (const std::exception& e) {
      std::cerr << "aoisim: " << e.what() << "\n";
      return 2;
    }

    if (cfg.out_path) {
      std::ofstream out(*cfg.out_path);
      if (!out) {
        std::cerr << "aoisim: cannot open output file '" << *cfg.out_path << "'\n";
        return 2;
      }
      result.table.write(out);
    } else {
      result.table.write(std::cout);
    }
  } catch (const std::exception& e) {
    std::cerr << "aoisim: " << e.what() << "\n";
    return 1;
  }

  if (result.property_violation) {
    std::cerr << "aoisim: dominance violation found; reproducer:\n" << result.reproducer;
    return 3;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"status-update gateway scheduling: simulation, closed-form analysis, "
               "threshold optimization, and coupled-dominance verification"};
  app.require_subcommand(1);

  struct Sub {
    const char* name;
    const char* help;
    aoisim::ExperimentKind kind;
    bool with_trace;
  };
  const Sub subs[] = {
      {"simulate", "run replicated simulations of one policy", aoisim::ExperimentKind::Simulate,
       true},
      {"analyze", "evaluate the homogeneous closed form and optimizers",
       aoisim::ExperimentKind::Analyze, false},
      {"sweep-s", "simulated and analytic AoI for every s in 1..n", aoisim::ExperimentKind::SweepS,
       false},
      {"sweep-n", "optimal and heuristic thresholds across network sizes",
       aoisim::ExperimentKind::SweepN, false},
      {"compare-policies", "replicated AoI for a list of rule:s policies",
       aoisim::ExperimentKind::ComparePolicies, false},
      {"verify-coupling", "check coupled max-age-first dominance against alternative rules",
       aoisim::ExperimentKind::VerifyCoupling, false},
  };

  CommonFlags flags[std::size(subs)];
  for (size_t i = 0; i < std::size(subs); ++i)
    add_common(app.add_subcommand(subs[i].name, subs[i].help), flags[i], subs[i].with_trace);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;  // --help exits 0; any parse failure is a usage error
  }

  for (size_t i = 0; i < std::size(subs); ++i)
    if (app.get_subcommand(subs[i].name)->parsed()) return run_kind(subs[i].kind, flags[i]);
  return 1;
}
