// fuzzychain: run the consensus experiments and summarize result directories.
//
//   fuzzychain run exp1 [--seed N] [--rounds 100,200] [--reps N] [--out DIR]
//   fuzzychain run exp2 ...
//   fuzzychain run custom --config FILE ...
//   fuzzychain report DIR
//
// Exit codes: 0 success, 1 configuration error, 2 runtime error.

#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fuzzychain/config.hpp"
#include "fuzzychain/experiment.hpp"
#include "fuzzychain/outputs.hpp"

namespace {

constexpr int kConfigError = 1;
constexpr int kRuntimeError = 2;

struct RunOptions {
  std::string experiment;
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::vector<std::uint64_t> rounds;
  std::optional<std::uint64_t> reps;
  std::string out = "results";
  std::string granularity;
  std::optional<unsigned> threads;
  bool no_audit = false;
};

fuzzychain::harness::ExperimentConfig build_config(const RunOptions& o) {
  using namespace fuzzychain::harness;
  const auto kind = experiment_from_string(o.experiment);
  if (kind == ExperimentKind::Custom && o.config_path.empty()) {
    throw ConfigError("run custom requires --config <path>");
  }
  ExperimentConfig c = ExperimentConfig::defaults(kind);
  if (!o.config_path.empty()) {
    c = load_config(o.config_path);
    // A custom run keeps whatever experiment the file names.
    if (kind != ExperimentKind::Custom) c.experiment = kind;
  }
  if (o.seed) c.seed = *o.seed;
  if (!o.rounds.empty()) c.rounds = o.rounds;
  if (o.reps) c.repetitions = *o.reps;
  if (!o.granularity.empty()) {
    try {
      c.granularity = fuzzychain::metrics::granularity_from_string(o.granularity);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("--granularity: ") + e.what());
    }
  }
  if (o.threads) c.threads = *o.threads;
  if (o.no_audit) c.audit = false;
  c.validate();
  return c;
}

int run_command(const RunOptions& o) {
  const auto config = build_config(o);
  const auto report = fuzzychain::harness::run(config);
  const auto files = fuzzychain::harness::emit_outputs(report, o.out);
  for (const auto& f : files) std::cout << "wrote " << f.string() << '\n';
  std::cout << fuzzychain::harness::report_text(o.out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fuzzychain consensus simulation laboratory"};
  app.require_subcommand(1);

  RunOptions run;
  auto* run_cmd = app.add_subcommand("run", "Run exp1, exp2 or a custom experiment");
  run_cmd->add_option("experiment", run.experiment, "exp1 | exp2 | custom")
      ->required()
      ->check(CLI::IsMember({"exp1", "exp2", "custom"}));
  run_cmd->add_option("--config", run.config_path, "JSON experiment configuration");
  run_cmd->add_option("--seed", run.seed, "Master seed");
  run_cmd->add_option("--rounds", run.rounds, "Round counts, comma separated")->delimiter(',');
  run_cmd->add_option("--reps", run.reps, "Repetitions per round count");
  run_cmd->add_option("--out", run.out, "Output directory")->capture_default_str();
  run_cmd->add_option("--granularity", run.granularity, "per-label | per-participant");
  run_cmd->add_option("--threads", run.threads, "Worker threads (0 = all cores)");
  run_cmd->add_flag("--no-audit", run.no_audit, "Skip per-round audit records");

  std::string report_dir;
  auto* report_cmd = app.add_subcommand("report", "Summarize a results directory");
  report_cmd->add_option("dir", report_dir, "Directory written by `run`")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }

  try {
    if (*run_cmd) return run_command(run);
    std::cout << fuzzychain::harness::report_text(report_dir);
    return 0;
  } catch (const fuzzychain::harness::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRuntimeError;
  }
}
