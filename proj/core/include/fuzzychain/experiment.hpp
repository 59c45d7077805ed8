#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fuzzychain/config.hpp"
#include "fuzzychain/consensus.hpp"
#include "fuzzychain/ledger.hpp"
#include "fuzzychain/metrics.hpp"
#include "fuzzychain/registry.hpp"

namespace fuzzychain::harness {

/// Stakes for a label's population, drawn uniformly from the region where that
/// label wins the highest-membership classification, so the census is exact.
std::vector<double> sample_label_stakes(const fuzzy::LinguisticVariable& var, std::size_t label,
                                        std::size_t count, Rng& rng);

/// A single Fuzzychain run: registry, chain and the per-consumer streams, all
/// derived from one seed.
class Simulation {
 public:
  Simulation(const ExperimentConfig& config, std::uint64_t seed);

  consensus::RoundOutcome step();

  std::uint64_t rounds_run() const { return round_; }
  const registry::Registry& registry() const { return registry_; }
  const ledger::Chain& chain() const { return chain_; }
  const fuzzy::LinguisticVariable& variable() const { return var_; }

 private:
  ledger::Block next_block();

  ExperimentConfig config_;
  fuzzy::LinguisticVariable var_;
  registry::Registry registry_;
  ledger::Chain chain_;
  consensus::RoundConfig round_config_;
  consensus::RoundStreams streams_;
  Rng tx_rng_;
  Rng invalid_rng_;
  std::uint64_t round_ = 0;
  std::uint64_t nonce_ = 0;
};

struct RunRecord {
  std::string algorithm;  // fuzzychain, pow, pos, dpos
  std::uint64_t rounds = 0;
  std::uint64_t repetition = 0;
  metrics::FrequencyTable table;
  std::optional<metrics::MetricsReport> metrics;
  std::string metrics_error;

  // Fuzzychain only.
  std::uint64_t accepted = 0;
  std::uint64_t rejected = 0;
  std::uint64_t chain_length = 0;
  std::uint64_t expelled = 0;
  std::vector<std::string> audit;  // one JSON document per round
};

struct RunReport {
  ExperimentConfig config;
  std::vector<RunRecord> runs;
};

/// One Fuzzychain run of `rounds` rounds; the seed derives from (rounds,
/// repetition) and the master seed.
RunRecord run_fuzzychain(const ExperimentConfig& config, std::uint64_t rounds,
                         std::uint64_t repetition);

/// Fuzzychain sweep over every configured round count and repetition.
RunReport run_experiment1(const ExperimentConfig& config);

/// PoW, PoS and DPoS against Fuzzychain, once per repetition.
RunReport run_experiment2(const ExperimentConfig& config);

/// Dispatches on config.experiment (custom runs the Fuzzychain sweep).
RunReport run(const ExperimentConfig& config);

struct KeyStats {
  std::string key;
  double mean = 0.0;
  double std = 0.0;  // population
  std::uint64_t min = 0;
  std::uint64_t max = 0;
};

/// Per-key statistics across repetitions for one (algorithm, rounds) group.
struct Aggregate {
  std::string algorithm;
  std::uint64_t rounds = 0;
  std::uint64_t repetitions = 0;
  std::vector<KeyStats> keys;
  /// sqrt of the mean over repetitions of the across-key population variance.
  double pooled_key_std = 0.0;
};

std::vector<Aggregate> aggregate(const std::vector<RunRecord>& runs);

void attach_metrics(RunRecord& run);

nlohmann::json summary_json(const RunReport& report);

}  // namespace fuzzychain::harness
