#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fuzzychain/baselines.hpp"
#include "fuzzychain/fuzzy.hpp"
#include "fuzzychain/metrics.hpp"
#include "fuzzychain/registry.hpp"

namespace fuzzychain::harness {

/// Invalid configuration. what() lists every offending field.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ExperimentKind { Exp1, Exp2, Custom };

std::string to_string(ExperimentKind k);
ExperimentKind experiment_from_string(const std::string& s);

struct PartitionConfig {
  std::string name = "participant stake";
  std::vector<std::string> labels{"VL", "L", "M", "H", "VH"};
  double lo = 0.0;
  double hi = 10.0;
  /// Explicit (a, b, c) triples; empty means a uniform partition.
  std::vector<std::array<double, 3>> triples;

  fuzzy::LinguisticVariable build() const;
};

struct BaselineConfig {
  std::uint64_t participants = 100;
  std::uint64_t rounds = 100;
  baselines::Distribution pow_power = baselines::Distribution::lognormal(0.0, 1.6);
  baselines::Distribution pos_stake = baselines::Distribution::lognormal(0.0, 0.9);
  baselines::Distribution dpos_stake = baselines::Distribution::lognormal(0.0, 0.1);
  baselines::Distribution dpos_reputation = baselines::Distribution::uniform(0.5, 1.0);
};

struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::Exp1;
  std::uint64_t seed = 42;
  PartitionConfig partition;
  /// Validators admitted per label, in label order.
  std::vector<std::uint64_t> population{500, 300, 150, 30, 10};
  /// Round counts swept; each count is an independent run per repetition.
  std::vector<std::uint64_t> rounds{100, 200, 300, 400, 500};
  std::uint64_t repetitions = 20;
  registry::ReputationParams reputation;
  double commission = 0.05;
  double byzantine_rate = 0.02;
  double invalid_block_rate = 0.0;
  std::uint32_t transactions_per_block = 2;
  BaselineConfig baselines;
  metrics::Granularity granularity = metrics::Granularity::PerLabel;
  bool audit = true;
  /// Worker threads for repetitions; 0 picks the hardware concurrency. Not
  /// part of the echoed configuration since it never changes results.
  unsigned threads = 1;

  static ExperimentConfig defaults(ExperimentKind kind);

  /// Throws ConfigError naming each invalid field.
  void validate() const;
};

/// Overlays the keys present in j onto base. Unknown keys are rejected.
ExperimentConfig config_from_json(const nlohmann::json& j, ExperimentConfig base);
ExperimentConfig load_config(const std::filesystem::path& path);

nlohmann::json to_json(const ExperimentConfig& c);

}  // namespace fuzzychain::harness
