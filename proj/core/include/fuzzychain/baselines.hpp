#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fuzzychain/metrics.hpp"
#include "fuzzychain/rng.hpp"

namespace fuzzychain::baselines {

struct Miner {
  std::uint64_t id = 0;
  double hash_power = 1.0;
};

struct StakeValidator {
  std::uint64_t id = 0;
  double stake = 1.0;
};

struct Delegate {
  std::uint64_t id = 0;
  double stake = 1.0;
  double reputation = 1.0;
};

/// Exponential race: every miner's solve time is Exp(hash_power); the fastest
/// wins the round.
metrics::FrequencyTable run_pow(std::span<const Miner> miners, std::uint64_t rounds, Rng& rng);

/// Winner drawn with probability stake / total stake.
metrics::FrequencyTable run_pos(std::span<const StakeValidator> validators, std::uint64_t rounds,
                                Rng& rng);

/// Winner drawn with probability stake * reputation / total of the products.
metrics::FrequencyTable run_dpos(std::span<const Delegate> delegates, std::uint64_t rounds,
                                 Rng& rng);

/// Positive-valued distribution used to draw hash powers, stakes and
/// reputations for the comparison runs.
struct Distribution {
  enum class Kind { Pareto, LogNormal, Uniform, Constant };
  Kind kind = Kind::LogNormal;
  double p1 = 0.0;  // pareto: shape, lognormal: mu, uniform: lo, constant: value
  double p2 = 1.0;  // pareto: scale, lognormal: sigma, uniform: hi

  static Distribution pareto(double shape, double scale) { return {Kind::Pareto, shape, scale}; }
  static Distribution lognormal(double mu, double sigma) { return {Kind::LogNormal, mu, sigma}; }
  static Distribution uniform(double lo, double hi) { return {Kind::Uniform, lo, hi}; }
  static Distribution constant(double v) { return {Kind::Constant, v, 0.0}; }

  void validate() const;
  double sample(Rng& rng) const;
};

nlohmann::json to_json(const Distribution& d);
Distribution distribution_from_json(const nlohmann::json& j);

std::vector<Miner> make_miners(std::size_t count, const Distribution& power, Rng& rng);
std::vector<StakeValidator> make_stake_validators(std::size_t count, const Distribution& stake,
                                                  Rng& rng);
std::vector<Delegate> make_delegates(std::size_t count, const Distribution& stake,
                                     const Distribution& reputation, Rng& rng);

}  // namespace fuzzychain::baselines
