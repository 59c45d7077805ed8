#include "fuzzychain/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace fuzzychain::baselines {

namespace {

void require_run(std::size_t participants, std::uint64_t rounds) {
  if (participants == 0) throw std::invalid_argument("baseline run needs at least one participant");
  if (rounds == 0) throw std::invalid_argument("baseline run needs at least one round");
}

template <typename T>
metrics::FrequencyTable table_for(std::span<const T> participants,
                                  const std::vector<std::uint64_t>& wins) {
  metrics::FrequencyTable t;
  t.granularity = metrics::Granularity::PerParticipant;
  for (std::size_t i = 0; i < participants.size(); ++i) {
    t.entries.push_back({std::to_string(participants[i].id), wins[i]});
  }
  return t;
}

std::vector<std::uint64_t> categorical_run(std::span<const double> weights, std::uint64_t rounds,
                                          Rng& rng) {
  std::vector<std::uint64_t> wins(weights.size(), 0);
  for (std::uint64_t r = 0; r < rounds; ++r) ++wins[rng.weighted_index(weights)];
  return wins;
}

}  // namespace

metrics::FrequencyTable run_pow(std::span<const Miner> miners, std::uint64_t rounds, Rng& rng) {
  require_run(miners.size(), rounds);
  for (const auto& m : miners) {
    if (!(m.hash_power > 0.0)) throw std::invalid_argument("hash_power must be positive");
  }
  std::vector<std::uint64_t> wins(miners.size(), 0);
  for (std::uint64_t r = 0; r < rounds; ++r) {
    std::size_t best = 0;
    double best_time = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < miners.size(); ++i) {
      const double t = rng.exponential(miners[i].hash_power);
      if (t < best_time) {
        best_time = t;
        best = i;
      }
    }
    ++wins[best];
  }
  return table_for(miners, wins);
}

metrics::FrequencyTable run_pos(std::span<const StakeValidator> validators, std::uint64_t rounds,
                                Rng& rng) {
  require_run(validators.size(), rounds);
  std::vector<double> weights;
  for (const auto& v : validators) {
    if (!(v.stake > 0.0)) throw std::invalid_argument("stake must be positive");
    weights.push_back(v.stake);
  }
  const auto wins = categorical_run(weights, rounds, rng);
  return table_for(validators, wins);
}

metrics::FrequencyTable run_dpos(std::span<const Delegate> delegates, std::uint64_t rounds,
                                 Rng& rng) {
  require_run(delegates.size(), rounds);
  std::vector<double> weights;
  for (const auto& d : delegates) {
    if (!(d.stake > 0.0)) throw std::invalid_argument("stake must be positive");
    if (!(d.reputation > 0.0 && d.reputation <= 1.0)) {
      throw std::invalid_argument("delegate reputation must lie in (0, 1]");
    }
    weights.push_back(d.stake * d.reputation);
  }
  const auto wins = categorical_run(weights, rounds, rng);
  return table_for(delegates, wins);
}

void Distribution::validate() const {
  switch (kind) {
    case Kind::Pareto:
      if (!(p1 > 0.0 && p2 > 0.0)) throw std::invalid_argument("pareto needs positive shape and scale");
      return;
    case Kind::LogNormal:
      if (!std::isfinite(p1) || !(p2 >= 0.0)) throw std::invalid_argument("lognormal needs finite mu and sigma >= 0");
      return;
    case Kind::Uniform:
      if (!(p1 > 0.0 && p1 <= p2)) throw std::invalid_argument("uniform needs 0 < lo <= hi");
      return;
    case Kind::Constant:
      if (!(p1 > 0.0)) throw std::invalid_argument("constant value must be positive");
      return;
  }
}

double Distribution::sample(Rng& rng) const {
  switch (kind) {
    case Kind::Pareto: return rng.pareto(p1, p2);
    case Kind::LogNormal: return rng.lognormal(p1, p2);
    case Kind::Uniform: return rng.uniform(p1, p2);
    case Kind::Constant: return p1;
  }
  return p1;
}

nlohmann::json to_json(const Distribution& d) {
  switch (d.kind) {
    case Distribution::Kind::Pareto: return {{"kind", "pareto"}, {"shape", d.p1}, {"scale", d.p2}};
    case Distribution::Kind::LogNormal: return {{"kind", "lognormal"}, {"mu", d.p1}, {"sigma", d.p2}};
    case Distribution::Kind::Uniform: return {{"kind", "uniform"}, {"lo", d.p1}, {"hi", d.p2}};
    case Distribution::Kind::Constant: return {{"kind", "constant"}, {"value", d.p1}};
  }
  return {};
}

Distribution distribution_from_json(const nlohmann::json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  Distribution d;
  if (kind == "pareto") {
    d = Distribution::pareto(j.at("shape").get<double>(), j.value("scale", 1.0));
  } else if (kind == "lognormal") {
    d = Distribution::lognormal(j.value("mu", 0.0), j.at("sigma").get<double>());
  } else if (kind == "uniform") {
    d = Distribution::uniform(j.at("lo").get<double>(), j.at("hi").get<double>());
  } else if (kind == "constant") {
    d = Distribution::constant(j.at("value").get<double>());
  } else {
    throw std::invalid_argument("unknown distribution kind '" + kind + "'");
  }
  d.validate();
  return d;
}

std::vector<Miner> make_miners(std::size_t count, const Distribution& power, Rng& rng) {
  power.validate();
  std::vector<Miner> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back({i, power.sample(rng)});
  return out;
}

std::vector<StakeValidator> make_stake_validators(std::size_t count, const Distribution& stake,
                                                  Rng& rng) {
  stake.validate();
  std::vector<StakeValidator> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back({i, stake.sample(rng)});
  return out;
}

std::vector<Delegate> make_delegates(std::size_t count, const Distribution& stake,
                                     const Distribution& reputation, Rng& rng) {
  stake.validate();
  reputation.validate();
  std::vector<Delegate> out;
  for (std::size_t i = 0; i < count; ++i) {
    const double s = stake.sample(rng);
    out.push_back({i, s, std::min(1.0, reputation.sample(rng))});
  }
  return out;
}

}  // namespace fuzzychain::baselines
