#include "fuzzychain/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <map>
#include <mutex>
#include <thread>

#include "fuzzychain/baselines.hpp"

namespace fuzzychain::harness {

std::vector<double> sample_label_stakes(const fuzzy::LinguisticVariable& var, std::size_t label,
                                        std::size_t count, Rng& rng) {
  const auto& mf = var.functions().at(label);
  const double lo = std::max(var.lo(), mf.shape == fuzzy::Shape::ShoulderLeft ? var.lo() : mf.a);
  const double hi = std::min(var.hi(), mf.shape == fuzzy::Shape::ShoulderRight ? var.hi() : mf.c);
  constexpr int kMaxAttempts = 10000;

  std::vector<double> out;
  out.reserve(count);
  while (out.size() < count) {
    int attempts = 0;
    for (;;) {
      const double x = rng.uniform(lo, hi);
      if (fuzzy::hmdf(var, x).label_index == label) {
        out.push_back(x);
        break;
      }
      if (++attempts == kMaxAttempts) {
        throw ConfigError("partition: label '" + var.label(label) +
                          "' has no region where it has the highest membership");
      }
    }
  }
  return out;
}

Simulation::Simulation(const ExperimentConfig& config, std::uint64_t seed)
    : config_(config),
      var_(config.partition.build()),
      round_config_{config.reputation, consensus::ByzantineModel{config.byzantine_rate},
                    config.commission},
      streams_(consensus::RoundStreams::derive(Rng(seed).derive("rounds"))),
      tx_rng_(Rng(seed).derive("transactions")),
      invalid_rng_(Rng(seed).derive("invalid-blocks")) {
  round_config_.reputation.validate();
  round_config_.byzantine.validate();
  if (config_.population.size() != var_.size()) {
    throw ConfigError("population: expected one entry per label");
  }
  const Rng master(seed);
  Rng stake_rng = master.derive("stakes");
  Rng key_rng = master.derive("keys");
  for (std::size_t label = 0; label < var_.size(); ++label) {
    for (double stake : sample_label_stakes(var_, label, config_.population[label], stake_rng)) {
      registry_.admit(stake, var_, key_rng);
    }
  }
}

ledger::Block Simulation::next_block() {
  std::vector<ledger::Transaction> txs;
  const std::size_t n = registry_.size();
  for (std::uint32_t t = 0; n >= 2 && t < config_.transactions_per_block; ++t) {
    const std::size_t from = tx_rng_.index(n);
    std::size_t to = tx_rng_.index(n - 1);
    if (to >= from) ++to;
    const registry::ValidatorId sender{from};
    ledger::Transaction tx;
    tx.sender = registry_.get(sender).verify_key.bytes;
    tx.recipient = registry_.get(registry::ValidatorId{to}).verify_key.bytes;
    tx.amount_micros = ledger::to_fixed_point(tx_rng_.uniform(0.0, 0.01));
    tx.nonce = nonce_++;
    txs.push_back(ledger::sign_transaction(std::move(tx), registry_.signing_key(sender)));
  }

  ledger::Block block = ledger::build_block(chain_.tip(), std::move(txs), round_);
  const bool corrupt = invalid_rng_.bernoulli(config_.invalid_block_rate);
  const bool break_link = invalid_rng_.bernoulli(0.5);
  if (corrupt) {
    if (break_link || block.transactions.empty()) {
      block.prev_hash[0] ^= 0x01;
    } else {
      block.transactions.front().signature.back() ^= 0x01;
    }
    block.hash = ledger::compute_hash(block);
  }
  return block;
}

consensus::RoundOutcome Simulation::step() {
  ++round_;
  const ledger::Block block = next_block();
  return consensus::run_round(registry_, chain_, var_, block, round_config_, round_, streams_);
}

void attach_metrics(RunRecord& run) {
  try {
    run.metrics = metrics::compute(run.table);
    run.metrics_error.clear();
  } catch (const metrics::UndefinedInput& e) {
    run.metrics.reset();
    run.metrics_error = e.what();
  }
}

RunRecord run_fuzzychain(const ExperimentConfig& config, std::uint64_t rounds,
                         std::uint64_t repetition) {
  const std::uint64_t seed = Rng(config.seed).derive("fuzzychain", rounds, repetition).seed();
  Simulation sim(config, seed);
  const auto& var = sim.variable();

  std::vector<std::uint64_t> by_label(var.size(), 0);
  std::vector<std::uint64_t> by_validator(sim.registry().size(), 0);
  RunRecord rec;
  rec.algorithm = "fuzzychain";
  rec.rounds = rounds;
  rec.repetition = repetition;
  for (std::uint64_t r = 0; r < rounds; ++r) {
    const auto outcome = sim.step();
    ++by_label[outcome.winner_label];
    ++by_validator[outcome.winner.value];
    (outcome.decision == consensus::Vote::Accepted ? rec.accepted : rec.rejected) += 1;
    if (config.audit) {
      auto j = consensus::to_json(outcome, var);
      j["rounds"] = rounds;
      j["repetition"] = repetition;
      rec.audit.push_back(j.dump());
    }
  }
  rec.chain_length = sim.chain().size();
  for (const auto& v : sim.registry().validators()) rec.expelled += v.active() ? 0 : 1;

  rec.table.granularity = config.granularity;
  if (config.granularity == metrics::Granularity::PerLabel) {
    for (std::size_t i = 0; i < var.size(); ++i) rec.table.entries.push_back({var.label(i), by_label[i]});
  } else {
    for (std::size_t i = 0; i < by_validator.size(); ++i) {
      rec.table.entries.push_back({std::to_string(i), by_validator[i]});
    }
  }
  attach_metrics(rec);
  return rec;
}

namespace {

/// Runs task(i) for i in [0, count) on up to `threads` workers. Results are
/// written by index, so output order never depends on scheduling.
template <typename Task>
void parallel_for(std::size_t count, unsigned threads, Task task) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> workers;
  for (unsigned t = 0; t < threads; ++t) {
    workers.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          task(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& w : workers) w.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

RunReport run_experiment1(const ExperimentConfig& config) {
  config.validate();
  RunReport report{config, {}};
  const std::size_t reps = config.repetitions;
  report.runs.resize(config.rounds.size() * reps);
  parallel_for(report.runs.size(), config.threads, [&](std::size_t i) {
    report.runs[i] = run_fuzzychain(config, config.rounds[i / reps], i % reps);
  });
  return report;
}

RunReport run_experiment2(const ExperimentConfig& config) {
  config.validate();
  RunReport report{config, {}};
  const std::size_t reps = config.repetitions;
  const std::size_t per_rep = config.rounds.size() + 3;
  report.runs.resize(reps * per_rep);
  const Rng master(config.seed);
  const auto& b = config.baselines;

  parallel_for(reps, config.threads, [&](std::size_t k) {
    RunRecord* slot = &report.runs[k * per_rep];
    for (auto rounds : config.rounds) *slot++ = run_fuzzychain(config, rounds, k);

    auto baseline = [&](const char* name, metrics::FrequencyTable table) {
      RunRecord rec;
      rec.algorithm = name;
      rec.rounds = b.rounds;
      rec.repetition = k;
      rec.table = std::move(table);
      attach_metrics(rec);
      *slot++ = std::move(rec);
    };
    {
      Rng setup = master.derive("pow-participants", k);
      Rng play = master.derive("pow-rounds", k);
      baseline("pow", baselines::run_pow(baselines::make_miners(b.participants, b.pow_power, setup),
                                         b.rounds, play));
    }
    {
      Rng setup = master.derive("pos-participants", k);
      Rng play = master.derive("pos-rounds", k);
      baseline("pos", baselines::run_pos(
                          baselines::make_stake_validators(b.participants, b.pos_stake, setup),
                          b.rounds, play));
    }
    {
      Rng setup = master.derive("dpos-participants", k);
      Rng play = master.derive("dpos-rounds", k);
      baseline("dpos", baselines::run_dpos(baselines::make_delegates(b.participants, b.dpos_stake,
                                                                     b.dpos_reputation, setup),
                                           b.rounds, play));
    }
  });
  return report;
}

RunReport run(const ExperimentConfig& config) {
  return config.experiment == ExperimentKind::Exp2 ? run_experiment2(config)
                                                   : run_experiment1(config);
}

std::vector<Aggregate> aggregate(const std::vector<RunRecord>& runs) {
  std::vector<Aggregate> out;
  std::map<std::pair<std::string, std::uint64_t>, std::vector<const RunRecord*>> groups;
  for (const auto& r : runs) {
    auto& g = groups[{r.algorithm, r.rounds}];
    if (g.empty()) out.push_back(Aggregate{r.algorithm, r.rounds, 0, {}, 0.0});
    g.push_back(&r);
  }
  for (auto& agg : out) {
    const auto& members = groups.at({agg.algorithm, agg.rounds});
    agg.repetitions = members.size();
    const auto& first = members.front()->table.entries;
    for (std::size_t k = 0; k < first.size(); ++k) {
      KeyStats s;
      s.key = first[k].key;
      s.min = std::numeric_limits<std::uint64_t>::max();
      double sum = 0.0, sq = 0.0;
      for (const auto* m : members) {
        const auto c = m->table.entries.at(k).count;
        sum += static_cast<double>(c);
        sq += static_cast<double>(c) * static_cast<double>(c);
        s.min = std::min(s.min, c);
        s.max = std::max(s.max, c);
      }
      const double n = static_cast<double>(members.size());
      s.mean = sum / n;
      s.std = std::sqrt(std::max(0.0, sq / n - s.mean * s.mean));
      agg.keys.push_back(std::move(s));
    }
    double pooled = 0.0;
    for (const auto* m : members) {
      const auto counts = m->table.counts();
      double mean = 0.0;
      for (double c : counts) mean += c;
      mean /= static_cast<double>(counts.size());
      double var = 0.0;
      for (double c : counts) var += (c - mean) * (c - mean);
      pooled += var / static_cast<double>(counts.size());
    }
    agg.pooled_key_std = std::sqrt(pooled / static_cast<double>(members.size()));
  }
  return out;
}

nlohmann::json summary_json(const RunReport& report) {
  const auto& c = report.config;
  nlohmann::json j;
  j["experiment"] = to_string(c.experiment);
  j["config"] = to_json(c);
  j["trusted_sets_required"] =
      consensus::trusted_sets_required(static_cast<int>(c.partition.labels.size()));
  j["granularity"] = {{"fuzzychain", metrics::to_string(c.granularity)},
                      {"baselines", metrics::to_string(metrics::Granularity::PerParticipant)}};
  j["selection_semantics"] =
      "frequency counts record the winner of each round; full panels are listed in audit.jsonl";

  nlohmann::json aggs = nlohmann::json::array();
  for (const auto& a : aggregate(report.runs)) {
    nlohmann::json keys = nlohmann::json::array();
    for (const auto& k : a.keys) {
      keys.push_back({{"key", k.key}, {"mean", k.mean}, {"std", k.std}, {"min", k.min}, {"max", k.max}});
    }
    aggs.push_back({{"algorithm", a.algorithm},
                    {"rounds", a.rounds},
                    {"repetitions", a.repetitions},
                    {"pooled_key_std", a.pooled_key_std},
                    {"keys", std::move(keys)}});
  }
  j["aggregates"] = std::move(aggs);

  nlohmann::json runs = nlohmann::json::array();
  std::map<std::pair<std::string, std::uint64_t>, std::pair<metrics::MetricsReport, int>> means;
  std::vector<std::pair<std::string, std::uint64_t>> mean_order;
  for (const auto& r : report.runs) {
    nlohmann::json e = {{"algorithm", r.algorithm},
                        {"rounds", r.rounds},
                        {"repetition", r.repetition},
                        {"total", r.table.total()}};
    if (r.metrics) {
      e["metrics"] = metrics::to_json(*r.metrics);
      auto key = std::make_pair(r.algorithm, r.rounds);
      auto [it, inserted] = means.try_emplace(key, metrics::MetricsReport{}, 0);
      if (inserted) mean_order.push_back(key);
      it->second.first.gini += r.metrics->gini;
      it->second.first.skewness += r.metrics->skewness;
      it->second.first.kurtosis_excess += r.metrics->kurtosis_excess;
      it->second.second += 1;
    } else {
      e["metrics"] = nullptr;
      e["metrics_error"] = r.metrics_error;
    }
    if (r.algorithm == "fuzzychain") {
      e["accepted"] = r.accepted;
      e["rejected"] = r.rejected;
      e["chain_length"] = r.chain_length;
      e["expelled"] = r.expelled;
    }
    runs.push_back(std::move(e));
  }
  j["runs"] = std::move(runs);

  nlohmann::json mm = nlohmann::json::array();
  for (const auto& key : mean_order) {
    const auto& [sum, n] = means.at(key);
    mm.push_back({{"algorithm", key.first},
                  {"rounds", key.second},
                  {"repetitions_with_metrics", n},
                  {"gini", sum.gini / n},
                  {"skewness", sum.skewness / n},
                  {"kurtosis_excess", sum.kurtosis_excess / n}});
  }
  j["metrics_mean"] = std::move(mm);

  if (c.experiment == ExperimentKind::Exp2) {
    // Gini ordering fuzzychain < dpos < pos < pow, per repetition, using the
    // first configured Fuzzychain round count.
    std::map<std::uint64_t, std::map<std::string, double>> per_rep;
    for (const auto& r : report.runs) {
      if (!r.metrics) continue;
      if (r.algorithm == "fuzzychain" && r.rounds != c.rounds.front()) continue;
      per_rep[r.repetition][r.algorithm] = r.metrics->gini;
    }
    std::uint64_t holds = 0;
    for (const auto& [rep, g] : per_rep) {
      if (g.size() == 4 && g.at("fuzzychain") < g.at("dpos") && g.at("dpos") < g.at("pos") &&
          g.at("pos") < g.at("pow")) {
        ++holds;
      }
    }
    j["gini_ordering"] = {{"order", "fuzzychain < dpos < pos < pow"},
                          {"holds", holds},
                          {"repetitions", c.repetitions}};
  }
  return j;
}

}  // namespace fuzzychain::harness
