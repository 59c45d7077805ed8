#include "fuzzychain/config.hpp"

#include <fstream>
#include <set>
#include <sstream>


namespace fuzzychain::harness {

std::string to_string(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::Exp1: return "exp1";
    case ExperimentKind::Exp2: return "exp2";
    case ExperimentKind::Custom: return "custom";
  }
  return "custom";
}

ExperimentKind experiment_from_string(const std::string& s) {
  if (s == "exp1") return ExperimentKind::Exp1;
  if (s == "exp2") return ExperimentKind::Exp2;
  if (s == "custom") return ExperimentKind::Custom;
  throw ConfigError("experiment: expected exp1, exp2 or custom, got '" + s + "'");
}

fuzzy::LinguisticVariable PartitionConfig::build() const {
  if (triples.empty()) return fuzzy::make_uniform_partition(name, labels, lo, hi);
  std::vector<fuzzy::MembershipFunction> mfs;
  for (std::size_t i = 0; i < triples.size(); ++i) {
    const auto shape = i == 0 ? fuzzy::Shape::ShoulderLeft
                              : (i + 1 == triples.size() ? fuzzy::Shape::ShoulderRight
                                                         : fuzzy::Shape::Interior);
    mfs.push_back({triples[i][0], triples[i][1], triples[i][2], shape});
  }
  return fuzzy::LinguisticVariable(name, labels, lo, hi, std::move(mfs));
}

ExperimentConfig ExperimentConfig::defaults(ExperimentKind kind) {
  ExperimentConfig c;
  c.experiment = kind;
  if (kind == ExperimentKind::Exp2) c.rounds = {100};
  return c;
}

void ExperimentConfig::validate() const {
  std::vector<std::string> errors;
  auto check = [&](bool ok, const std::string& msg) {
    if (!ok) errors.push_back(msg);
  };

  try {
    const auto var = partition.build();
    check(population.size() == var.size(),
          "population: expected " + std::to_string(var.size()) + " entries (one per label), got " +
              std::to_string(population.size()));
  } catch (const std::exception& e) {
    errors.push_back(std::string("partition: ") + e.what());
  }
  check(!rounds.empty(), "rounds: at least one round count required");
  for (auto r : rounds) check(r >= 1, "rounds: every round count must be >= 1");
  check(repetitions >= 1, "repetitions: must be >= 1");
  try {
    reputation.validate();
  } catch (const std::exception& e) {
    errors.push_back(std::string("reputation: ") + e.what());
  }
  check(commission >= 0.0, "commission: must be >= 0");
  check(byzantine_rate >= 0.0 && byzantine_rate <= 1.0, "byzantine_rate: must lie in [0, 1]");
  check(invalid_block_rate >= 0.0 && invalid_block_rate <= 1.0,
        "invalid_block_rate: must lie in [0, 1]");
  check(baselines.participants >= 1, "baselines.participants: must be >= 1");
  check(baselines.rounds >= 1, "baselines.rounds: must be >= 1");
  const std::pair<const char*, const baselines::Distribution*> dists[] = {
      {"baselines.pow_power", &baselines.pow_power},
      {"baselines.pos_stake", &baselines.pos_stake},
      {"baselines.dpos_stake", &baselines.dpos_stake},
      {"baselines.dpos_reputation", &baselines.dpos_reputation}};
  for (const auto& [field, dist] : dists) {
    try {
      dist->validate();
    } catch (const std::exception& e) {
      errors.push_back(std::string(field) + ": " + e.what());
    }
  }
  if (baselines.dpos_reputation.kind == baselines::Distribution::Kind::Uniform) {
    check(baselines.dpos_reputation.p2 <= 1.0, "baselines.dpos_reputation: values must not exceed 1");
  }

  if (!errors.empty()) {
    std::ostringstream os;
    os << "invalid configuration:";
    for (const auto& e : errors) os << "\n  " << e;
    throw ConfigError(os.str());
  }
}

namespace {

void reject_unknown(const nlohmann::json& j, std::initializer_list<const char*> allowed,
                    const std::string& where) {
  std::set<std::string> known(allowed.begin(), allowed.end());
  for (const auto& [key, _] : j.items()) {
    if (!known.count(key)) throw ConfigError(where + key + ": unknown key");
  }
}

template <typename T>
void read(const nlohmann::json& j, const char* key, T& out, const std::string& where) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(where + key + ": " + e.what());
  }
}

void read_distribution(const nlohmann::json& j, const char* key, baselines::Distribution& out,
                       const std::string& where) {
  if (!j.contains(key)) return;
  try {
    out = baselines::distribution_from_json(j.at(key));
  } catch (const std::exception& e) {
    throw ConfigError(where + key + ": " + e.what());
  }
}

}  // namespace

ExperimentConfig config_from_json(const nlohmann::json& j, ExperimentConfig c) {
  if (!j.is_object()) throw ConfigError("config: expected a JSON object");
  reject_unknown(j,
                 {"experiment", "seed", "partition", "population", "rounds", "repetitions",
                  "reputation", "commission", "byzantine_rate", "invalid_block_rate",
                  "transactions_per_block", "baselines", "granularity", "audit", "threads"},
                 "");
  if (j.contains("experiment")) {
    c.experiment = experiment_from_string(j.at("experiment").get<std::string>());
  }
  read(j, "seed", c.seed, "");
  if (j.contains("partition")) {
    const auto& p = j.at("partition");
    reject_unknown(p, {"name", "labels", "lo", "hi", "triples"}, "partition.");
    read(p, "name", c.partition.name, "partition.");
    read(p, "labels", c.partition.labels, "partition.");
    read(p, "lo", c.partition.lo, "partition.");
    read(p, "hi", c.partition.hi, "partition.");
    read(p, "triples", c.partition.triples, "partition.");
  }
  read(j, "population", c.population, "");
  read(j, "rounds", c.rounds, "");
  read(j, "repetitions", c.repetitions, "");
  if (j.contains("reputation")) {
    const auto& r = j.at("reputation");
    reject_unknown(r, {"eta", "l_divisor", "epsilon"}, "reputation.");
    read(r, "eta", c.reputation.eta, "reputation.");
    read(r, "l_divisor", c.reputation.l_divisor, "reputation.");
    read(r, "epsilon", c.reputation.epsilon, "reputation.");
  }
  read(j, "commission", c.commission, "");
  read(j, "byzantine_rate", c.byzantine_rate, "");
  read(j, "invalid_block_rate", c.invalid_block_rate, "");
  read(j, "transactions_per_block", c.transactions_per_block, "");
  if (j.contains("baselines")) {
    const auto& b = j.at("baselines");
    reject_unknown(b, {"participants", "rounds", "pow_power", "pos_stake", "dpos_stake", "dpos_reputation"},
                   "baselines.");
    read(b, "participants", c.baselines.participants, "baselines.");
    read(b, "rounds", c.baselines.rounds, "baselines.");
    read_distribution(b, "pow_power", c.baselines.pow_power, "baselines.");
    read_distribution(b, "pos_stake", c.baselines.pos_stake, "baselines.");
    read_distribution(b, "dpos_stake", c.baselines.dpos_stake, "baselines.");
    read_distribution(b, "dpos_reputation", c.baselines.dpos_reputation, "baselines.");
  }
  if (j.contains("granularity")) {
    try {
      c.granularity = metrics::granularity_from_string(j.at("granularity").get<std::string>());
    } catch (const std::exception& e) {
      throw ConfigError(std::string("granularity: ") + e.what());
    }
  }
  read(j, "audit", c.audit, "");
  read(j, "threads", c.threads, "");
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("config: " + path.string() + ": " + e.what());
  }
  ExperimentKind kind = ExperimentKind::Custom;
  if (j.is_object() && j.contains("experiment") && j.at("experiment").is_string()) {
    kind = experiment_from_string(j.at("experiment").get<std::string>());
  }
  return config_from_json(j, ExperimentConfig::defaults(kind));
}

nlohmann::json to_json(const ExperimentConfig& c) {
  nlohmann::json partition = {{"name", c.partition.name},
                              {"labels", c.partition.labels},
                              {"lo", c.partition.lo},
                              {"hi", c.partition.hi}};
  if (!c.partition.triples.empty()) partition["triples"] = c.partition.triples;
  return {{"experiment", to_string(c.experiment)},
          {"seed", c.seed},
          {"partition", std::move(partition)},
          {"population", c.population},
          {"rounds", c.rounds},
          {"repetitions", c.repetitions},
          {"reputation",
           {{"eta", c.reputation.eta},
            {"l_divisor", c.reputation.l_divisor},
            {"epsilon", c.reputation.epsilon}}},
          {"commission", c.commission},
          {"byzantine_rate", c.byzantine_rate},
          {"invalid_block_rate", c.invalid_block_rate},
          {"transactions_per_block", c.transactions_per_block},
          {"baselines",
           {{"participants", c.baselines.participants},
            {"rounds", c.baselines.rounds},
            {"pow_power", baselines::to_json(c.baselines.pow_power)},
            {"pos_stake", baselines::to_json(c.baselines.pos_stake)},
            {"dpos_stake", baselines::to_json(c.baselines.dpos_stake)},
            {"dpos_reputation", baselines::to_json(c.baselines.dpos_reputation)}}},
          {"granularity", metrics::to_string(c.granularity)},
          {"audit", c.audit}};
}

}  // namespace fuzzychain::harness
