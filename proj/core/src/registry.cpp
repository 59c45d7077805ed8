#include "fuzzychain/registry.hpp"

#include <algorithm>
#include <stdexcept>

namespace fuzzychain::registry {

void ReputationParams::validate() const {
  if (!(eta > 0.0 && eta <= 1.0)) throw std::invalid_argument("eta must lie in (0, 1]");
  if (l_divisor < 1) throw std::invalid_argument("l_divisor must be at least 1");
  if (!(epsilon >= 0.0 && epsilon < 1.0)) throw std::invalid_argument("epsilon must lie in [0, 1)");
}

double update_reputation(double rep, Outcome outcome, const ReputationParams& params) {
  if (outcome == Outcome::Unsuccessful) return std::max(0.0, rep - params.eta);
  if (rep >= 1.0 - kReputationTolerance) return 1.0;
  const double next = rep + params.increase();
  // Snap so that a fully recovered validator is exactly 1 again.
  return next >= 1.0 - kReputationTolerance ? 1.0 : next;
}

double expulsion_rate(double rep) {
  if (rep >= 1.0 - kReputationTolerance) return 0.0;
  return 1.0 - rep;
}

Validator apply_exclusion(Validator v, const ReputationParams& params) {
  if (v.active() && expulsion_rate(v.reputation) > params.epsilon + kReputationTolerance) {
    v.status = Status::Expelled;
  }
  return v;
}

Validator apply_commission(Validator v, double amount, const fuzzy::LinguisticVariable& var) {
  if (!(amount >= 0.0)) throw std::invalid_argument("commission must be non-negative");
  v.stake += amount;
  v.label = fuzzy::hmdf(var, var.clamp(v.stake)).label_index;
  return v;
}

const Validator& Registry::admit(double stake, const fuzzy::LinguisticVariable& var, Rng& rng) {
  return admit(stake, var, crypto::new_keypair(rng));
}

const Validator& Registry::admit(double stake, const fuzzy::LinguisticVariable& var,
                                 crypto::KeyPair keys) {
  if (!(stake >= 0.0)) throw std::invalid_argument("stake must be non-negative");
  Validator v;
  v.id = ValidatorId{validators_.size()};
  v.verify_key = std::move(keys.verify);
  v.stake = stake;
  v.label = fuzzy::hmdf(var, var.clamp(stake)).label_index;
  validators_.push_back(std::move(v));
  keys_.push_back(std::move(keys.signing));
  return validators_.back();
}

std::size_t Registry::active_count() const {
  return static_cast<std::size_t>(
      std::count_if(validators_.begin(), validators_.end(), [](const Validator& v) { return v.active(); }));
}

const Validator& Registry::get(ValidatorId id) const {
  if (id.value >= validators_.size()) throw std::out_of_range("unknown validator id");
  return validators_[id.value];
}

Validator& Registry::get(ValidatorId id) {
  if (id.value >= validators_.size()) throw std::out_of_range("unknown validator id");
  return validators_[id.value];
}

const crypto::SigningKey& Registry::signing_key(ValidatorId id) const {
  if (id.value >= keys_.size()) throw std::out_of_range("unknown validator id");
  return keys_[id.value];
}

void Registry::rescale(const fuzzy::LinguisticVariable& var) {
  for (auto& v : validators_) {
    if (v.active()) v.label = fuzzy::hmdf(var, var.clamp(v.stake)).label_index;
  }
}

LabelGroups Registry::groups(std::size_t label_count) const {
  LabelGroups out(label_count);
  for (const auto& v : validators_) {
    if (!v.active()) continue;
    if (v.label >= label_count) throw std::out_of_range("validator label beyond label count");
    out[v.label].push_back(Candidate{v.id, v.reputation});
  }
  return out;
}

nlohmann::json Registry::snapshot(const fuzzy::LinguisticVariable& var) const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& v : validators_) {
    arr.push_back({{"id", v.id.value},
                   {"verify_key", crypto::to_hex(v.verify_key.bytes)},
                   {"stake", v.stake},
                   {"reputation", v.reputation},
                   {"label", var.label(v.label)},
                   {"status", v.active() ? "active" : "expelled"}});
  }
  return arr;
}

}  // namespace fuzzychain::registry
