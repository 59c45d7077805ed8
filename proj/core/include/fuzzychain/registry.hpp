#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "fuzzychain/crypto.hpp"
#include "fuzzychain/fuzzy.hpp"
#include "fuzzychain/rng.hpp"

namespace fuzzychain::registry {

struct ValidatorId {
  std::uint64_t value = 0;
  auto operator<=>(const ValidatorId&) const = default;
};

enum class Status { Active, Expelled };
enum class Outcome { Successful, Unsuccessful };

/// Reputation comparisons (rep == 1, E > epsilon) use this absolute tolerance.
inline constexpr double kReputationTolerance = 1e-9;

struct ReputationParams {
  double eta = 0.1;                // decrease per unsuccessful vote
  std::uint32_t l_divisor = 20;    // increase is eta / l_divisor
  double epsilon = 0.25;           // expulsion threshold on 1 - reputation

  /// Throws std::invalid_argument unless 0 < eta <= 1, l_divisor >= 1 and
  /// 0 <= epsilon < 1.
  void validate() const;
  double increase() const { return eta / static_cast<double>(l_divisor); }
};

struct Validator {
  ValidatorId id;
  crypto::VerifyKey verify_key;
  double stake = 0.0;
  double reputation = 1.0;
  std::size_t label = 0;  // zero-based index into the linguistic variable
  Status status = Status::Active;

  bool active() const { return status == Status::Active; }
};

/// Successful voters gain eta/l (holding at 1), unsuccessful ones lose eta;
/// the result is clamped to [0, 1].
double update_reputation(double rep, Outcome outcome, const ReputationParams& params);

/// 0 at full reputation, 1 - rep otherwise.
double expulsion_rate(double rep);

/// Marks v expelled when its expulsion rate exceeds epsilon.
Validator apply_exclusion(Validator v, const ReputationParams& params);

/// Adds amount to the stake and re-labels from the clamped stake.
Validator apply_commission(Validator v, double amount, const fuzzy::LinguisticVariable& var);

/// Selection view of an active validator.
struct Candidate {
  ValidatorId id;
  double reputation = 1.0;
};

/// Active validators bucketed by label, in id order within each bucket.
using LabelGroups = std::vector<std::vector<Candidate>>;

/// The validator population. Ids are dense and assigned in admission order.
class Registry {
 public:
  /// New validator at full reputation with a keypair drawn from rng.
  const Validator& admit(double stake, const fuzzy::LinguisticVariable& var, Rng& rng);
  const Validator& admit(double stake, const fuzzy::LinguisticVariable& var, crypto::KeyPair keys);

  std::size_t size() const { return validators_.size(); }
  std::size_t active_count() const;
  std::span<const Validator> validators() const { return validators_; }

  const Validator& get(ValidatorId id) const;
  Validator& get(ValidatorId id);
  const crypto::SigningKey& signing_key(ValidatorId id) const;

  /// Re-derives every active validator's label from its current stake.
  void rescale(const fuzzy::LinguisticVariable& var);

  LabelGroups groups(std::size_t label_count) const;

  nlohmann::json snapshot(const fuzzy::LinguisticVariable& var) const;

 private:
  std::vector<Validator> validators_;
  std::vector<crypto::SigningKey> keys_;
};

}  // namespace fuzzychain::registry
