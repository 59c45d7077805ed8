#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include <nlohmann/json.hpp>

#include "fuzzychain/fuzzy.hpp"
#include "fuzzychain/ledger.hpp"
#include "fuzzychain/registry.hpp"
#include "fuzzychain/rng.hpp"

namespace fuzzychain::consensus {

using registry::Candidate;
using registry::LabelGroups;
using registry::ValidatorId;

/// Raised when no active validator is available to form a panel.
class NoPanelError : public std::runtime_error {
 public:
  NoPanelError() : std::runtime_error("no active validator available for the panel") {}
};

/// Minimum number of trusted fuzzy sets for n labels: floor((n - 2) / 2) + 1.
/// Throws std::invalid_argument for even n or n < 3.
int trusted_sets_required(int n);

/// Seats per label: one for each of the first n - 2 labels, two for the top two.
std::size_t seat_quota(std::size_t label, std::size_t label_count);

struct PanelMember {
  ValidatorId id;
  std::size_t label = 0;
  bool operator==(const PanelMember&) const = default;
};

/// Voters of one round. Always odd-sized with distinct, active members.
struct Panel {
  std::uint64_t round = 0;
  std::vector<PanelMember> members;

  std::size_t size() const { return members.size(); }
  bool contains(ValidatorId id) const;
};

/// Uniform draw of each label's quota. If the result has even size, one extra
/// member is drawn from the highest label with spare members, or failing that
/// the last pick of the lowest label with picks is dropped.
Panel select_first_round(const LabelGroups& groups, Rng& rng);

struct Subsets {
  std::vector<Candidate> full_reputation;  // A: reputation exactly 1
  std::vector<Candidate> all;              // B: the whole group
};

Subsets build_subsets(std::span<const Candidate> group);

/// Reputation-aware selection for rounds after the first. Per label: up to
/// two uniform picks from A and one reputation-weighted pick from B form a
/// pool (deduplicated, topped up from B by reputation when smaller than the
/// quota); the quota is then drawn uniformly from the pool. Parity is
/// repaired as in select_first_round, with reputation-weighted extra draws.
Panel select_round_j(const LabelGroups& groups, Rng& rng, std::uint64_t round = 2);

enum class Vote { Accepted, Rejected };

/// Every panel member independently inverts the honest vote with this
/// probability.
struct ByzantineModel {
  double byzantine_rate = 0.0;
  void validate() const;
};

struct CastVote {
  ValidatorId id;
  Vote vote = Vote::Accepted;
  bool operator==(const CastVote&) const = default;
};

std::vector<CastVote> cast_votes(const Panel& panel, bool block_is_valid,
                                 const ByzantineModel& model, Rng& rng);

struct Tally {
  Vote decision = Vote::Accepted;
  std::vector<ValidatorId> successful;
  std::vector<ValidatorId> unsuccessful;
};

/// Strict majority. An even or empty vote list is a logic error.
Tally tally(std::span<const CastVote> votes);

/// Uniform member of the successful set; throws on an empty set.
ValidatorId pick_winner(std::span<const ValidatorId> successful, Rng& rng);

struct ReputationChange {
  ValidatorId id;
  double before = 0.0;
  double after = 0.0;
};

struct RoundOutcome {
  std::uint64_t round = 0;
  Panel panel;
  std::vector<CastVote> votes;
  Vote decision = Vote::Accepted;
  std::vector<ValidatorId> successful;
  std::vector<ValidatorId> unsuccessful;
  ValidatorId winner;
  std::size_t winner_label = 0;
  std::vector<ReputationChange> reputation_changes;
  std::vector<ValidatorId> expelled;
  ledger::Rejection block_check = ledger::Rejection::None;
  bool appended = false;
};

/// One random stream per consumer so that, e.g., changing the Byzantine rate
/// never shifts the selection draws.
struct RoundStreams {
  Rng selection;
  Rng votes;
  Rng winner;

  static RoundStreams derive(const Rng& base);
};

struct RoundConfig {
  registry::ReputationParams reputation;
  ByzantineModel byzantine;
  double commission = 0.05;
};

/// Scaling, selection, voting and settlement for round `round` (1-based).
/// The block is appended to the chain only when the panel accepts it and it
/// validates against the chain tip.
RoundOutcome run_round(registry::Registry& reg, ledger::Chain& chain,
                       const fuzzy::LinguisticVariable& var, const ledger::Block& block,
                       const RoundConfig& config, std::uint64_t round, RoundStreams& streams);

nlohmann::json to_json(const RoundOutcome& outcome, const fuzzy::LinguisticVariable& var);

}  // namespace fuzzychain::consensus
