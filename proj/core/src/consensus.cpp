#include "fuzzychain/consensus.hpp"

#include <algorithm>
#include <string>

namespace fuzzychain::consensus {

int trusted_sets_required(int n) {
  if (n < 3 || n % 2 == 0) throw std::invalid_argument("odd label count required");
  return (n - 2) / 2 + 1;
}

std::size_t seat_quota(std::size_t label, std::size_t label_count) {
  return label + 2 >= label_count ? 2 : 1;
}

bool Panel::contains(ValidatorId id) const {
  return std::any_of(members.begin(), members.end(),
                     [&](const PanelMember& m) { return m.id == id; });
}

namespace {

enum class DrawRule { Uniform, ByReputation };

Candidate take(std::vector<Candidate>& from, std::size_t i) {
  Candidate c = from[i];
  from.erase(from.begin() + static_cast<std::ptrdiff_t>(i));
  return c;
}

Candidate draw(std::vector<Candidate>& from, DrawRule rule, Rng& rng) {
  if (rule == DrawRule::Uniform) return take(from, rng.index(from.size()));
  std::vector<double> weights;
  weights.reserve(from.size());
  for (const auto& c : from) weights.push_back(c.reputation);
  return take(from, rng.weighted_index(weights));
}

bool contains(const std::vector<Candidate>& v, ValidatorId id) {
  return std::any_of(v.begin(), v.end(), [&](const Candidate& c) { return c.id == id; });
}

// Per-label selection state: the members still available and those picked.
struct LabelDraw {
  std::vector<Candidate> remaining;
  std::vector<Candidate> picked;
};

Panel assemble(std::vector<LabelDraw>& draws, DrawRule repair_rule, Rng& rng,
               std::uint64_t round) {
  std::size_t total = 0;
  for (const auto& d : draws) total += d.picked.size();
  if (total == 0) throw NoPanelError();

  if (total % 2 == 0) {
    auto spare = std::find_if(draws.rbegin(), draws.rend(),
                              [](const LabelDraw& d) { return !d.remaining.empty(); });
    if (spare != draws.rend()) {
      spare->picked.push_back(draw(spare->remaining, repair_rule, rng));
    } else {
      auto lowest = std::find_if(draws.begin(), draws.end(),
                                 [](const LabelDraw& d) { return !d.picked.empty(); });
      lowest->remaining.push_back(lowest->picked.back());
      lowest->picked.pop_back();
    }
  }

  Panel panel;
  panel.round = round;
  for (std::size_t label = 0; label < draws.size(); ++label) {
    for (const auto& c : draws[label].picked) panel.members.push_back({c.id, label});
  }
  return panel;
}

}  // namespace

Panel select_first_round(const LabelGroups& groups, Rng& rng) {
  std::vector<LabelDraw> draws(groups.size());
  for (std::size_t label = 0; label < groups.size(); ++label) {
    auto& d = draws[label];
    d.remaining = groups[label];
    const std::size_t k = std::min(seat_quota(label, groups.size()), d.remaining.size());
    for (std::size_t i = 0; i < k; ++i) d.picked.push_back(draw(d.remaining, DrawRule::Uniform, rng));
  }
  return assemble(draws, DrawRule::Uniform, rng, 1);
}

Subsets build_subsets(std::span<const Candidate> group) {
  Subsets s;
  s.all.assign(group.begin(), group.end());
  for (const auto& c : group) {
    if (c.reputation >= 1.0 - registry::kReputationTolerance) s.full_reputation.push_back(c);
  }
  return s;
}

Panel select_round_j(const LabelGroups& groups, Rng& rng, std::uint64_t round) {
  std::vector<LabelDraw> draws(groups.size());
  for (std::size_t label = 0; label < groups.size(); ++label) {
    auto& d = draws[label];
    d.remaining = groups[label];
    if (d.remaining.empty()) continue;

    Subsets subsets = build_subsets(groups[label]);
    std::vector<Candidate> pool;
    for (int i = 0; i < 2 && !subsets.full_reputation.empty(); ++i) {
      pool.push_back(draw(subsets.full_reputation, DrawRule::Uniform, rng));
    }
    std::vector<Candidate> b = subsets.all;
    const Candidate b_pick = draw(b, DrawRule::ByReputation, rng);
    if (!contains(pool, b_pick.id)) pool.push_back(b_pick);

    const std::size_t quota = std::min(seat_quota(label, groups.size()), groups[label].size());
    std::erase_if(b, [&](const Candidate& c) { return contains(pool, c.id); });
    while (pool.size() < quota && !b.empty()) pool.push_back(draw(b, DrawRule::ByReputation, rng));

    for (std::size_t i = 0; i < quota; ++i) d.picked.push_back(draw(pool, DrawRule::Uniform, rng));
    std::erase_if(d.remaining, [&](const Candidate& c) { return contains(d.picked, c.id); });
  }
  return assemble(draws, DrawRule::ByReputation, rng, round);
}

void ByzantineModel::validate() const {
  if (!(byzantine_rate >= 0.0 && byzantine_rate <= 1.0)) {
    throw std::invalid_argument("byzantine_rate must lie in [0, 1]");
  }
}

std::vector<CastVote> cast_votes(const Panel& panel, bool block_is_valid,
                                 const ByzantineModel& model, Rng& rng) {
  const Vote honest = block_is_valid ? Vote::Accepted : Vote::Rejected;
  const Vote inverted = block_is_valid ? Vote::Rejected : Vote::Accepted;
  std::vector<CastVote> votes;
  votes.reserve(panel.size());
  for (const auto& m : panel.members) {
    // One draw per member regardless of the rate keeps the stream aligned.
    const bool byzantine = rng.bernoulli(model.byzantine_rate);
    votes.push_back({m.id, byzantine ? inverted : honest});
  }
  return votes;
}

Tally tally(std::span<const CastVote> votes) {
  if (votes.empty() || votes.size() % 2 == 0) {
    throw std::logic_error("tally requires an odd number of votes, got " +
                           std::to_string(votes.size()));
  }
  const auto accepted = static_cast<std::size_t>(std::count_if(
      votes.begin(), votes.end(), [](const CastVote& v) { return v.vote == Vote::Accepted; }));
  Tally t;
  t.decision = 2 * accepted > votes.size() ? Vote::Accepted : Vote::Rejected;
  for (const auto& v : votes) {
    (v.vote == t.decision ? t.successful : t.unsuccessful).push_back(v.id);
  }
  return t;
}

ValidatorId pick_winner(std::span<const ValidatorId> successful, Rng& rng) {
  if (successful.empty()) throw std::invalid_argument("pick_winner: no successful validator");
  return successful[rng.index(successful.size())];
}

RoundStreams RoundStreams::derive(const Rng& base) {
  return RoundStreams{base.derive("selection"), base.derive("votes"), base.derive("winner")};
}

RoundOutcome run_round(registry::Registry& reg, ledger::Chain& chain,
                       const fuzzy::LinguisticVariable& var, const ledger::Block& block,
                       const RoundConfig& config, std::uint64_t round, RoundStreams& streams) {
  reg.rescale(var);
  const LabelGroups groups = reg.groups(var.size());

  RoundOutcome out;
  out.round = round;
  out.panel = round <= 1 ? select_first_round(groups, streams.selection)
                         : select_round_j(groups, streams.selection, round);

  out.block_check = chain.validate(block);
  const bool valid = out.block_check == ledger::Rejection::None;
  out.votes = cast_votes(out.panel, valid, config.byzantine, streams.votes);

  Tally t = tally(out.votes);
  out.decision = t.decision;
  out.successful = std::move(t.successful);
  out.unsuccessful = std::move(t.unsuccessful);

  auto settle = [&](ValidatorId id, registry::Outcome outcome) {
    auto& v = reg.get(id);
    const double before = v.reputation;
    v.reputation = registry::update_reputation(before, outcome, config.reputation);
    v = registry::apply_exclusion(v, config.reputation);
    out.reputation_changes.push_back({id, before, v.reputation});
    if (!v.active()) out.expelled.push_back(id);
  };
  for (auto id : out.successful) settle(id, registry::Outcome::Successful);
  for (auto id : out.unsuccessful) settle(id, registry::Outcome::Unsuccessful);

  out.winner = pick_winner(out.successful, streams.winner);
  for (const auto& m : out.panel.members) {
    if (m.id == out.winner) out.winner_label = m.label;
  }
  auto& winner = reg.get(out.winner);
  winner = registry::apply_commission(winner, config.commission, var);

  if (out.decision == Vote::Accepted && valid) {
    out.appended = chain.append(block) == ledger::Rejection::None;
  }
  return out;
}

nlohmann::json to_json(const RoundOutcome& o, const fuzzy::LinguisticVariable& var) {
  auto vote_name = [](Vote v) { return v == Vote::Accepted ? "accepted" : "rejected"; };
  nlohmann::json panel = nlohmann::json::array();
  for (const auto& m : o.panel.members) panel.push_back({{"id", m.id.value}, {"label", var.label(m.label)}});
  nlohmann::json votes = nlohmann::json::array();
  for (const auto& v : o.votes) votes.push_back({{"id", v.id.value}, {"vote", vote_name(v.vote)}});
  nlohmann::json deltas = nlohmann::json::array();
  for (const auto& c : o.reputation_changes) {
    deltas.push_back({{"id", c.id.value}, {"before", c.before}, {"after", c.after}});
  }
  nlohmann::json expelled = nlohmann::json::array();
  for (auto id : o.expelled) expelled.push_back(id.value);
  return {{"round", o.round},
          {"panel", std::move(panel)},
          {"votes", std::move(votes)},
          {"decision", vote_name(o.decision)},
          {"winner", o.winner.value},
          {"winner_label", var.label(o.winner_label)},
          {"reputation_changes", std::move(deltas)},
          {"expelled", std::move(expelled)},
          {"block_check", std::string(ledger::to_string(o.block_check))},
          {"appended", o.appended}};
}

}  // namespace fuzzychain::consensus
