#include <cmath>
#include <set>
#include <stdexcept>

#include "doctest.h"
#include "fuzzychain/fuzzy.hpp"
#include "fuzzychain/registry.hpp"
#include "fuzzychain/rng.hpp"

using namespace fuzzychain;
using namespace fuzzychain::registry;

namespace {

fuzzy::LinguisticVariable five_labels() {
  return fuzzy::make_uniform_partition("stake", {"VL", "L", "M", "H", "VH"}, 0.0, 10.0);
}

constexpr double kExact = 1e-12;

}  // namespace

TEST_SUITE("registry") {

TEST_CASE("reputation update cases") {
  const ReputationParams p;
  CHECK(update_reputation(1.0, Outcome::Successful, p) == 1.0);
  CHECK(std::abs(update_reputation(0.9, Outcome::Successful, p) - 0.905) < kExact);
  CHECK(std::abs(update_reputation(0.95, Outcome::Unsuccessful, p) - 0.85) < kExact);
  CHECK(update_reputation(0.05, Outcome::Unsuccessful, p) == 0.0);
  CHECK(update_reputation(0.999, Outcome::Successful, p) == 1.0);
}

TEST_CASE("reputation stays in the unit interval under random outcome sequences") {
  const ReputationParams p;
  Rng rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    double rep = 1.0;
    for (int step = 0; step < 200; ++step) {
      rep = update_reputation(rep, rng.bernoulli(0.3) ? Outcome::Unsuccessful : Outcome::Successful, p);
      REQUIRE(rep >= 0.0);
      REQUIRE(rep <= 1.0);
    }
  }
}

TEST_CASE("one failure takes l_divisor successes to undo") {
  for (std::uint32_t l : {1u, 5u, 20u}) {
    ReputationParams p;
    p.l_divisor = l;
    double rep = update_reputation(0.9, Outcome::Unsuccessful, p);
    CHECK(std::abs(rep - 0.8) < kExact);
    for (std::uint32_t i = 0; i + 1 < l; ++i) {
      rep = update_reputation(rep, Outcome::Successful, p);
      CHECK(rep < 0.9 - 1e-6);
    }
    rep = update_reputation(rep, Outcome::Successful, p);
    CHECK(std::abs(rep - 0.9) < 1e-9);
  }
}

TEST_CASE("full recovery lands exactly on one") {
  const ReputationParams p;
  double rep = update_reputation(1.0, Outcome::Unsuccessful, p);
  for (int i = 0; i < 20; ++i) rep = update_reputation(rep, Outcome::Successful, p);
  CHECK(rep == 1.0);
  CHECK(expulsion_rate(rep) == 0.0);
}

TEST_CASE("expulsion rate") {
  CHECK(expulsion_rate(1.0) == 0.0);
  CHECK(std::abs(expulsion_rate(0.7) - 0.3) < kExact);
  CHECK(expulsion_rate(0.0) == 1.0);
}

TEST_CASE("exclusion against the threshold") {
  const ReputationParams p;  // epsilon 0.25
  Validator v;
  v.reputation = 0.7;
  CHECK(apply_exclusion(v, p).status == Status::Expelled);
  v.reputation = 0.8;
  CHECK(apply_exclusion(v, p).status == Status::Active);
  v.reputation = 0.75;
  CHECK(apply_exclusion(v, p).status == Status::Active);
  v.reputation = 1.0;
  for (double eps : {0.0, 0.25, 0.9}) {
    ReputationParams q;
    q.epsilon = eps;
    CHECK(apply_exclusion(v, q).status == Status::Active);
  }
}

TEST_CASE("exclusion is idempotent") {
  const ReputationParams p;
  Rng rng(8);
  for (int i = 0; i < 500; ++i) {
    Validator v;
    v.reputation = rng.uniform();
    const auto once = apply_exclusion(v, p);
    const auto twice = apply_exclusion(once, p);
    CHECK(once.status == twice.status);
    CHECK(once.reputation == twice.reputation);
  }
}

TEST_CASE("parameter validation") {
  ReputationParams p;
  CHECK_NOTHROW(p.validate());
  p.eta = 0.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = {};
  p.eta = 1.5;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = {};
  p.l_divisor = 0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = {};
  p.epsilon = 1.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p.epsilon = -0.1;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}

TEST_CASE("commission moves stake and relabels") {
  const auto var = five_labels();
  Validator v;
  v.stake = 7.4;
  v.label = var.index_of("H");
  auto same = apply_commission(v, 0.0, var);
  CHECK(same.stake == 7.4);
  CHECK(var.label(same.label) == "H");

  v.stake = 6.0;
  v.label = var.index_of("M");
  const auto moved = apply_commission(v, 0.5, var);
  CHECK(moved.stake == doctest::Approx(6.5));
  CHECK(var.label(moved.label) == "H");

  v.stake = 9.9;
  const auto over = apply_commission(v, 5.0, var);
  CHECK(over.stake == doctest::Approx(14.9));
  CHECK(var.label(over.label) == "VH");

  CHECK_THROWS_AS(apply_commission(v, -1.0, var), std::invalid_argument);
}

TEST_CASE("admission") {
  const auto var = five_labels();
  Registry reg;
  Rng rng(1);
  const auto& a = reg.admit(6.0, var, rng);
  CHECK(a.reputation == 1.0);
  CHECK(a.active());
  CHECK(var.label(a.label) == "M");
  CHECK(a.verify_key.bytes.size() == 33);
  const auto& b = reg.admit(0.0, var, rng);
  CHECK(var.label(b.label) == "VL");
  CHECK(b.reputation == 1.0);
  CHECK(reg.get(ValidatorId{0}).id != reg.get(ValidatorId{1}).id);
  CHECK(reg.get(ValidatorId{0}).verify_key != reg.get(ValidatorId{1}).verify_key);
  CHECK(reg.get(ValidatorId{0}).verify_key == reg.signing_key(ValidatorId{0}).verify_key());
  CHECK_THROWS_AS(reg.admit(-1.0, var, rng), std::invalid_argument);
  CHECK_THROWS_AS(reg.get(ValidatorId{9}), std::out_of_range);
}

TEST_CASE("groups hold active validators by label in id order") {
  const auto var = five_labels();
  Registry reg;
  Rng rng(2);
  for (double s : {0.5, 9.5, 0.7, 5.0, 9.0}) reg.admit(s, var, rng);
  reg.get(ValidatorId{2}).status = Status::Expelled;
  const auto groups = reg.groups(var.size());
  REQUIRE(groups.size() == 5);
  REQUIRE(groups[0].size() == 1);
  CHECK(groups[0][0].id == ValidatorId{0});
  CHECK(groups[2].size() == 1);
  REQUIRE(groups[4].size() == 2);
  CHECK(groups[4][0].id < groups[4][1].id);
  CHECK(reg.active_count() == 4);

  std::set<std::uint64_t> seen;
  for (const auto& g : groups)
    for (const auto& c : g) seen.insert(c.id.value);
  CHECK(seen.count(2) == 0);
}

TEST_CASE("rescale relabels active validators from their stake") {
  const auto var = five_labels();
  Registry reg;
  Rng rng(4);
  reg.admit(1.0, var, rng);
  reg.get(ValidatorId{0}).stake = 8.0;
  reg.rescale(var);
  CHECK(var.label(reg.get(ValidatorId{0}).label) == "H");
}

TEST_CASE("snapshot lists every validator") {
  const auto var = five_labels();
  Registry reg;
  Rng rng(6);
  reg.admit(2.0, var, rng);
  reg.admit(8.0, var, rng);
  reg.get(ValidatorId{1}).status = Status::Expelled;
  const auto snap = reg.snapshot(var);
  REQUIRE(snap.size() == 2);
  CHECK(snap[0]["label"] == "L");
  CHECK(snap[1]["status"] == "expelled");
  CHECK(snap[0]["reputation"] == 1.0);
}

}  // TEST_SUITE
