#include <benchmark/benchmark.h>

#include <vector>

#include "fuzzychain/consensus.hpp"
#include "fuzzychain/crypto.hpp"
#include "fuzzychain/experiment.hpp"
#include "fuzzychain/fuzzy.hpp"
#include "fuzzychain/metrics.hpp"

using namespace fuzzychain;

namespace {

fuzzy::LinguisticVariable five_labels() {
  return fuzzy::make_uniform_partition("stake", {"VL", "L", "M", "H", "VH"}, 0.0, 10.0);
}

registry::LabelGroups population(std::size_t per_label, Rng& rng) {
  registry::LabelGroups groups(5);
  std::uint64_t id = 0;
  for (auto& g : groups) {
    for (std::size_t i = 0; i < per_label; ++i) {
      g.push_back({registry::ValidatorId{id++}, rng.bernoulli(0.7) ? 1.0 : 0.8 + 0.2 * rng.uniform()});
    }
  }
  return groups;
}

void BM_Hmdf(benchmark::State& state) {
  const auto var = five_labels();
  Rng rng(1);
  std::vector<double> xs(1024);
  for (auto& x : xs) x = rng.uniform(0.0, 10.0);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(fuzzy::hmdf(var, xs[i++ & 1023]));
}
BENCHMARK(BM_Hmdf);

void BM_SelectFirstRound(benchmark::State& state) {
  Rng rng(2);
  const auto groups = population(static_cast<std::size_t>(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(consensus::select_first_round(groups, rng));
}
BENCHMARK(BM_SelectFirstRound)->Arg(10)->Arg(200);

void BM_SelectRoundJ(benchmark::State& state) {
  Rng rng(3);
  const auto groups = population(static_cast<std::size_t>(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(consensus::select_round_j(groups, rng));
}
BENCHMARK(BM_SelectRoundJ)->Arg(10)->Arg(200);

void BM_SimulationStep(benchmark::State& state) {
  auto config = harness::ExperimentConfig::defaults(harness::ExperimentKind::Exp1);
  harness::Simulation sim(config, 4);
  for (auto _ : state) benchmark::DoNotOptimize(sim.step());
}
BENCHMARK(BM_SimulationStep);

void BM_Gini(benchmark::State& state) {
  Rng rng(5);
  std::vector<double> x(static_cast<std::size_t>(state.range(0)));
  for (auto& v : x) v = static_cast<double>(rng.index(100));
  for (auto _ : state) benchmark::DoNotOptimize(metrics::gini(x));
}
BENCHMARK(BM_Gini)->Arg(5)->Arg(100)->Arg(10000);

void BM_SignVerify(benchmark::State& state) {
  Rng rng(6);
  const auto keys = crypto::new_keypair(rng);
  const std::vector<std::uint8_t> msg(96, 0x5a);
  for (auto _ : state) {
    const auto sig = keys.signing.sign(msg);
    benchmark::DoNotOptimize(crypto::verify(keys.verify, msg, sig));
  }
}
BENCHMARK(BM_SignVerify);

}  // namespace

BENCHMARK_MAIN();
