#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string_view>

namespace fuzzychain {

/// Seeded random stream. Wraps mt19937_64 and implements its own variate
/// transforms so that a seed yields the same numbers on every standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const { return seed_; }

  /// Independent sub-stream keyed by a purpose label and up to two indices.
  /// Only depends on this stream's seed, never on how many draws were made.
  Rng derive(std::string_view purpose, std::uint64_t a = 0, std::uint64_t b = 0) const;

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform in [0, 1) with 53 bits of resolution.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform in [0, n). n must be positive.
  std::size_t index(std::size_t n);

  bool bernoulli(double p) { return uniform() < p; }

  double exponential(double rate);
  double normal();
  double lognormal(double mu, double sigma);
  double pareto(double shape, double scale);

  /// Index drawn with probability weights[i] / sum(weights). Falls back to a
  /// uniform draw when every weight is zero.
  std::size_t weighted_index(std::span<const double> weights);

  void fill(std::span<std::uint8_t> out);

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace fuzzychain
