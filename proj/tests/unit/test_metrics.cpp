#include <cmath>
#include <numeric>
#include <vector>

#include "doctest.h"
#include "fuzzychain/metrics.hpp"
#include "fuzzychain/rng.hpp"

using namespace fuzzychain;
using namespace fuzzychain::metrics;

namespace {

double gini_double_sum(const std::vector<double>& x) {
  const double n = static_cast<double>(x.size());
  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / n;
  double s = 0.0;
  for (double a : x)
    for (double b : x) s += std::abs(a - b);
  return s / (2.0 * n * n * mean);
}

double central_moment(const std::vector<double>& x, int k) {
  const double n = static_cast<double>(x.size());
  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / n;
  double s = 0.0;
  for (double v : x) s += std::pow(v - mean, k);
  return s / n;
}

double skew_oracle(const std::vector<double>& x) {
  return central_moment(x, 3) / std::pow(central_moment(x, 2), 1.5);
}

double kurt_oracle(const std::vector<double>& x) {
  const double m2 = central_moment(x, 2);
  return central_moment(x, 4) / (m2 * m2) - 3.0;
}

std::vector<double> random_vector(Rng& rng, std::size_t n) {
  std::vector<double> x(n);
  for (auto& v : x) v = static_cast<double>(rng.index(50));
  return x;
}

}  // namespace

TEST_SUITE("metrics") {

TEST_CASE("gini reference values") {
  CHECK(gini(std::vector<double>{5, 5, 5, 5}) == doctest::Approx(0.0));
  CHECK(std::abs(gini(std::vector<double>{1, 0, 0, 0}) - 0.75) < 1e-12);
  CHECK(gini_double_sum({1, 0, 0, 0}) == 0.75);
  const std::vector<double> table{46, 45, 35, 83, 91};
  CHECK(std::abs(gini(table) - gini_double_sum(table)) < 1e-12);
  CHECK(gini(table) == doctest::Approx(0.2).epsilon(0.05));
  CHECK(gini(std::vector<double>{7}) == 0.0);
}

TEST_CASE("gini rejects undefined inputs") {
  CHECK_THROWS_AS(gini(std::vector<double>{0, 0, 0}), UndefinedInput);
  CHECK_THROWS_AS(gini(std::vector<double>{}), UndefinedInput);
  CHECK_THROWS_AS(gini(std::vector<double>{1, -1}), UndefinedInput);
}

TEST_CASE("gini agrees with the double sum, is scale invariant and respects transfers") {
  Rng rng(1);
  int checked = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    auto x = random_vector(rng, 2 + rng.index(8));
    if (std::accumulate(x.begin(), x.end(), 0.0) == 0.0) x[0] = 1;
    const double g = gini(x);
    CHECK(std::abs(g - gini_double_sum(x)) < 1e-12);
    CHECK(g >= 0.0);
    CHECK(g < 1.0);

    const double c = 0.5 + 10.0 * rng.uniform();
    std::vector<double> scaled(x);
    for (auto& v : scaled) v *= c;
    CHECK(std::abs(gini(scaled) - g) < 1e-12);

    // Move one unit from a richer entry to a poorer one without crossing.
    std::size_t rich = 0, poor = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] > x[rich]) rich = i;
      if (x[i] < x[poor]) poor = i;
    }
    const double d = std::floor((x[rich] - x[poor]) / 2.0);
    if (d >= 1.0) {
      std::vector<double> moved(x);
      moved[rich] -= d;
      moved[poor] += d;
      CHECK(gini_double_sum(moved) <= gini_double_sum(x) + 1e-12);
      CHECK(gini(moved) <= g + 1e-12);
      ++checked;
    }
  }
  CHECK(checked > 500);
}

TEST_CASE("skewness reference values") {
  CHECK(std::abs(skewness(std::vector<double>{1, 2, 3})) < 1e-12);
  CHECK(std::abs(skewness(std::vector<double>{0, 0, 1}) - 1.0 / std::sqrt(2.0)) < 1e-12);
  CHECK(std::abs(skewness(std::vector<double>{0, 1, 1}) + 1.0 / std::sqrt(2.0)) < 1e-12);
  CHECK_THROWS_AS(skewness(std::vector<double>{3, 3, 3}), UndefinedInput);
  CHECK_THROWS_AS(skewness(std::vector<double>{3}), UndefinedInput);
}

TEST_CASE("kurtosis reference values") {
  CHECK(std::abs(kurtosis(std::vector<double>{0, 1, 0, 1}) + 2.0) < 1e-12);
  CHECK(kurtosis(std::vector<double>{0, 0, 0, 1, 0, 0, 0}) > 0.0);
  CHECK(std::abs(kurtosis(std::vector<double>{0, 0, 0, 1, 0, 0, 0}) -
                 kurt_oracle({0, 0, 0, 1, 0, 0, 0})) < 1e-12);
  CHECK_THROWS_AS(kurtosis(std::vector<double>{2, 2}), UndefinedInput);
}

TEST_CASE("moments match the oracle and ignore positive affine maps") {
  Rng rng(2);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto x = random_vector(rng, 3 + rng.index(10));
    if (central_moment(x, 2) == 0.0) continue;
    const double s = skewness(x);
    const double k = kurtosis(x);
    CHECK(std::abs(s - skew_oracle(x)) < 1e-9);
    CHECK(std::abs(k - kurt_oracle(x)) < 1e-9);

    std::vector<double> y(x);
    const double a = 0.1 + 5.0 * rng.uniform();
    const double b = 100.0 * rng.uniform() - 50.0;
    for (auto& v : y) v = a * v + b;
    CHECK(std::abs(skewness(y) - s) < 1e-9);
    CHECK(std::abs(kurtosis(y) - k) < 1e-9);

    std::vector<double> mirrored(x);
    for (auto& v : mirrored) v = -v;
    CHECK(std::abs(skewness(mirrored) + s) < 1e-9);
  }
}

TEST_CASE("report over a frequency table") {
  FrequencyTable t;
  t.entries = {{"VL", 14}, {"L", 15}, {"M", 14}, {"H", 28}, {"VH", 29}};
  CHECK(t.total() == 100);
  CHECK(t.counts() == std::vector<double>{14, 15, 14, 28, 29});
  const auto m = compute(t);
  CHECK(m.gini == doctest::Approx(gini_double_sum(t.counts())));
  CHECK(m.skewness == doctest::Approx(skew_oracle(t.counts())));
  CHECK(m.kurtosis_excess == doctest::Approx(kurt_oracle(t.counts())));
  const auto j = to_json(m);
  CHECK(j.contains("gini"));
  CHECK(j.contains("skewness"));
  CHECK(j.contains("kurtosis_excess"));
}

TEST_CASE("granularity names") {
  CHECK(to_string(Granularity::PerLabel) == "per-label");
  CHECK(to_string(Granularity::PerParticipant) == "per-participant");
  CHECK(granularity_from_string("per-participant") == Granularity::PerParticipant);
  CHECK_THROWS(granularity_from_string("per-block"));
}

}  // TEST_SUITE
