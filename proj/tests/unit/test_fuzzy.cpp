#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "fuzzychain/fuzzy.hpp"
#include "fuzzychain/rng.hpp"

using namespace fuzzychain;
using namespace fuzzychain::fuzzy;

namespace {

LinguisticVariable five_labels() {
  return make_uniform_partition("stake", {"VL", "L", "M", "H", "VH"}, 0.0, 10.0);
}

// Straight transcription of the four-case triangle formula, used as an oracle.
double triangle(double a, double b, double c, double x) {
  if (x <= a || x >= c) return x == b ? 1.0 : 0.0;
  if (x <= b) return (x - a) / (b - a);
  return (c - x) / (c - b);
}

}  // namespace

TEST_SUITE("fuzzy") {

TEST_CASE("uniform partition puts peaks at equal spacing") {
  const auto var = five_labels();
  const std::vector<double> expected{0.0, 2.5, 5.0, 7.5, 10.0};
  const auto peaks = var.peaks();
  REQUIRE(peaks.size() == expected.size());
  for (std::size_t i = 0; i < peaks.size(); ++i) CHECK(peaks[i] == doctest::Approx(expected[i]));
  CHECK(var.functions().front().shape == Shape::ShoulderLeft);
  CHECK(var.functions().back().shape == Shape::ShoulderRight);
  CHECK(var.functions()[2].shape == Shape::Interior);
}

TEST_CASE("even or short label lists are rejected") {
  auto build = [](std::vector<std::string> labels) {
    return make_uniform_partition("x", std::move(labels), 0.0, 10.0);
  };
  try {
    build({"A", "B", "C", "D"});
    FAIL("expected rejection");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()) == "odd label count required");
  }
  CHECK_THROWS_AS(build({"A"}), std::invalid_argument);
  CHECK_THROWS_AS(build({}), std::invalid_argument);
  CHECK_THROWS_AS(make_uniform_partition("x", {"A", "B", "C"}, 5.0, 5.0), std::invalid_argument);
  CHECK_THROWS_AS(make_uniform_partition("x", {"A", "B", "C"}, 6.0, 5.0), std::invalid_argument);
}

TEST_CASE("explicit definitions are validated") {
  using MF = MembershipFunction;
  const std::vector<std::string> labels{"L", "M", "H"};
  SUBCASE("unbalanced but Ruspini") {
    LinguisticVariable var("x", labels, 0.0, 10.0,
                           {MF{0, 0, 2, Shape::ShoulderLeft}, MF{0, 2, 10, Shape::Interior},
                            MF{2, 10, 10, Shape::ShoulderRight}});
    CHECK(hmdf(var, 1.0).label_index == 0);
    CHECK(hmdf(var, 5.0).label_index == 1);
    CHECK(hmdf(var, 7.0).label_index == 2);
  }
  SUBCASE("degrees not summing to one") {
    CHECK_THROWS_AS(LinguisticVariable("x", labels, 0.0, 10.0,
                                       {MF{0, 0, 5, Shape::ShoulderLeft}, MF{0, 5, 10, Shape::Interior},
                                        MF{6, 10, 10, Shape::ShoulderRight}}),
                    std::invalid_argument);
  }
  SUBCASE("feet out of order") {
    CHECK_THROWS_AS(LinguisticVariable("x", labels, 0.0, 10.0,
                                       {MF{0, 0, 5, Shape::ShoulderLeft}, MF{5, 4, 10, Shape::Interior},
                                        MF{5, 10, 10, Shape::ShoulderRight}}),
                    std::invalid_argument);
  }
  SUBCASE("label and function counts differ") {
    CHECK_THROWS_AS(LinguisticVariable("x", labels, 0.0, 10.0, {MF{0, 0, 10, Shape::ShoulderLeft}}),
                    std::invalid_argument);
  }
}

TEST_CASE("membership follows the triangle formula") {
  const MembershipFunction mf{0.0, 2.5, 5.0, Shape::Interior};
  CHECK(membership(mf, 2.5) == 1.0);
  CHECK(membership(mf, 1.25) == doctest::Approx(0.5));
  CHECK(membership(mf, 6.0) == 0.0);
  CHECK(membership(mf, -1.0) == 0.0);

  Rng rng(11);
  for (int i = 0; i < 2000; ++i) {
    const double x = rng.uniform(-2.0, 7.0);
    CHECK(membership(mf, x) == doctest::Approx(triangle(0.0, 2.5, 5.0, x)).epsilon(1e-12));
  }
}

TEST_CASE("shoulders hold the outer flank at one") {
  const MembershipFunction left{0.0, 0.0, 2.5, Shape::ShoulderLeft};
  const MembershipFunction right{7.5, 10.0, 10.0, Shape::ShoulderRight};
  CHECK(membership(left, -3.0) == 1.0);
  CHECK(membership(left, 0.0) == 1.0);
  CHECK(membership(left, 1.25) == doctest::Approx(0.5));
  CHECK(membership(left, 2.5) == 0.0);
  CHECK(membership(right, 12.0) == 1.0);
  CHECK(membership(right, 8.75) == doctest::Approx(0.5));
  CHECK(membership(right, 7.0) == 0.0);
}

TEST_CASE("degrees sum to one and stay in range across the universe") {
  const auto var = five_labels();
  constexpr int kPoints = 10000;
  for (int k = 0; k <= kPoints; ++k) {
    const double x = 10.0 * k / kPoints;
    double sum = 0.0;
    for (const auto& mf : var.functions()) {
      const double mu = membership(mf, x);
      CHECK(mu >= 0.0);
      CHECK(mu <= 1.0);
      sum += mu;
    }
    CHECK(std::abs(sum - 1.0) <= 1e-9);
  }
}

TEST_CASE("hmdf picks the highest degree") {
  const auto var = five_labels();
  CHECK(hmdf(var, 0.0) == LabelAssignment{0, 1.0});
  const auto six = hmdf(var, 6.0);
  CHECK(var.label(six.label_index) == "M");
  CHECK(six.degree == doctest::Approx(0.6));
  const auto cross = hmdf(var, 3.75);
  CHECK(var.label(cross.label_index) == "L");
  CHECK(cross.degree == doctest::Approx(0.5));
  CHECK(var.label(hmdf(var, 10.0).label_index) == "VH");
}

TEST_CASE("hmdf rejects stakes outside the universe") {
  const auto var = five_labels();
  CHECK_THROWS_AS(hmdf(var, -0.001), std::out_of_range);
  CHECK_THROWS_AS(hmdf(var, 10.001), std::out_of_range);
}

TEST_CASE("hmdf degree never drops below one half") {
  const auto var = five_labels();
  for (int k = 0; k <= 20000; ++k) {
    const double x = 10.0 * k / 20000.0;
    CHECK(hmdf(var, x).degree >= 0.5 - kDegreeTolerance);
  }
}

TEST_CASE("hmdf is deterministic and monotone in the stake") {
  const auto var = five_labels();
  Rng rng(5);
  std::vector<double> xs(1000);
  for (auto& x : xs) x = rng.uniform(0.0, 10.0);
  std::sort(xs.begin(), xs.end());
  std::size_t previous = 0;
  for (double x : xs) {
    const auto a = hmdf(var, x);
    CHECK(a == hmdf(var, x));
    CHECK(a.label_index >= previous);
    previous = a.label_index;
  }
}

TEST_CASE("scale_stakes classifies in order and clamps high stakes") {
  const auto var = five_labels();
  const std::vector<double> stakes{0.0, 6.0, 10.0};
  const auto out = scale_stakes(var, stakes);
  REQUIRE(out.size() == 3);
  CHECK(var.label(out[0].label_index) == "VL");
  CHECK(var.label(out[1].label_index) == "M");
  CHECK(var.label(out[2].label_index) == "VH");

  CHECK(scale_stakes(var, std::vector<double>{}).empty());

  const std::vector<double> high{12.0};
  const auto clamped = scale_stakes(var, high);
  CHECK(var.label(clamped[0].label_index) == "VH");
  CHECK(clamped[0].degree == 1.0);
}

TEST_CASE("label lookup by name") {
  const auto var = five_labels();
  CHECK(var.index_of("H") == 3);
  CHECK_THROWS_AS(var.index_of("XL"), std::out_of_range);
}

}  // TEST_SUITE
