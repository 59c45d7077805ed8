#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace fuzzychain::metrics {

/// Raised for inputs on which a statistic is undefined (all zeros, zero
/// variance, too few values).
class UndefinedInput : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

enum class Granularity { PerLabel, PerParticipant };

std::string to_string(Granularity g);
Granularity granularity_from_string(const std::string& s);

struct FrequencyEntry {
  std::string key;  // label name or participant id
  std::uint64_t count = 0;
  bool operator==(const FrequencyEntry&) const = default;
};

struct FrequencyTable {
  Granularity granularity = Granularity::PerLabel;
  std::vector<FrequencyEntry> entries;

  std::uint64_t total() const;
  std::vector<double> counts() const;
  bool operator==(const FrequencyTable&) const = default;
};

/// Mean absolute difference over all ordered pairs divided by twice the mean.
double gini(std::span<const double> values);

/// Population skewness m3 / m2^(3/2).
double skewness(std::span<const double> values);

/// Population excess kurtosis m4 / m2^2 - 3.
double kurtosis(std::span<const double> values);

struct MetricsReport {
  double gini = 0.0;
  double skewness = 0.0;
  double kurtosis_excess = 0.0;
};

MetricsReport compute(const FrequencyTable& table);

nlohmann::json to_json(const MetricsReport& m);

}  // namespace fuzzychain::metrics
