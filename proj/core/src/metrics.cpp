#include "fuzzychain/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace fuzzychain::metrics {

std::string to_string(Granularity g) {
  return g == Granularity::PerLabel ? "per-label" : "per-participant";
}

Granularity granularity_from_string(const std::string& s) {
  if (s == "per-label") return Granularity::PerLabel;
  if (s == "per-participant") return Granularity::PerParticipant;
  throw std::invalid_argument("granularity must be per-label or per-participant, got '" + s + "'");
}

std::uint64_t FrequencyTable::total() const {
  std::uint64_t sum = 0;
  for (const auto& e : entries) sum += e.count;
  return sum;
}

std::vector<double> FrequencyTable::counts() const {
  std::vector<double> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back(static_cast<double>(e.count));
  return out;
}

double gini(std::span<const double> values) {
  if (values.empty()) throw UndefinedInput("gini: empty input");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  if (sorted.front() < 0.0) throw UndefinedInput("gini: negative value");
  const double sum = std::accumulate(sorted.begin(), sorted.end(), 0.0);
  if (!(sum > 0.0)) throw UndefinedInput("gini: all values are zero");
  // Sum over pairs of |x_i - x_j| equals 2 * sum_i (2i - n - 1) x_(i) for
  // ascending order statistics (1-based i).
  const double n = static_cast<double>(sorted.size());
  double weighted = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    weighted += (2.0 * static_cast<double>(i + 1) - n - 1.0) * sorted[i];
  }
  return weighted / (n * sum);
}

namespace {

struct CentralMoments {
  double m2 = 0.0;
  double m3 = 0.0;
  double m4 = 0.0;
};

CentralMoments central_moments(std::span<const double> values, const char* who) {
  if (values.size() < 2) throw UndefinedInput(std::string(who) + ": need at least two values");
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  if (*lo == *hi) throw UndefinedInput(std::string(who) + ": zero variance");
  const double n = static_cast<double>(values.size());
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  CentralMoments m;
  for (double x : values) {
    const double d = x - mean;
    const double d2 = d * d;
    m.m2 += d2;
    m.m3 += d2 * d;
    m.m4 += d2 * d2;
  }
  m.m2 /= n;
  m.m3 /= n;
  m.m4 /= n;
  return m;
}

}  // namespace

double skewness(std::span<const double> values) {
  const auto m = central_moments(values, "skewness");
  return m.m3 / std::pow(m.m2, 1.5);
}

double kurtosis(std::span<const double> values) {
  const auto m = central_moments(values, "kurtosis");
  return m.m4 / (m.m2 * m.m2) - 3.0;
}

MetricsReport compute(const FrequencyTable& table) {
  const auto c = table.counts();
  return MetricsReport{gini(c), skewness(c), kurtosis(c)};
}

nlohmann::json to_json(const MetricsReport& m) {
  return {{"gini", m.gini}, {"skewness", m.skewness}, {"kurtosis_excess", m.kurtosis_excess}};
}

}  // namespace fuzzychain::metrics
