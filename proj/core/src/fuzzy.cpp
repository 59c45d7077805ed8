#include "fuzzychain/fuzzy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace fuzzychain::fuzzy {

double membership(const MembershipFunction& mf, double x) {
  if (mf.shape == Shape::ShoulderLeft && x <= mf.b) return 1.0;
  if (mf.shape == Shape::ShoulderRight && x >= mf.b) return 1.0;
  if (x < mf.a || x > mf.c) return 0.0;
  if (x == mf.b) return 1.0;
  if (x < mf.b) return (x - mf.a) / (mf.b - mf.a);
  return (mf.c - x) / (mf.c - mf.b);
}

namespace {

bool odd_and_at_least_three(std::size_t n) { return n >= 3 && n % 2 == 1; }

// Degrees must sum to one at every breakpoint and midway between them; both
// sides are piecewise linear, so that suffices for the whole universe.
void check_ruspini(const std::vector<MembershipFunction>& mfs, double lo, double hi) {
  std::vector<double> points{lo, hi};
  for (const auto& mf : mfs) {
    for (double p : {mf.a, mf.b, mf.c}) {
      if (p > lo && p < hi) points.push_back(p);
    }
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  const std::size_t breakpoints = points.size();
  for (std::size_t i = 0; i + 1 < breakpoints; ++i) {
    points.push_back(0.5 * (points[i] + points[i + 1]));
  }
  for (double x : points) {
    double sum = 0.0;
    for (const auto& mf : mfs) sum += membership(mf, x);
    if (std::abs(sum - 1.0) > kDegreeTolerance) {
      throw std::invalid_argument("membership degrees do not sum to one at x=" +
                                  std::to_string(x));
    }
  }
}

}  // namespace

LinguisticVariable::LinguisticVariable(std::string name, std::vector<std::string> labels,
                                       double lo, double hi,
                                       std::vector<MembershipFunction> mfs)
    : name_(std::move(name)), labels_(std::move(labels)), lo_(lo), hi_(hi), mfs_(std::move(mfs)) {
  if (!odd_and_at_least_three(labels_.size())) {
    throw std::invalid_argument("odd label count required");
  }
  if (labels_.size() != mfs_.size()) {
    throw std::invalid_argument("label and membership function counts differ");
  }
  if (!(lo_ < hi_)) throw std::invalid_argument("universe requires lo < hi");
  for (std::size_t i = 0; i < mfs_.size(); ++i) {
    const auto& mf = mfs_[i];
    if (!(mf.a <= mf.b && mf.b <= mf.c)) {
      throw std::invalid_argument("membership function for '" + labels_[i] +
                                  "' violates a <= b <= c");
    }
    if ((mf.shape != Shape::ShoulderLeft && mf.a == mf.b) ||
        (mf.shape != Shape::ShoulderRight && mf.b == mf.c)) {
      throw std::invalid_argument("membership function for '" + labels_[i] +
                                  "' has a degenerate flank");
    }
  }
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    for (std::size_t j = i + 1; j < labels_.size(); ++j) {
      if (labels_[i] == labels_[j]) throw std::invalid_argument("duplicate label '" + labels_[i] + "'");
    }
  }
  check_ruspini(mfs_, lo_, hi_);
}

std::size_t LinguisticVariable::index_of(const std::string& label) const {
  const auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) throw std::out_of_range("unknown label '" + label + "'");
  return static_cast<std::size_t>(it - labels_.begin());
}

double LinguisticVariable::clamp(double x) const { return std::clamp(x, lo_, hi_); }

std::vector<double> LinguisticVariable::peaks() const {
  std::vector<double> out;
  out.reserve(mfs_.size());
  for (const auto& mf : mfs_) out.push_back(mf.b);
  return out;
}

LinguisticVariable make_uniform_partition(std::string name, std::vector<std::string> labels,
                                          double lo, double hi) {
  const std::size_t n = labels.size();
  if (!odd_and_at_least_three(n)) throw std::invalid_argument("odd label count required");
  if (!(lo < hi)) throw std::invalid_argument("universe requires lo < hi");

  const double step = (hi - lo) / static_cast<double>(n - 1);
  auto peak = [&](std::size_t i) {
    return i + 1 == n ? hi : lo + static_cast<double>(i) * step;
  };
  std::vector<MembershipFunction> mfs(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto& mf = mfs[i];
    mf.b = peak(i);
    mf.a = i == 0 ? lo : peak(i - 1);
    mf.c = i + 1 == n ? hi : peak(i + 1);
    mf.shape = i == 0 ? Shape::ShoulderLeft : (i + 1 == n ? Shape::ShoulderRight : Shape::Interior);
  }
  return LinguisticVariable(std::move(name), std::move(labels), lo, hi, std::move(mfs));
}

LabelAssignment hmdf(const LinguisticVariable& var, double x) {
  if (!var.contains(x)) {
    throw std::out_of_range("stake " + std::to_string(x) + " outside universe [" +
                            std::to_string(var.lo()) + ", " + std::to_string(var.hi()) + "]");
  }
  LabelAssignment best{0, membership(var.functions()[0], x)};
  for (std::size_t i = 1; i < var.size(); ++i) {
    const double d = membership(var.functions()[i], x);
    if (d > best.degree + kDegreeTolerance) best = {i, d};
  }
  return best;
}

std::vector<LabelAssignment> scale_stakes(const LinguisticVariable& var,
                                          std::span<const double> stakes) {
  std::vector<LabelAssignment> out;
  out.reserve(stakes.size());
  for (double x : stakes) out.push_back(hmdf(var, var.clamp(x)));
  return out;
}

}  // namespace fuzzychain::fuzzy
