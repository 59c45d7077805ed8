#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace fuzzychain::fuzzy {

/// Absolute tolerance used for every comparison of membership degrees.
inline constexpr double kDegreeTolerance = 1e-9;

enum class Shape { ShoulderLeft, Interior, ShoulderRight };

/// Triangular membership function with feet a, c and peak b. Shouldered
/// variants hold the outer flank at 1.
struct MembershipFunction {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  Shape shape = Shape::Interior;
};

/// Degree of x in the fuzzy set described by mf. Defined for any x.
double membership(const MembershipFunction& mf, double x);

/// Label picked by the highest membership degree, with that degree.
/// label_index is zero-based.
struct LabelAssignment {
  std::size_t label_index = 0;
  double degree = 0.0;

  bool operator==(const LabelAssignment&) const = default;
};

/// A named linguistic variable over the stake universe [lo, hi]: an odd number
/// (>= 3) of labelled membership functions forming a Ruspini partition.
class LinguisticVariable {
 public:
  /// Validates the definition. Throws std::invalid_argument when the label
  /// count is even or below three, when the universe is empty, when a
  /// function is malformed, or when the degrees do not sum to one.
  LinguisticVariable(std::string name, std::vector<std::string> labels, double lo, double hi,
                     std::vector<MembershipFunction> mfs);

  const std::string& name() const { return name_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<MembershipFunction>& functions() const { return mfs_; }
  const std::string& label(std::size_t i) const { return labels_.at(i); }
  std::size_t size() const { return labels_.size(); }
  double lo() const { return lo_; }
  double hi() const { return hi_; }

  /// Position of a label by name; throws std::out_of_range when unknown.
  std::size_t index_of(const std::string& label) const;

  bool contains(double x) const { return x >= lo_ && x <= hi_; }
  double clamp(double x) const;

  /// Peak positions of every function, in label order.
  std::vector<double> peaks() const;

 private:
  std::string name_;
  std::vector<std::string> labels_;
  double lo_;
  double hi_;
  std::vector<MembershipFunction> mfs_;
};

/// n uniformly spaced triangular sets on [lo, hi], shouldered at both ends.
/// Throws std::invalid_argument("odd label count required") for even or < 3
/// label counts, and when lo >= hi.
LinguisticVariable make_uniform_partition(std::string name, std::vector<std::string> labels,
                                          double lo, double hi);

/// Highest membership degree over all labels. Ties go to the lowest index.
/// Throws std::out_of_range when x lies outside the universe.
LabelAssignment hmdf(const LinguisticVariable& var, double x);

/// Classifies every stake; stakes beyond the universe are clamped first.
std::vector<LabelAssignment> scale_stakes(const LinguisticVariable& var,
                                          std::span<const double> stakes);

}  // namespace fuzzychain::fuzzy
