#pragma once

#include <string>
#include <vector>

namespace fuzzychain::svg {

struct Series {
  std::string name;
  std::vector<double> values;  // one per category
};

/// Vertical bars, one per category, annotated with the value.
std::string bar_chart(const std::string& title, const std::vector<std::string>& categories,
                      const std::vector<double>& values, const std::string& y_label);

/// One polyline per series over the shared categories, with a legend.
std::string line_overlay(const std::string& title, const std::vector<std::string>& categories,
                         const std::vector<Series>& series, const std::string& y_label);

/// Box (quartiles), whiskers (min/max) and a dashed mean line per category.
std::string boxplot(const std::string& title, const std::vector<std::string>& categories,
                    const std::vector<std::vector<double>>& samples, const std::string& y_label);

std::string escape(const std::string& text);

}  // namespace fuzzychain::svg
