#include "fuzzychain/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace fuzzychain::svg {

namespace {

constexpr double kWidth = 640;
constexpr double kHeight = 400;
constexpr double kLeft = 64;
constexpr double kRight = 24;
constexpr double kTop = 48;
constexpr double kBottom = 56;

constexpr const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                    "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

// Rounds the axis maximum up to a 1/2/5 step so tick labels stay readable.
double nice_max(double v) {
  if (v <= 0) return 1;
  const double mag = std::pow(10.0, std::floor(std::log10(v)));
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    if (v <= m * mag) return m * mag;
  }
  return 10 * mag;
}

class Plot {
 public:
  Plot(const std::string& title, const std::vector<std::string>& categories, double y_max,
       const std::string& y_label)
      : categories_(categories), y_max_(nice_max(y_max)) {
    os_ << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
        << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<text x=\"" << kWidth / 2 << "\" y=\"28\" text-anchor=\"middle\" font-family=\"sans-serif\" "
        << "font-size=\"16\">" << escape(title) << "</text>\n";
    axes(y_label);
  }

  double x_center(std::size_t i) const {
    const double band = (kWidth - kLeft - kRight) / static_cast<double>(categories_.size());
    return kLeft + band * (static_cast<double>(i) + 0.5);
  }
  double band() const { return (kWidth - kLeft - kRight) / static_cast<double>(categories_.size()); }
  double y(double v) const {
    return kHeight - kBottom - (kHeight - kTop - kBottom) * std::clamp(v / y_max_, 0.0, 1.0);
  }

  std::ostringstream& out() { return os_; }

  std::string finish() {
    os_ << "</svg>\n";
    return os_.str();
  }

 private:
  void axes(const std::string& y_label) {
    const double x0 = kLeft, x1 = kWidth - kRight, y0 = kHeight - kBottom;
    os_ << "<g stroke=\"#333\" stroke-width=\"1\">\n"
        << "<line x1=\"" << x0 << "\" y1=\"" << y0 << "\" x2=\"" << x1 << "\" y2=\"" << y0 << "\"/>\n"
        << "<line x1=\"" << x0 << "\" y1=\"" << kTop << "\" x2=\"" << x0 << "\" y2=\"" << y0 << "\"/>\n"
        << "</g>\n<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#333\">\n";
    for (int t = 0; t <= 5; ++t) {
      const double v = y_max_ * t / 5.0;
      os_ << "<text x=\"" << x0 - 6 << "\" y=\"" << num(y(v) + 4) << "\" text-anchor=\"end\">"
          << num(v) << "</text>\n"
          << "<line x1=\"" << x0 << "\" y1=\"" << num(y(v)) << "\" x2=\"" << x1 << "\" y2=\""
          << num(y(v)) << "\" stroke=\"#ddd\"/>\n";
    }
    for (std::size_t i = 0; i < categories_.size(); ++i) {
      os_ << "<text x=\"" << num(x_center(i)) << "\" y=\"" << y0 + 18
          << "\" text-anchor=\"middle\">" << escape(categories_[i]) << "</text>\n";
    }
    os_ << "<text transform=\"translate(16," << (kTop + y0) / 2 << ") rotate(-90)\" "
        << "text-anchor=\"middle\">" << escape(y_label) << "</text>\n</g>\n";
  }

  std::ostringstream os_;
  std::vector<std::string> categories_;
  double y_max_;
};

double max_of(const std::vector<double>& v) {
  return v.empty() ? 0.0 : *std::max_element(v.begin(), v.end());
}

double quantile(std::vector<double> sorted, double q) {
  std::sort(sorted.begin(), sorted.end());
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = static_cast<std::size_t>(std::ceil(pos));
  return sorted[lo] + (sorted[hi] - sorted[lo]) * (pos - static_cast<double>(lo));
}

}  // namespace

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string bar_chart(const std::string& title, const std::vector<std::string>& categories,
                      const std::vector<double>& values, const std::string& y_label) {
  Plot p(title, categories, max_of(values), y_label);
  auto& os = p.out();
  os << "<g font-family=\"sans-serif\" font-size=\"11\">\n";
  for (std::size_t i = 0; i < values.size() && i < categories.size(); ++i) {
    const double w = p.band() * 0.6;
    const double top = p.y(values[i]);
    os << "<rect x=\"" << num(p.x_center(i) - w / 2) << "\" y=\"" << num(top) << "\" width=\""
       << num(w) << "\" height=\"" << num(p.y(0) - top) << "\" fill=\"" << kPalette[i % 8]
       << "\"/>\n"
       << "<text x=\"" << num(p.x_center(i)) << "\" y=\"" << num(top - 4)
       << "\" text-anchor=\"middle\">" << num(values[i]) << "</text>\n";
  }
  os << "</g>\n";
  return p.finish();
}

std::string line_overlay(const std::string& title, const std::vector<std::string>& categories,
                         const std::vector<Series>& series, const std::string& y_label) {
  double top = 0;
  for (const auto& s : series) top = std::max(top, max_of(s.values));
  Plot p(title, categories, top, y_label);
  auto& os = p.out();
  for (std::size_t k = 0; k < series.size(); ++k) {
    const char* color = kPalette[k % 8];
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < series[k].values.size() && i < categories.size(); ++i) {
      os << (i ? " " : "") << num(p.x_center(i)) << ',' << num(p.y(series[k].values[i]));
    }
    os << "\"/>\n";
    for (std::size_t i = 0; i < series[k].values.size() && i < categories.size(); ++i) {
      os << "<circle cx=\"" << num(p.x_center(i)) << "\" cy=\"" << num(p.y(series[k].values[i]))
         << "\" r=\"3\" fill=\"" << color << "\"/>\n";
    }
    os << "<text x=\"" << kWidth - kRight - 110 << "\" y=\"" << kTop + 14 * static_cast<double>(k)
       << "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"" << color << "\">"
       << escape(series[k].name) << "</text>\n";
  }
  return p.finish();
}

std::string boxplot(const std::string& title, const std::vector<std::string>& categories,
                    const std::vector<std::vector<double>>& samples, const std::string& y_label) {
  double top = 0;
  for (const auto& s : samples) top = std::max(top, max_of(s));
  Plot p(title, categories, top, y_label);
  auto& os = p.out();
  for (std::size_t i = 0; i < samples.size() && i < categories.size(); ++i) {
    const auto& s = samples[i];
    if (s.empty()) continue;
    const double q1 = quantile(s, 0.25), med = quantile(s, 0.5), q3 = quantile(s, 0.75);
    const double lo = *std::min_element(s.begin(), s.end());
    const double hi = *std::max_element(s.begin(), s.end());
    double mean = 0;
    for (double v : s) mean += v;
    mean /= static_cast<double>(s.size());
    const double cx = p.x_center(i), w = p.band() * 0.5;
    os << "<g stroke=\"#333\" fill=\"none\">\n"
       << "<line x1=\"" << num(cx) << "\" y1=\"" << num(p.y(hi)) << "\" x2=\"" << num(cx)
       << "\" y2=\"" << num(p.y(q3)) << "\"/>\n"
       << "<line x1=\"" << num(cx) << "\" y1=\"" << num(p.y(q1)) << "\" x2=\"" << num(cx)
       << "\" y2=\"" << num(p.y(lo)) << "\"/>\n"
       << "<line x1=\"" << num(cx - w / 4) << "\" y1=\"" << num(p.y(hi)) << "\" x2=\""
       << num(cx + w / 4) << "\" y2=\"" << num(p.y(hi)) << "\"/>\n"
       << "<line x1=\"" << num(cx - w / 4) << "\" y1=\"" << num(p.y(lo)) << "\" x2=\""
       << num(cx + w / 4) << "\" y2=\"" << num(p.y(lo)) << "\"/>\n"
       << "<rect x=\"" << num(cx - w / 2) << "\" y=\"" << num(p.y(q3)) << "\" width=\"" << num(w)
       << "\" height=\"" << num(std::max(0.5, p.y(q1) - p.y(q3))) << "\" fill=\"" << kPalette[i % 8]
       << "\" fill-opacity=\"0.35\"/>\n"
       << "<line x1=\"" << num(cx - w / 2) << "\" y1=\"" << num(p.y(med)) << "\" x2=\""
       << num(cx + w / 2) << "\" y2=\"" << num(p.y(med)) << "\" stroke-width=\"2\"/>\n"
       << "<line x1=\"" << num(cx - w / 2) << "\" y1=\"" << num(p.y(mean)) << "\" x2=\""
       << num(cx + w / 2) << "\" y2=\"" << num(p.y(mean)) << "\" stroke=\"#2ca02c\" "
       << "stroke-dasharray=\"4 3\"/>\n</g>\n";
  }
  return p.finish();
}

}  // namespace fuzzychain::svg
