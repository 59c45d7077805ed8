#include "fuzzychain/outputs.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "fuzzychain/svg.hpp"

namespace fuzzychain::harness {

namespace fs = std::filesystem;

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  return fields;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw OutputError("cannot open " + path.string() + " for writing");
  out << content;
  out.flush();
  if (!out) throw OutputError("failed writing " + path.string());
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw OutputError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<const RunRecord*> select(const std::vector<RunRecord>& runs, const std::string& algorithm,
                                     std::uint64_t rounds) {
  std::vector<const RunRecord*> out;
  for (const auto& r : runs) {
    if (r.algorithm == algorithm && r.rounds == rounds) out.push_back(&r);
  }
  return out;
}

std::vector<std::string> keys_of(const RunRecord& r) {
  std::vector<std::string> keys;
  for (const auto& e : r.table.entries) keys.push_back(e.key);
  return keys;
}

// Figures for the per-label Fuzzychain runs: single-run bars, round-count
// overlay of means, and boxplots across repetitions.
void label_figures(const RunReport& report, const fs::path& dir, std::vector<fs::path>& written) {
  const auto& rounds = report.config.rounds;
  const auto first = select(report.runs, "fuzzychain", rounds.front());
  if (first.empty() || first.front()->table.granularity != metrics::Granularity::PerLabel) return;
  const auto labels = keys_of(*first.front());

  {
    const auto counts = first.front()->table.counts();
    const auto path = dir / "frequency_bars.svg";
    write_file(path, svg::bar_chart("Winners per label, " + std::to_string(rounds.front()) +
                                        " rounds (repetition 0)",
                                    labels, counts, "frequency count"));
    written.push_back(path);
  }
  {
    std::vector<svg::Series> series;
    for (auto r : rounds) {
      const auto runs = select(report.runs, "fuzzychain", r);
      svg::Series s{std::to_string(r) + " rounds", std::vector<double>(labels.size(), 0.0)};
      for (const auto* run : runs) {
        for (std::size_t i = 0; i < labels.size(); ++i) {
          s.values[i] += static_cast<double>(run->table.entries[i].count) /
                         static_cast<double>(runs.size());
        }
      }
      series.push_back(std::move(s));
    }
    const auto path = dir / "round_overlay.svg";
    write_file(path, svg::line_overlay("Mean winners per label by round count", labels, series,
                                       "frequency count"));
    written.push_back(path);
  }
  {
    const auto last = select(report.runs, "fuzzychain", rounds.back());
    std::vector<std::vector<double>> samples(labels.size());
    for (const auto* run : last) {
      for (std::size_t i = 0; i < labels.size(); ++i) {
        samples[i].push_back(static_cast<double>(run->table.entries[i].count));
      }
    }
    const auto path = dir / "boxplot.svg";
    write_file(path, svg::boxplot("Winners per label over " + std::to_string(last.size()) +
                                      " repetitions, " + std::to_string(rounds.back()) + " rounds",
                                  labels, samples, "frequency count"));
    written.push_back(path);
  }
}

void gini_figure(const RunReport& report, const fs::path& dir, std::vector<fs::path>& written) {
  std::vector<std::string> names;
  std::vector<double> values;
  for (const char* algorithm : {"pow", "pos", "dpos", "fuzzychain"}) {
    double sum = 0;
    int n = 0;
    for (const auto& r : report.runs) {
      if (r.algorithm != algorithm || !r.metrics) continue;
      if (r.algorithm == "fuzzychain" && r.rounds != report.config.rounds.front()) continue;
      sum += r.metrics->gini;
      ++n;
    }
    if (n == 0) continue;
    names.emplace_back(algorithm);
    values.push_back(sum / n);
  }
  const auto path = dir / "gini_comparison.svg";
  write_file(path, svg::bar_chart("Mean Gini coefficient of selection frequencies", names, values,
                                  "Gini"));
  written.push_back(path);
}

}  // namespace

std::string frequencies_csv(const std::vector<RunRecord>& runs) {
  std::string out = "algorithm,granularity,rounds,repetition,key,count\n";
  for (const auto& r : runs) {
    const std::string prefix = csv_field(r.algorithm) + ',' + metrics::to_string(r.table.granularity) +
                               ',' + std::to_string(r.rounds) + ',' + std::to_string(r.repetition) + ',';
    for (const auto& e : r.table.entries) {
      out += prefix + csv_field(e.key) + ',' + std::to_string(e.count) + '\n';
    }
  }
  return out;
}

std::vector<RunRecord> parse_frequencies_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "algorithm,granularity,rounds,repetition,key,count") {
    throw OutputError("frequencies csv: unexpected header");
  }
  std::vector<RunRecord> runs;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 6) throw OutputError("frequencies csv: line " + std::to_string(line_no) + ": expected 6 fields");
    try {
      const auto granularity = metrics::granularity_from_string(f[1]);
      const std::uint64_t rounds = std::stoull(f[2]);
      const std::uint64_t rep = std::stoull(f[3]);
      if (runs.empty() || runs.back().algorithm != f[0] || runs.back().rounds != rounds ||
          runs.back().repetition != rep) {
        RunRecord r;
        r.algorithm = f[0];
        r.rounds = rounds;
        r.repetition = rep;
        r.table.granularity = granularity;
        runs.push_back(std::move(r));
      }
      runs.back().table.entries.push_back({f[4], std::stoull(f[5])});
    } catch (const std::logic_error& e) {
      throw OutputError("frequencies csv: line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return runs;
}

std::vector<RunRecord> read_frequencies_csv(const fs::path& path) {
  return parse_frequencies_csv(read_file(path));
}

std::vector<fs::path> emit_outputs(const RunReport& report, const fs::path& out_dir) {
  if (report.runs.empty()) throw OutputError("nothing to emit");
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw OutputError("cannot create " + out_dir.string() + ": " + ec.message());

  std::vector<fs::path> written;
  write_file(out_dir / kFrequenciesFile, frequencies_csv(report.runs));
  written.push_back(out_dir / kFrequenciesFile);
  write_file(out_dir / kSummaryFile, summary_json(report).dump(2) + "\n");
  written.push_back(out_dir / kSummaryFile);

  {
    const auto path = out_dir / kAuditFile;
    std::ofstream audit(path, std::ios::binary | std::ios::trunc);
    if (!audit) throw OutputError("cannot open " + path.string() + " for writing");
    for (const auto& r : report.runs) {
      for (const auto& line : r.audit) audit << line << '\n';
    }
    if (!audit.flush()) throw OutputError("failed writing " + path.string());
    written.push_back(path);
  }

  label_figures(report, out_dir, written);
  if (report.config.experiment == ExperimentKind::Exp2) gini_figure(report, out_dir, written);
  return written;
}

std::string report_text(const fs::path& dir) {
  auto runs = read_frequencies_csv(dir / kFrequenciesFile);
  if (runs.empty()) throw OutputError("nothing to report in " + dir.string());
  for (auto& r : runs) attach_metrics(r);

  std::ostringstream os;
  char buf[160];
  for (const auto& agg : aggregate(runs)) {
    os << agg.algorithm << ", " << agg.rounds << " rounds, " << agg.repetitions << " repetition(s)";
    std::snprintf(buf, sizeof(buf), ", pooled std across keys %.3f\n", agg.pooled_key_std);
    os << buf;
    if (agg.keys.size() <= 16) {
      os << "  key          mean       std    min    max\n";
      for (const auto& k : agg.keys) {
        std::snprintf(buf, sizeof(buf), "  %-8s %8.2f %9.2f %6llu %6llu\n", k.key.c_str(), k.mean,
                      k.std, static_cast<unsigned long long>(k.min),
                      static_cast<unsigned long long>(k.max));
        os << buf;
      }
    }
    double g = 0, s = 0, ku = 0;
    int n = 0;
    for (const auto& r : runs) {
      if (r.algorithm != agg.algorithm || r.rounds != agg.rounds || !r.metrics) continue;
      g += r.metrics->gini;
      s += r.metrics->skewness;
      ku += r.metrics->kurtosis_excess;
      ++n;
    }
    if (n > 0) {
      std::snprintf(buf, sizeof(buf), "  mean gini %.4f  skewness %.4f  excess kurtosis %.4f\n",
                    g / n, s / n, ku / n);
      os << buf;
    }
  }
  return os.str();
}

}  // namespace fuzzychain::harness
