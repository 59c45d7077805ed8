#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "fuzzychain/experiment.hpp"

namespace fuzzychain::harness {

/// File-system failure while writing or reading results; what() names the path.
class OutputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr const char* kFrequenciesFile = "frequencies.csv";
inline constexpr const char* kSummaryFile = "summary.json";
inline constexpr const char* kAuditFile = "audit.jsonl";

/// CSV with header algorithm,granularity,rounds,repetition,key,count.
std::string frequencies_csv(const std::vector<RunRecord>& runs);

/// Parses frequencies_csv() output back into records (tables only).
std::vector<RunRecord> parse_frequencies_csv(const std::string& text);
std::vector<RunRecord> read_frequencies_csv(const std::filesystem::path& path);

/// Writes frequencies.csv, summary.json, audit.jsonl and the SVG figures
/// into out_dir (created if needed). Returns the files written.
std::vector<std::filesystem::path> emit_outputs(const RunReport& report,
                                                const std::filesystem::path& out_dir);

/// Human-readable table of per-key aggregates and metrics recomputed from a
/// results directory's frequencies.csv.
std::string report_text(const std::filesystem::path& dir);

}  // namespace fuzzychain::harness
