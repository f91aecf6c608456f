#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "irusim/metrics/counters.h"

namespace irusim {

// What was simulated. Two runs are comparable only when everything but the
// mode matches.
struct RunIdentity {
  std::string run_id;
  std::string algorithm;
  std::string graph;
  std::uint64_t seed = 0;

  friend bool operator==(const RunIdentity&, const RunIdentity&) = default;
};

struct RunRecord {
  RunIdentity id;
  std::string mode;
  std::string instrumented_tag;
  MetricsCounters counters;
};

// Normalized values are iru / baseline (lower is better); speedup is
// baseline_cycles / iru_cycles (higher is better). A ratio whose denominator
// is zero is left undefined.
struct ComparisonReport {
  RunIdentity id;
  std::string instrumented_tag;
  std::optional<double> normalized_l1_accesses;
  std::optional<double> normalized_l2_accesses;
  std::optional<double> normalized_noc_bytes;
  std::optional<double> normalized_dram_accesses;
  std::optional<double> tx_per_warp_instruction_baseline;
  std::optional<double> tx_per_warp_instruction_iru;
  std::optional<double> filtered_fraction;
  std::optional<double> speedup;
};

std::optional<double> safe_ratio(double num, double den);

// `tag` selects the instrumented access for the transactions-per-instruction
// columns; empty means all memory instructions.
ComparisonReport compare(const MetricsCounters& baseline, const MetricsCounters& iru, const std::string& tag = "");
// Throws ConfigError when the two runs are not the same workload.
ComparisonReport compare(const RunRecord& baseline, const RunRecord& iru);

struct ReportMetric {
  std::string name;
  std::optional<double> value;
  bool is_count = true;  // printed as an exact integer
};

std::vector<ReportMetric> report_metrics(const MetricsCounters& c);
std::vector<ReportMetric> report_metrics(const ComparisonReport& r);

// Numbers as written to reports: counts exactly, other values with 9
// significant digits, undefined as the empty string.
std::string format_value(const ReportMetric& m);

inline constexpr const char* kCsvHeader = "run_id,algorithm,graph,mode,metric,value";
inline constexpr int kJsonSchemaVersion = 1;

void emit_csv(std::ostream& out, const std::vector<RunRecord>& runs, const std::vector<ComparisonReport>& cmps);
void emit_json(std::ostream& out, const std::vector<RunRecord>& runs, const std::vector<ComparisonReport>& cmps);
// Plain-text table, one block per comparison.
void emit_summary(std::ostream& out, const std::vector<ComparisonReport>& cmps);

// File variants; I/O failures throw std::runtime_error naming the path.
void write_csv(const std::filesystem::path& path, const std::vector<RunRecord>& runs,
               const std::vector<ComparisonReport>& cmps);
void write_json(const std::filesystem::path& path, const std::vector<RunRecord>& runs,
                const std::vector<ComparisonReport>& cmps);
void write_summary(const std::filesystem::path& path, const std::vector<ComparisonReport>& cmps);

}  // namespace irusim
