#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "json.hpp"

#include "irusim/metrics/report.h"

namespace irusim {

namespace {

const char* kComparisonMode = "iru_vs_baseline";

std::optional<double> tx_per_wi(const MetricsCounters& c, const std::string& tag) {
  if (tag.empty()) return safe_ratio(static_cast<double>(c.transactions), static_cast<double>(c.warp_instructions));
  const TagStats t = c.tag(tag).value_or(TagStats{});
  return safe_ratio(static_cast<double>(t.transactions), static_cast<double>(t.warp_instructions));
}

double round9(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return std::strtod(buf, nullptr);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

template <typename Fn>
void write_file(const std::filesystem::path& path, Fn&& body) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  body(f);
  f.flush();
  if (!f) throw std::runtime_error("write to '" + path.string() + "' failed");
}

}  // namespace

std::optional<double> safe_ratio(double num, double den) {
  if (den == 0.0 || !std::isfinite(num) || !std::isfinite(den)) return std::nullopt;
  return num / den;
}

ComparisonReport compare(const MetricsCounters& base, const MetricsCounters& iru, const std::string& tag) {
  auto d = [](std::uint64_t v) { return static_cast<double>(v); };
  ComparisonReport r;
  r.instrumented_tag = tag;
  r.normalized_l1_accesses = safe_ratio(d(iru.l1_accesses()), d(base.l1_accesses()));
  r.normalized_l2_accesses = safe_ratio(d(iru.l2_accesses()), d(base.l2_accesses()));
  r.normalized_noc_bytes = safe_ratio(d(iru.noc_bytes()), d(base.noc_bytes()));
  r.normalized_dram_accesses = safe_ratio(d(iru.dram_accesses()), d(base.dram_accesses()));
  r.tx_per_warp_instruction_baseline = tx_per_wi(base, tag);
  r.tx_per_warp_instruction_iru = tx_per_wi(iru, tag);
  r.filtered_fraction = iru.filtered_fraction();
  r.speedup = safe_ratio(d(base.cycles), d(iru.cycles));
  return r;
}

ComparisonReport compare(const RunRecord& base, const RunRecord& iru) {
  if (!(base.id == iru.id)) {
    throw ConfigError("cannot compare runs of different workloads ('" + base.id.run_id + "' vs '" + iru.id.run_id + "')");
  }
  if (base.instrumented_tag != iru.instrumented_tag) {
    throw ConfigError("cannot compare runs instrumenting different accesses");
  }
  ComparisonReport r = compare(base.counters, iru.counters, base.instrumented_tag);
  r.id = base.id;
  return r;
}

std::vector<ReportMetric> report_metrics(const MetricsCounters& c) {
  std::vector<ReportMetric> out;
  for (auto& [name, v] : flatten(c)) out.push_back({name, v, true});
  if (auto f = c.filtered_fraction()) out.push_back({"iru.filtered_fraction", *f, false});
  return out;
}

std::vector<ReportMetric> report_metrics(const ComparisonReport& r) {
  return {
      {"normalized_l1_accesses_iru_over_baseline", r.normalized_l1_accesses, false},
      {"normalized_l2_accesses_iru_over_baseline", r.normalized_l2_accesses, false},
      {"normalized_noc_bytes_iru_over_baseline", r.normalized_noc_bytes, false},
      {"normalized_dram_accesses_iru_over_baseline", r.normalized_dram_accesses, false},
      {"tx_per_warp_instruction_baseline", r.tx_per_warp_instruction_baseline, false},
      {"tx_per_warp_instruction_iru", r.tx_per_warp_instruction_iru, false},
      {"filtered_fraction", r.filtered_fraction, false},
      {"speedup_baseline_over_iru", r.speedup, false},
  };
}

std::string format_value(const ReportMetric& m) {
  if (!m.value) return "";
  if (m.is_count) return std::to_string(static_cast<std::uint64_t>(*m.value));
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", *m.value);
  return buf;
}

void emit_csv(std::ostream& out, const std::vector<RunRecord>& runs, const std::vector<ComparisonReport>& cmps) {
  out << kCsvHeader << '\n';
  auto row = [&](const RunIdentity& id, const std::string& mode, const ReportMetric& m) {
    out << csv_field(id.run_id) << ',' << csv_field(id.algorithm) << ',' << csv_field(id.graph) << ','
        << csv_field(mode) << ',' << csv_field(m.name) << ',' << format_value(m) << '\n';
  };
  for (const RunRecord& r : runs) {
    for (const ReportMetric& m : report_metrics(r.counters)) row(r.id, r.mode, m);
  }
  for (const ComparisonReport& c : cmps) {
    for (const ReportMetric& m : report_metrics(c)) row(c.id, kComparisonMode, m);
  }
}

void emit_json(std::ostream& out, const std::vector<RunRecord>& runs, const std::vector<ComparisonReport>& cmps) {
  using nlohmann::ordered_json;
  auto metrics = [](const std::vector<ReportMetric>& ms) {
    ordered_json o = ordered_json::object();
    for (const ReportMetric& m : ms) {
      if (!m.value) {
        o[m.name] = nullptr;
      } else if (m.is_count) {
        o[m.name] = static_cast<std::uint64_t>(*m.value);
      } else {
        o[m.name] = round9(*m.value);
      }
    }
    return o;
  };
  auto ident = [](const RunIdentity& id) {
    ordered_json o;
    o["run_id"] = id.run_id;
    o["algorithm"] = id.algorithm;
    o["graph"] = id.graph;
    o["seed"] = id.seed;
    return o;
  };
  ordered_json doc;
  doc["schema_version"] = kJsonSchemaVersion;
  doc["normalization"] = "normalized_* = iru / baseline (lower is better); speedup = baseline_cycles / iru_cycles";
  doc["runs"] = ordered_json::array();
  for (const RunRecord& r : runs) {
    ordered_json o = ident(r.id);
    o["mode"] = r.mode;
    o["instrumented_tag"] = r.instrumented_tag;
    o["metrics"] = metrics(report_metrics(r.counters));
    doc["runs"].push_back(std::move(o));
  }
  doc["comparisons"] = ordered_json::array();
  for (const ComparisonReport& c : cmps) {
    ordered_json o = ident(c.id);
    o["instrumented_tag"] = c.instrumented_tag;
    o["metrics"] = metrics(report_metrics(c));
    doc["comparisons"].push_back(std::move(o));
  }
  out << doc.dump(2) << '\n';
}

void emit_summary(std::ostream& out, const std::vector<ComparisonReport>& cmps) {
  out << "IRU vs baseline (normalized = iru/baseline, lower is better; speedup = baseline/iru)\n";
  for (const ComparisonReport& c : cmps) {
    out << "\n" << c.id.run_id << "  [" << c.id.algorithm << " on " << c.id.graph << ", gather '"
        << c.instrumented_tag << "']\n";
    auto line = [&](const char* label, const std::optional<double>& v) {
      out << "  " << std::left << std::setw(34) << label;
      if (v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.4f", *v);
        out << buf;
      } else {
        out << "undefined";
      }
      out << '\n';
    };
    line("L1 accesses (normalized)", c.normalized_l1_accesses);
    line("L2 accesses (normalized)", c.normalized_l2_accesses);
    line("NoC traffic (normalized)", c.normalized_noc_bytes);
    line("DRAM accesses (normalized)", c.normalized_dram_accesses);
    line("tx per warp-instruction, baseline", c.tx_per_warp_instruction_baseline);
    line("tx per warp-instruction, iru", c.tx_per_warp_instruction_iru);
    line("filtered fraction", c.filtered_fraction);
    line("speedup", c.speedup);
  }
}

void write_csv(const std::filesystem::path& path, const std::vector<RunRecord>& runs,
               const std::vector<ComparisonReport>& cmps) {
  write_file(path, [&](std::ostream& f) { emit_csv(f, runs, cmps); });
}

void write_json(const std::filesystem::path& path, const std::vector<RunRecord>& runs,
                const std::vector<ComparisonReport>& cmps) {
  write_file(path, [&](std::ostream& f) { emit_json(f, runs, cmps); });
}

void write_summary(const std::filesystem::path& path, const std::vector<ComparisonReport>& cmps) {
  write_file(path, [&](std::ostream& f) { emit_summary(f, cmps); });
}

}  // namespace irusim
