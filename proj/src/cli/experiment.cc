#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <functional>
#include <sstream>

#include "irusim/cli/experiment.h"
#include "irusim/workloads/reference.h"

namespace irusim {

namespace {

std::uint64_t parse_u64(const std::string& key, const std::string& v) {
  std::uint64_t out = 0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size() || v.empty()) {
    throw ConfigError("'" + key + "' expects a non-negative integer, got '" + v + "'");
  }
  return out;
}

std::uint32_t parse_u32(const std::string& key, const std::string& v) {
  const std::uint64_t x = parse_u64(key, v);
  if (x > UINT32_MAX) throw ConfigError("'" + key + "' is out of range: " + v);
  return static_cast<std::uint32_t>(x);
}

double parse_double(const std::string& key, const std::string& v) {
  char* end = nullptr;
  const double x = std::strtod(v.c_str(), &end);
  if (v.empty() || end != v.c_str() + v.size() || !std::isfinite(x)) {
    throw ConfigError("'" + key + "' expects a number, got '" + v + "'");
  }
  return x;
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
  if (v == "0" || v == "false" || v == "no" || v == "off") return false;
  throw ConfigError("'" + key + "' expects true/false, got '" + v + "'");
}

Cycle parse_timeout(const std::string& key, const std::string& v) {
  if (v == "none" || v == "inf" || v == "never") return kNeverCycle;
  return parse_u64(key, v);
}

HashFn parse_hash(const std::string& v) {
  if (v == "dispersion") return HashFn::kDispersion;
  if (v == "identity_mod") return HashFn::kIdentityMod;
  throw ConfigError("unknown hash '" + v + "' (expected dispersion or identity_mod)");
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

using Setter = std::function<void(ExperimentConfig&, const std::string&)>;

const std::map<std::string, std::map<std::string, Setter>>& setters() {
  static const std::map<std::string, std::map<std::string, Setter>> table = [] {
    std::map<std::string, std::map<std::string, Setter>> t;
#define U32(sec, field, expr) \
  t[sec][#field] = [](ExperimentConfig& c, const std::string& v) { expr = parse_u32(#field, v); }
#define U64(sec, field, expr) \
  t[sec][#field] = [](ExperimentConfig& c, const std::string& v) { expr = parse_u64(#field, v); }
    U32("gpu", num_sms, c.gpu.num_sms);
    U32("gpu", warp_size, c.gpu.warp_size);
    U32("gpu", max_threads_per_sm, c.gpu.max_threads_per_sm);
    U32("gpu", line_size, c.gpu.line_size);
    U64("gpu", l1_size, c.gpu.l1_size);
    U64("gpu", l2_total, c.gpu.l2_total);
    U32("gpu", num_mem_partitions, c.gpu.num_mem_partitions);
    U32("gpu", l1_assoc, c.gpu.l1_assoc);
    U32("gpu", l2_assoc, c.gpu.l2_assoc);
    U32("gpu", mshr_per_l1, c.gpu.mshr_per_l1);
    U32("gpu", interleave_lines, c.gpu.interleave_lines);
    U32("gpu", noc_flit_bytes, c.gpu.noc_flit_bytes);
    U32("gpu", noc_header_bytes, c.gpu.noc_header_bytes);
    U32("gpu", store_payload_bytes, c.gpu.store_payload_bytes);
    U64("gpu", dram_cycles_per_line, c.gpu.dram_cycles_per_line);
    U64("gpu", atomic_cycles_per_lane, c.gpu.atomic_cycles_per_lane);
    U64("gpu", max_cycles, c.gpu.max_cycles);
    U64("latency", l1_hit, c.gpu.latency.l1_hit);
    U64("latency", l2_hit, c.gpu.latency.l2_hit);
    U64("latency", dram, c.gpu.latency.dram);
    U64("latency", noc_per_hop, c.gpu.latency.noc_per_hop);
    U64("latency", iru_pipeline, c.gpu.latency.iru_pipeline);
    U32("iru", num_sets_global, c.iru.num_sets_global);
    U32("iru", banks_per_partition, c.iru.banks_per_partition);
    U32("iru", max_inflight_prefetch, c.iru.max_inflight_prefetch);
    U64("iru", dispersion_multiplier, c.iru.dispersion_multiplier);
    U32("iru", request_buffer_entries, c.iru.request_buffer_entries);
    U32("iru", classifier_queue_entries, c.iru.classifier_queue_entries);
    U32("iru", ring_link_entries, c.iru.ring_link_entries);
    U32("workload", source, c.source);
    U32("workload", iterations, c.iterations);
#undef U32
#undef U64
    t["iru"]["timeout_cycles"] = [](ExperimentConfig& c, const std::string& v) {
      c.iru.timeout_cycles = parse_timeout("timeout_cycles", v);
    };
    t["iru"]["hash"] = [](ExperimentConfig& c, const std::string& v) { c.iru.hash_fn = parse_hash(v); };
    t["iru"]["bypass_l2"] = [](ExperimentConfig& c, const std::string& v) {
      c.iru.bypass_l2 = parse_bool("bypass_l2", v);
    };
    t["workload"]["algorithm"] = [](ExperimentConfig& c, const std::string& v) { c.algorithm = parse_algorithm(v); };
    t["workload"]["graph"] = [](ExperimentConfig& c, const std::string& v) { c.graph_path = v; };
    t["workload"]["generate"] = [](ExperimentConfig& c, const std::string& v) { c.generator = v; };
    t["workload"]["damping"] = [](ExperimentConfig& c, const std::string& v) {
      c.damping = parse_double("damping", v);
    };
    t["run"]["modes"] = [](ExperimentConfig& c, const std::string& v) {
      c.modes.clear();
      for (const std::string& m : split(v, ',')) c.modes.push_back(parse_mode(m));
    };
    t["run"]["seed"] = [](ExperimentConfig& c, const std::string& v) { c.seed = parse_u64("seed", v); };
    t["run"]["out"] = [](ExperimentConfig& c, const std::string& v) { c.out_dir = v; };
    t["run"]["validate_only"] = [](ExperimentConfig& c, const std::string& v) {
      c.validate_only = parse_bool("validate_only", v);
    };
    return t;
  }();
  return table;
}

std::string graph_label(const ExperimentConfig& cfg) {
  if (!cfg.generator.empty()) return cfg.generator;
  return std::filesystem::path(cfg.graph_path).filename().string();
}

// Compares a run against the sequential reference; empty when they agree.
std::string functional_check(const ExperimentConfig& cfg, const CsrGraph& g, const WorkloadResult& r) {
  switch (cfg.algorithm) {
    case Algorithm::kBfs:
      return r.levels == bfs_reference(g, cfg.source) ? "" : "bfs levels differ from the reference";
    case Algorithm::kSssp:
      return r.distances == sssp_reference(g, cfg.source) ? "" : "sssp distances differ from the reference";
    case Algorithm::kPageRank: {
      const std::vector<double> ref = pagerank_reference(g, cfg.iterations, cfg.damping);
      for (std::size_t v = 0; v < ref.size(); ++v) {
        if (std::abs(r.ranks[v] - ref[v]) > 1e-6 * std::abs(ref[v])) return "pagerank ranks differ from the reference";
      }
      return "";
    }
  }
  return "";
}

}  // namespace

void set_option(ExperimentConfig& cfg, const std::string& section, const std::string& key, const std::string& value) {
  const auto& t = setters();
  auto s = t.find(section);
  if (s == t.end()) throw ConfigError("unknown config section [" + section + "]");
  auto k = s->second.find(key);
  if (k == s->second.end()) throw ConfigError("unknown key '" + key + "' in [" + section + "]");
  k->second(cfg, value);
}

void apply_ini(ExperimentConfig& cfg, const IniFile& ini) {
  for (const IniEntry& e : ini.entries) {
    try {
      set_option(cfg, e.section, e.key, e.value);
    } catch (const ConfigError& err) {
      throw ConfigError("line " + std::to_string(e.line) + ": " + err.what());
    }
  }
}

void validate_config(const ExperimentConfig& cfg) {
  cfg.gpu.validate();
  if (!cfg.seed) throw ConfigError("a seed is required (--seed or [run] seed)");
  if (cfg.graph_path.empty() == cfg.generator.empty()) {
    throw ConfigError("exactly one of --graph and --generate must be given");
  }
  if (!cfg.graph_path.empty() && !std::filesystem::exists(cfg.graph_path)) {
    throw ConfigError("graph file '" + cfg.graph_path + "' does not exist");
  }
  if (!cfg.generator.empty()) parse_generator(cfg.generator);
  if (cfg.modes.empty()) throw ConfigError("no modes to run");
  if (cfg.algorithm == Algorithm::kPageRank && cfg.iterations == 0) throw ConfigError("iterations must be >= 1");
  if (!(cfg.damping >= 0.0 && cfg.damping <= 1.0)) throw ConfigError("damping must lie in [0, 1]");
  IruConfig probe = cfg.iru;
  probe.partitions = cfg.gpu.num_mem_partitions;
  probe.elems_per_entry = cfg.gpu.warp_size;
  probe.validate(cfg.gpu.warp_size);
}

GeneratorSpec parse_generator(const std::string& spec) {
  GeneratorSpec out;
  const auto colon = spec.find(':');
  out.kind = spec.substr(0, colon);
  static const std::map<std::string, std::vector<std::string>> allowed{
      {"rmat", {"scale", "ef", "a", "b", "c", "seed", "weights", "symmetric"}},
      {"grid", {"width", "height", "weights"}},
  };
  auto kind = allowed.find(out.kind);
  if (kind == allowed.end()) throw ConfigError("unknown generator '" + out.kind + "' (expected rmat or grid)");
  if (colon != std::string::npos) {
    for (const std::string& kv : split(spec.substr(colon + 1), ',')) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw ConfigError("generator parameter '" + kv + "' is not key=value");
      const std::string k = kv.substr(0, eq);
      if (std::find(kind->second.begin(), kind->second.end(), k) == kind->second.end()) {
        throw ConfigError("unknown " + out.kind + " parameter '" + k + "'");
      }
      out.params[k] = kv.substr(eq + 1);
    }
  }
  return out;
}

LoadedGraph build_graph(const ExperimentConfig& cfg) {
  LoadedGraph out;
  out.name = graph_label(cfg);
  const std::uint64_t seed = cfg.seed.value_or(0);
  EdgeList el;
  std::uint32_t weights = 0;
  if (!cfg.generator.empty()) {
    const GeneratorSpec g = parse_generator(cfg.generator);
    auto get = [&](const std::string& k) -> const std::string* {
      auto it = g.params.find(k);
      return it == g.params.end() ? nullptr : &it->second;
    };
    if (const std::string* w = get("weights")) weights = parse_u32("weights", *w);
    if (g.kind == "rmat") {
      RmatParams p;
      p.seed = seed;
      if (const std::string* v = get("scale")) p.scale = static_cast<int>(parse_u32("scale", *v));
      if (const std::string* v = get("ef")) p.edge_factor = static_cast<int>(parse_u32("ef", *v));
      if (const std::string* v = get("a")) p.a = parse_double("a", *v);
      if (const std::string* v = get("b")) p.b = parse_double("b", *v);
      if (const std::string* v = get("c")) p.c = parse_double("c", *v);
      if (const std::string* v = get("seed")) p.seed = parse_u64("seed", *v);
      el = generate_rmat(p);
      if (const std::string* v = get("symmetric"); v && parse_bool("symmetric", *v)) el = symmetrize(el);
    } else {
      const std::uint64_t w = get("width") ? parse_u64("width", *get("width")) : 16;
      const std::uint64_t h = get("height") ? parse_u64("height", *get("height")) : w;
      el = generate_grid(w, h);
    }
  } else {
    const std::filesystem::path p(cfg.graph_path);
    el = p.extension() == ".mtx" ? load_matrix_market(p) : load_edge_list(p);
  }
  if (weights > 0) assign_random_weights(el, weights, seed);
  out.graph = csr_from_edge_list(el, el.num_nodes);
  return out;
}

ExperimentOutcome run_experiment(const ExperimentConfig& cfg, std::ostream& log) {
  ExperimentOutcome out;
  validate_config(cfg);
  const LoadedGraph lg = build_graph(cfg);
  const std::vector<std::string> problems = validate_csr(lg.graph);
  log << "graph " << lg.name << ": " << lg.graph.num_nodes << " nodes, " << lg.graph.num_edges << " edges\n";
  for (const std::string& p : problems) {
    log << "invalid graph: " << p << '\n';
    out.errors.push_back(p);
  }
  if (lg.graph.num_nodes > 0 && cfg.source >= lg.graph.num_nodes) {
    out.errors.push_back("source " + std::to_string(cfg.source) + " is not a node of the graph");
    log << "invalid source: " << out.errors.back() << '\n';
  }
  if (!out.errors.empty()) {
    out.exit_code = 2;
    return out;
  }
  if (cfg.validate_only) {
    log << "configuration and graph are valid\n";
    return out;
  }

  WorkloadOptions opts;
  opts.gpu = cfg.gpu;
  opts.iru = cfg.iru;
  opts.source = cfg.source;
  opts.iterations = cfg.iterations;
  opts.damping = cfg.damping;
  const RunIdentity id{std::string(to_string(cfg.algorithm)) + "/" + lg.name + "/seed" + std::to_string(*cfg.seed),
                       to_string(cfg.algorithm), lg.name, *cfg.seed};
  std::optional<RunRecord> base, iru;
  for (Mode m : cfg.modes) {
    try {
      const WorkloadResult r = run_workload(cfg.algorithm, lg.graph, m, opts);
      const std::string bad = functional_check(cfg, lg.graph, r);
      if (!bad.empty()) throw SimulationError(bad);
      RunRecord rec{id, to_string(m), r.instrumented_tag, r.metrics};
      log << "  " << to_string(m) << ": " << r.metrics.cycles << " cycles\n";
      out.runs.push_back(rec);
      (m == Mode::kBaseline ? base : iru) = rec;
    } catch (const std::exception& e) {
      out.errors.push_back(std::string(to_string(m)) + ": " + e.what());
      log << "  " << to_string(m) << " failed: " << e.what() << '\n';
    }
  }
  if (base && iru) out.comparisons.push_back(compare(*base, *iru));

  std::filesystem::create_directories(cfg.out_dir);
  const std::filesystem::path dir(cfg.out_dir);
  write_csv(dir / "report.csv", out.runs, out.comparisons);
  write_json(dir / "report.json", out.runs, out.comparisons);
  write_summary(dir / "summary.txt", out.comparisons);
  emit_summary(log, out.comparisons);
  out.exit_code = out.errors.empty() ? 0 : 1;
  return out;
}

}  // namespace irusim
