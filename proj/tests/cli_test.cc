#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "irusim/cli/experiment.h"
#include "irusim/cli/ini.h"

using namespace irusim;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("irusim_cli_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

int run_cli(const std::string& args, const fs::path& log) {
  const std::string cmd = std::string(IRUSIM_CLI_PATH) + " " + args + " > " + log.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

ExperimentConfig small_bfs(const fs::path& out) {
  ExperimentConfig c;
  c.generator = "rmat:scale=8,ef=8";
  c.seed = 3;
  c.out_dir = out.string();
  return c;
}

}  // namespace

TEST(Ini, SectionsKeysAndComments) {
  const IniFile f = parse_ini("# top\n[gpu]\nnum_sms = 8 ; trailing\n\n[iru]\nhash=identity_mod\n");
  ASSERT_EQ(f.entries.size(), 2u);
  EXPECT_EQ(f.entries[0].section, "gpu");
  EXPECT_EQ(f.entries[0].key, "num_sms");
  EXPECT_EQ(f.entries[0].value, "8");
  EXPECT_EQ(f.entries[0].line, 3u);
  EXPECT_EQ(f.entries[1].value, "identity_mod");
}

TEST(Ini, MalformedInputRejected) {
  EXPECT_THROW(parse_ini("key=1\n"), ParseError);
  EXPECT_THROW(parse_ini("[gpu]\nnum_sms\n"), ParseError);
  EXPECT_THROW(parse_ini("[gpu\n"), ParseError);
  EXPECT_THROW(parse_ini("[gpu]\na=1\na=2\n"), ParseError);
  EXPECT_THROW(load_ini("/nonexistent/x.ini"), ConfigError);
}

TEST(Options, SetAndReject) {
  ExperimentConfig c;
  set_option(c, "gpu", "num_sms", "8");
  set_option(c, "iru", "timeout_cycles", "none");
  set_option(c, "iru", "hash", "identity_mod");
  set_option(c, "run", "modes", "iru");
  set_option(c, "workload", "algorithm", "sssp");
  EXPECT_EQ(c.gpu.num_sms, 8u);
  EXPECT_EQ(c.iru.timeout_cycles, kNeverCycle);
  EXPECT_EQ(c.iru.hash_fn, HashFn::kIdentityMod);
  EXPECT_EQ(c.modes, std::vector<Mode>{Mode::kIru});
  EXPECT_EQ(c.algorithm, Algorithm::kSssp);
  EXPECT_THROW(set_option(c, "gpu", "nope", "1"), ConfigError);
  EXPECT_THROW(set_option(c, "nope", "num_sms", "1"), ConfigError);
  EXPECT_THROW(set_option(c, "gpu", "num_sms", "8x"), ConfigError);
  EXPECT_THROW(set_option(c, "gpu", "num_sms", "-1"), ConfigError);
  EXPECT_THROW(set_option(c, "iru", "hash", "md5"), ConfigError);
  EXPECT_THROW(set_option(c, "run", "modes", "fast"), ConfigError);
}

TEST(Options, IniErrorsNameTheLine) {
  ExperimentConfig c;
  try {
    apply_ini(c, parse_ini("[gpu]\nnum_sms=4\nbogus=1\n"));
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
  }
}

TEST(Options, ValidateConfig) {
  ExperimentConfig c = small_bfs(scratch_dir("validate"));
  EXPECT_NO_THROW(validate_config(c));
  ExperimentConfig no_seed = c;
  no_seed.seed.reset();
  EXPECT_THROW(validate_config(no_seed), ConfigError);
  ExperimentConfig both = c;
  both.graph_path = "x.mtx";
  EXPECT_THROW(validate_config(both), ConfigError);
  ExperimentConfig missing = c;
  missing.generator.clear();
  missing.graph_path = "/nonexistent/g.mtx";
  EXPECT_THROW(validate_config(missing), ConfigError);
  ExperimentConfig damp = c;
  damp.damping = 1.5;
  EXPECT_THROW(validate_config(damp), ConfigError);
}

TEST(Generator, ParsesKindAndParams) {
  const GeneratorSpec g = parse_generator("rmat:scale=10,ef=16");
  EXPECT_EQ(g.kind, "rmat");
  EXPECT_EQ(g.params.at("scale"), "10");
  EXPECT_EQ(g.params.at("ef"), "16");
  EXPECT_EQ(parse_generator("grid:width=4,height=3").kind, "grid");
  EXPECT_THROW(parse_generator("torus:n=3"), ConfigError);
  EXPECT_THROW(parse_generator("rmat:scale"), ConfigError);
  EXPECT_THROW(parse_generator("rmat:bogus=1"), ConfigError);
}

TEST(Experiment, BadSourceIsAnErrorExit) {
  ExperimentConfig c = small_bfs(scratch_dir("badsource"));
  c.source = 1u << 20;
  std::ostringstream log;
  EXPECT_EQ(run_experiment(c, log).exit_code, 2);
}

TEST(Experiment, ValidateOnlyWritesNothing) {
  const fs::path out = scratch_dir("validate_only") / "out";
  ExperimentConfig c = small_bfs(out);
  c.validate_only = true;
  std::ostringstream log;
  EXPECT_EQ(run_experiment(c, log).exit_code, 0);
  EXPECT_NE(log.str().find("valid"), std::string::npos);
  EXPECT_FALSE(fs::exists(out));
}

TEST(CliBinary, RunsBothModesAndCompares) {
  const fs::path dir = scratch_dir("run");
  const int rc = run_cli("run --algo bfs --generate rmat:scale=10,ef=16 --seed 1 --modes baseline,iru --out " +
                             (dir / "out").string(),
                         dir / "log.txt");
  ASSERT_EQ(rc, 0) << slurp(dir / "log.txt");
  const std::string csv = slurp(dir / "out" / "report.csv");
  EXPECT_EQ(csv.rfind("run_id,algorithm,graph,mode,metric,value\n", 0), 0u);
  EXPECT_NE(csv.find(",baseline,cycles,"), std::string::npos);
  EXPECT_NE(csv.find(",iru,cycles,"), std::string::npos);
  EXPECT_NE(csv.find(",iru_vs_baseline,speedup_baseline_over_iru,"), std::string::npos);
  EXPECT_TRUE(fs::exists(dir / "out" / "report.json"));
  EXPECT_TRUE(fs::exists(dir / "out" / "summary.txt"));
}

TEST(CliBinary, RerunIsByteIdentical) {
  const fs::path dir = scratch_dir("rerun");
  const std::string args = "run --algo pagerank --generate rmat:scale=9,ef=8 --seed 5 --iterations 2 --out ";
  ASSERT_EQ(run_cli(args + (dir / "a").string(), dir / "a.log"), 0);
  ASSERT_EQ(run_cli(args + (dir / "b").string(), dir / "b.log"), 0);
  for (const char* f : {"report.csv", "report.json", "summary.txt"}) {
    EXPECT_EQ(slurp(dir / "a" / f), slurp(dir / "b" / f)) << f;
  }
}

TEST(CliBinary, UsageErrorsExitNonzero) {
  const fs::path dir = scratch_dir("errors");
  EXPECT_EQ(run_cli("run --algo bfs --generate rmat:scale=8 --seed 1 --hash md5 --validate-only", dir / "1.log"), 2);
  EXPECT_NE(slurp(dir / "1.log").find("--hash"), std::string::npos);
  EXPECT_EQ(run_cli("run --algo bfs --generate rmat:scale=8 --validate-only", dir / "2.log"), 2);
  EXPECT_NE(run_cli("", dir / "3.log"), 0);
  std::ofstream(dir / "bad.ini") << "[gpu]\nwarp_sizee=32\n";
  EXPECT_EQ(run_cli("run --config " + (dir / "bad.ini").string() + " --seed 1 --generate rmat:scale=8", dir / "4.log"),
            2);
  EXPECT_NE(slurp(dir / "4.log").find("line 2"), std::string::npos);
}

TEST(CliBinary, ConfigFileThenFlags) {
  const fs::path dir = scratch_dir("config");
  std::ofstream(dir / "c.ini") << "[workload]\nalgorithm = sssp\ngenerate = grid:width=8,height=8,weights=5\n"
                                  "[run]\nseed = 2\nmodes = iru\n";
  ASSERT_EQ(run_cli("run --config " + (dir / "c.ini").string() + " --modes baseline --out " + (dir / "out").string(),
                    dir / "log.txt"),
            0)
      << slurp(dir / "log.txt");
  const std::string csv = slurp(dir / "out" / "report.csv");
  EXPECT_NE(csv.find("sssp/"), std::string::npos);
  EXPECT_NE(csv.find(",baseline,"), std::string::npos);
  EXPECT_EQ(csv.find(",iru,"), std::string::npos);
}
