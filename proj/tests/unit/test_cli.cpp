#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "diamlaw/cli/config.hpp"
#include "diamlaw/cli/runner.hpp"
#include "diamlaw/records.hpp"

namespace fs = std::filesystem;

namespace diamlaw::cli {
namespace {

class TempDir {
 public:
  explicit TempDir(const std::string& name)
      : path_(fs::temp_directory_path() / ("diamlaw_test_" + name)) {
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }
  std::string str() const { return path_.string(); }

 private:
  fs::path path_;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

int run_args(const std::vector<std::string>& args, std::string* out_text = nullptr,
             std::string* err_text = nullptr) {
  std::ostringstream out, err;
  const int code = run_main(args, out, err);
  if (out_text) *out_text = out.str();
  if (err_text) *err_text = err.str();
  return code;
}

std::string config_error_field(const std::vector<std::string>& args) {
  try {
    validate(parse_config(args).config);
  } catch (const ConfigError& e) {
    return e.field();
  }
  return "";
}

TEST(Config, DeskDefaults) {
  const RunConfig c = parse_config({"limit"}).config;
  EXPECT_EQ(c.experiment, Experiment::limit);
  EXPECT_EQ(c.n_limit, 200000u);
  EXPECT_EQ(c.reps_limit, 2000u);
  EXPECT_EQ(c.a, 0.5);
}

TEST(Config, SharedFlagsTargetExperiment) {
  const RunConfig c = parse_config({"poisson", "--n", "2e4", "--reps", "600"}).config;
  EXPECT_EQ(c.n_poisson, 20000u);
  EXPECT_EQ(c.reps_poisson, 600u);
  const RunConfig t = parse_config({"tail", "--eps", "0.2,0.1", "--pairs", "1e8"}).config;
  EXPECT_EQ(t.eps_tail, (std::vector<double>{0.2, 0.1}));
  EXPECT_EQ(t.pairs, 100000000u);
  EXPECT_THROW(parse_config({"constant", "--n", "10"}), ConfigError);
}

TEST(Config, Counts) {
  EXPECT_EQ(parse_count("pairs", "1e8"), 100000000u);
  EXPECT_EQ(parse_count("pairs", "2.5e5"), 250000u);
  EXPECT_EQ(parse_count("pairs", "300000"), 300000u);
  EXPECT_THROW(parse_count("pairs", "1.5"), ConfigError);
  EXPECT_THROW(parse_count("pairs", "-3"), ConfigError);
  EXPECT_THROW(parse_count("pairs", "lots"), ConfigError);
}

TEST(Config, ErrorsNameTheField) {
  EXPECT_EQ(config_error_field({"limit", "--a", "1.5"}), "a");
  EXPECT_EQ(config_error_field({"tail", "--pairs", "1000"}), "pairs");
  EXPECT_EQ(config_error_field({"overlap", "--n-inner", "100"}), "n-inner");
  EXPECT_EQ(config_error_field({"poisson", "--reps", "10"}), "reps-poisson");
  EXPECT_EQ(config_error_field({"limit", "--n", "100"}), "n-limit");
  EXPECT_EQ(config_error_field({"tail", "--eps", "0.5"}), "eps-tail");
  EXPECT_EQ(config_error_field({"sample", "--sampler", "gibbs"}), "sampler");
  EXPECT_EQ(config_error_field({"teleport"}), "experiment");
}

TEST(Config, ProfileAndOverrides) {
  const RunConfig q = parse_config({"limit", "--profile", "quick"}).config;
  EXPECT_EQ(q.n_limit, 10000u);
  const RunConfig o = parse_config({"limit", "--profile", "quick", "--n", "20000"}).config;
  EXPECT_EQ(o.n_limit, 20000u);
  EXPECT_EQ(o.reps_limit, 1000u);
}

TEST(Config, FileRoundTrip) {
  TempDir dir("config");
  RunConfig c = parse_config({"overlap", "--profile", "quick", "--a", "0.3", "--seed", "99",
                              "--eps", "0.3,0.2,0.1", "--lambda-override", "0.4"})
                    .config;
  const fs::path file = dir.path() / "run.toml";
  std::ofstream(file) << to_config_text(c);
  const RunConfig back = parse_config({"--config", file.string()}).config;
  EXPECT_EQ(back, c);
  EXPECT_EQ(to_config_text(back), to_config_text(c));
}

TEST(Config, FlagsBeatFile) {
  TempDir dir("config2");
  const fs::path file = dir.path() / "run.toml";
  std::ofstream(file) << "experiment = \"limit\"\nseed = 5\nn-limit = 30000\n";
  const RunConfig c = parse_config({"--config", file.string(), "--seed", "6"}).config;
  EXPECT_EQ(c.seed, 6u);
  EXPECT_EQ(c.n_limit, 30000u);
  std::ofstream(file) << "experiment = \"limit\"\nbogus-key = 1\n";
  EXPECT_THROW(parse_config({"--config", file.string()}), ConfigError);
}

TEST(Config, HelpIsNotAnError) {
  std::string out;
  EXPECT_EQ(run_args({"--help"}, &out), kExitOk);
  EXPECT_NE(out.find("--pairs"), std::string::npos);
}

TEST(Run, ConfigErrorExitCode) {
  std::string err;
  EXPECT_EQ(run_args({"limit", "--a", "2"}, nullptr, &err), kExitConfig);
  EXPECT_NE(err.find("a:"), std::string::npos);
}

TEST(Run, RuntimeErrorExitCode) {
  TempDir dir("runtime");
  const fs::path blocker = dir.path() / "file";
  std::ofstream(blocker) << "x";
  EXPECT_EQ(run_args({"diameter", "--profile", "quick", "--output-dir", (blocker / "sub").string()}),
            kExitRuntime);
}

TEST(Run, WritesRecordsAndManifest) {
  TempDir dir("diameter");
  std::string out;
  ASSERT_EQ(run_args({"diameter", "--profile", "quick", "--seed", "3", "--output-dir", dir.str(),
                      "--check"},
                     &out),
            kExitOk);
  const fs::path manifest = dir.path() / "diameter_a0.5_n2000_seed3.manifest.json";
  EXPECT_TRUE(fs::exists(manifest));
  EXPECT_TRUE(fs::exists(dir.path() / "diameter_a0.5_n2000_seed3.csv"));
  EXPECT_TRUE(fs::exists(dir.path() / "diameter_a0.5_n2000_seed3.json"));
  for (const auto& entry : fs::directory_iterator(dir.path())) {
    EXPECT_NE(entry.path().extension(), ".partial") << entry.path();
  }
  const std::string m = slurp(manifest);
  for (const char* key : {"\"config\"", "\"version\"", "\"timestamp\"", "\"wall_clock_seconds\"",
                          "\"outputs\"", "\"checks\""}) {
    EXPECT_NE(m.find(key), std::string::npos) << key;
  }
}

TEST(Run, RerunIsByteIdentical) {
  TempDir x("rerun_x"), y("rerun_y");
  const std::vector<std::string> base = {"tail", "--profile", "quick", "--seed", "8",
                                         "--eps", "0.2,0.1,0.05"};
  auto with_dir = [&](const TempDir& d, const char* workers) {
    auto args = base;
    args.insert(args.end(), {"--output-dir", d.str(), "--workers", workers});
    return run_args(args);
  };
  ASSERT_EQ(with_dir(x, "1"), kExitOk);
  ASSERT_EQ(with_dir(y, "4"), kExitOk);
  const std::string name = "tail_a0.5_n1000000_seed8.csv";
  const std::string body = diamlaw::csv_body(slurp(x.path() / name));
  EXPECT_FALSE(body.empty());
  EXPECT_EQ(body, diamlaw::csv_body(slurp(y.path() / name)));
}

TEST(Run, FailedCheckExitCode) {
  TempDir dir("check");
  EXPECT_EQ(run_args({"limit", "--profile", "quick", "--reps", "1000", "--lambda-override", "20",
                      "--check", "--output-dir", dir.str()}),
            kExitCheck);
  // without --check the same run succeeds
  EXPECT_EQ(run_args({"limit", "--profile", "quick", "--lambda-override", "20", "--output-dir",
                      dir.str()}),
            kExitOk);
}

TEST(Binary, ExitCodes) {
  const std::string exe = DIAMLAW_CLI_PATH;
  EXPECT_EQ(WEXITSTATUS(std::system((exe + " --help > /dev/null").c_str())), kExitOk);
  EXPECT_EQ(WEXITSTATUS(std::system((exe + " limit --a 7 2> /dev/null").c_str())), kExitConfig);
}

}  // namespace
}  // namespace diamlaw::cli
