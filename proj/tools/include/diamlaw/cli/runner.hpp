#ifndef DIAMLAW_CLI_RUNNER_HPP
#define DIAMLAW_CLI_RUNNER_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "diamlaw/cli/config.hpp"

namespace diamlaw::cli {

struct CheckResult {
  std::string name;
  bool passed = false;
  double value = 0.0;
  std::string requirement;
};

/// Written last, atomically; a results directory without it is invalid.
struct RunManifest {
  std::string config_json;
  std::string version;
  std::string timestamp;  // UTC, ISO 8601
  double wall_clock_seconds = 0.0;
  std::vector<std::string> outputs;  // file names relative to output_dir
  std::vector<CheckResult> checks;
};

struct RunOutcome {
  int exit_code = kExitOk;
  RunManifest manifest;
  std::string manifest_path;  // empty when the run failed
  std::string error;
};

/// Runs the configured experiment(s) and persists records under
/// config.output_dir.  Files are written with a ".partial" suffix and renamed
/// once every output exists; the manifest comes last.  Never throws.
RunOutcome run(const RunConfig& config, std::ostream& log);

/// parse_config + run, mapping failures to exit codes.
int run_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace diamlaw::cli

#endif  // DIAMLAW_CLI_RUNNER_HPP
