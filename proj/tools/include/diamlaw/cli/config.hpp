#ifndef DIAMLAW_CLI_CONFIG_HPP
#define DIAMLAW_CLI_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "diamlaw/sampling.hpp"

namespace diamlaw::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitRuntime = 3;
inline constexpr int kExitCheck = 4;

enum class Experiment {
  sample,
  diameter,
  constant,
  tail,
  overlap,
  poisson,
  limit,
  exponent,
  chenstein,
  all,
};

std::string_view to_string(Experiment e) noexcept;
/// Throws ConfigError naming "experiment".
Experiment experiment_from_string(std::string_view name);

enum class Profile { none, quick, desk };

std::string_view to_string(Profile p) noexcept;

/// Every knob of a run.  Defaults are the desk-scale acceptance budgets.
/// Shared flags (--n, --reps, --eps, --t) write the field belonging to the
/// selected experiment; the config file uses the specific keys.
struct RunConfig {
  Experiment experiment = Experiment::all;
  Profile profile = Profile::none;
  double a = 0.5;
  std::uint64_t seed = 1;
  unsigned workers = 1;  // 0: all hardware threads
  std::string output_dir = "results";
  bool check = false;
  std::optional<double> lambda_override;

  // sample
  std::uint64_t n_sample = 1'000'000;
  SampleMethod sampler = SampleMethod::rejection;
  std::string dump = "csv";  // csv | binary | none

  // diameter
  std::uint64_t n_diameter = 10'000;
  std::vector<double> t_diameter = {0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0, 4.5, 5.0};

  // constant
  std::string method = "both";  // mc5d | reduced3d | both
  std::uint64_t mc_budget = 100'000'000;
  std::uint64_t cells = 400;
  std::uint64_t refined_cells = 800;

  // tail
  std::uint64_t pairs = 100'000'000;
  std::vector<double> eps_tail = {0.2, 0.15, 0.1, 0.05, 0.03, 0.02};
  double tail_fit_min = 0.02;
  double tail_fit_max = 0.2;
  std::string tail_sampler = "localized";  // localized | plain

  // overlap
  std::uint64_t n_outer = 10'000;
  std::uint64_t n_inner = 10'000;
  std::vector<double> eps_overlap = {0.3, 0.2, 0.15, 0.1, 0.075, 0.05};
  double overlap_fit_min = 0.1;
  double overlap_fit_max = 0.3;

  // poisson
  std::uint64_t n_poisson = 100'000;
  std::uint64_t reps_poisson = 2000;
  double lambda_target = 1.0;
  std::vector<double> t_poisson = {0.0};  // the t with lambda(t) = lambda_target is appended

  // limit
  std::uint64_t n_limit = 200'000;
  std::uint64_t reps_limit = 2000;

  // exponent
  std::string mode = "all";  // circle | interior | ball | all
  std::vector<std::uint64_t> n_grid = {10'000, 30'000, 100'000, 300'000};
  std::uint64_t reps_exponent = 500;

  // chenstein
  std::vector<std::uint64_t> cs_n_grid = {10'000, 20'000, 50'000, 100'000};
  double cs_t = 0.0;  // 0: largest t keeping every eps_n inside both curves

  bool operator==(const RunConfig&) const = default;
};

/// A validation failure; field() is the offending key.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

struct ParseResult {
  RunConfig config;
  bool help = false;  // --help was given; help_text holds the usage
  std::string help_text;
};

/// args excludes the program name.  Profile values fill every field not
/// given in the config file or on the command line; flags beat the file.
/// Throws ConfigError.
ParseResult parse_config(const std::vector<std::string>& args);

/// Field values for a profile.
RunConfig profile_defaults(Profile p);

/// Rejects values the selected experiment cannot use.  Throws ConfigError.
void validate(const RunConfig& config);

/// Config file text (TOML key = value, keys as the long flag names).
std::string to_config_text(const RunConfig& config);

/// The same fields as a JSON object, for records and manifests.
std::string to_config_json(const RunConfig& config);

/// "1e8", "2.5e5", "300000" -> integer; rejects fractions and negatives.
std::uint64_t parse_count(std::string_view field, std::string_view text);

}  // namespace diamlaw::cli

#endif  // DIAMLAW_CLI_CONFIG_HPP
