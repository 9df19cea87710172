#include "diamlaw/cli/config.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>

#include "CLI11.hpp"
#include "json.hpp"

namespace diamlaw::cli {

namespace {

constexpr double kMaxCount = 9007199254740992.0;  // 2^53

constexpr std::uint64_t kMinTailPairs = 1'000'000;
constexpr std::uint64_t kMinInner = 10'000;
constexpr std::uint64_t kMinPoissonN = 10'000;
constexpr std::uint64_t kMinPoissonReps = 500;
constexpr std::uint64_t kMinLimitN = 10'000;
constexpr std::uint64_t kMinLimitReps = 1000;
constexpr double kMaxGridEps = 0.3;

const std::vector<std::pair<Experiment, std::string_view>> kExperimentNames = {
    {Experiment::sample, "sample"},     {Experiment::diameter, "diameter"},
    {Experiment::constant, "constant"}, {Experiment::tail, "tail"},
    {Experiment::overlap, "overlap"},   {Experiment::poisson, "poisson"},
    {Experiment::limit, "limit"},       {Experiment::exponent, "exponent"},
    {Experiment::chenstein, "chenstein"}, {Experiment::all, "all"},
};

double parse_real(std::string_view field, std::string_view text) {
  const std::string s(text);
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE || !std::isfinite(v)) {
    throw ConfigError(std::string(field), "expected a real number, got '" + s + "'");
  }
  return v;
}

std::vector<double> parse_reals(std::string_view field, const std::vector<std::string>& raw) {
  std::vector<double> out;
  for (const auto& r : raw) {
    if (!r.empty()) out.push_back(parse_real(field, r));
  }
  return out;
}

std::vector<std::uint64_t> parse_counts(std::string_view field,
                                        const std::vector<std::string>& raw) {
  std::vector<std::uint64_t> out;
  for (const auto& r : raw) {
    if (!r.empty()) out.push_back(parse_count(field, r));
  }
  return out;
}

Profile profile_from_string(std::string_view name) {
  if (name == "none") return Profile::none;
  if (name == "quick") return Profile::quick;
  if (name == "desk") return Profile::desk;
  throw ConfigError("profile", "expected none, quick or desk, got '" + std::string(name) + "'");
}

void require_one_of(std::string_view field, const std::string& value,
                    std::initializer_list<std::string_view> allowed) {
  for (auto v : allowed) {
    if (value == v) return;
  }
  std::string list;
  for (auto v : allowed) {
    if (!list.empty()) list += ", ";
    list += v;
  }
  throw ConfigError(std::string(field), "expected one of " + list + ", got '" + value + "'");
}

void require(bool ok, std::string_view field, const std::string& message) {
  if (!ok) throw ConfigError(std::string(field), message);
}

void require_eps_grid(std::string_view field, const std::vector<double>& grid) {
  require(!grid.empty(), field, "grid is empty");
  for (double e : grid) {
    require(e > 0.0 && e <= kMaxGridEps, field, "every eps must lie in (0, 0.3]");
  }
  std::vector<double> sorted = grid;
  std::sort(sorted.begin(), sorted.end());
  require(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end(), field,
          "grid has duplicate values");
}

void require_interior_a(double a) {
  require(a > 0.0 && a < 1.0, "a", "this experiment needs 0 < a < 1");
}

std::string quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

std::string real(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

template <class T, class Fmt>
std::string array(const std::vector<T>& values, Fmt fmt) {
  std::string out = "[";
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (k) out += ", ";
    out += fmt(values[k]);
  }
  return out + "]";
}

std::string count(std::uint64_t v) { return std::to_string(v); }

}  // namespace

std::string_view to_string(Experiment e) noexcept {
  for (const auto& [k, name] : kExperimentNames) {
    if (k == e) return name;
  }
  return "unknown";
}

Experiment experiment_from_string(std::string_view name) {
  for (const auto& [k, n] : kExperimentNames) {
    if (n == name) return k;
  }
  throw ConfigError("experiment", "unknown experiment '" + std::string(name) + "'");
}

std::string_view to_string(Profile p) noexcept {
  switch (p) {
    case Profile::none: return "none";
    case Profile::quick: return "quick";
    case Profile::desk: return "desk";
  }
  return "unknown";
}

std::uint64_t parse_count(std::string_view field, std::string_view text) {
  const double v = parse_real(field, text);
  if (!(v >= 0.0) || v != std::floor(v) || v > kMaxCount) {
    throw ConfigError(std::string(field),
                      "expected a nonnegative integer count, got '" + std::string(text) + "'");
  }
  return static_cast<std::uint64_t>(v);
}

RunConfig profile_defaults(Profile p) {
  RunConfig c;
  c.profile = p;
  if (const char* env = std::getenv("DIAMLAW_OUTPUT_DIR"); env != nullptr && *env != '\0') {
    c.output_dir = env;
  }
  if (p == Profile::quick) {
    c.n_sample = 100'000;
    c.n_diameter = 2000;
    c.mc_budget = 1'000'000;
    c.cells = 50;
    c.refined_cells = 100;
    c.pairs = 1'000'000;
    c.n_outer = 200;
    c.n_inner = 10'000;
    c.n_poisson = 10'000;
    c.reps_poisson = 500;
    c.n_limit = 10'000;
    c.reps_limit = 1000;
    c.n_grid = {1000, 10'000};
    c.reps_exponent = 50;
    c.cs_n_grid = {10'000, 100'000};
  }
  return c;
}

ParseResult parse_config(const std::vector<std::string>& args) {
  CLI::App app{"Sample-diameter limit law verification suite", "diamlaw"};
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.set_config("--config", "", "TOML config file; keys are the long flag names");

  std::map<std::string, std::string> s;  // scalar options by key
  std::map<std::string, std::vector<std::string>> v;  // list options by key
  std::map<std::string, CLI::Option*> opts;
  bool check = false;

  auto scalar = [&](const std::string& key, const std::string& help) {
    opts[key] = app.add_option("--" + key, s[key], help);
  };
  auto list = [&](const std::string& key, const std::string& help) {
    opts[key] = app.add_option("--" + key, v[key], help)->delimiter(',');
  };

  opts["experiment"] =
      app.add_option("experiment", s["experiment"],
                     "sample | diameter | constant | tail | overlap | poisson | limit | "
                     "exponent | chenstein | all");
  scalar("profile", "none | quick | desk (acceptance budgets)");
  scalar("a", "ellipsoid semi-axis a");
  scalar("seed", "master seed");
  scalar("workers", "worker threads (0 = all hardware threads)");
  scalar("output-dir", "results directory (default $DIAMLAW_OUTPUT_DIR or ./results)");
  opts["check"] = app.add_flag("--check", check, "evaluate acceptance tolerances; exit 4 on failure");
  scalar("lambda-override", "use this Lambda_a instead of the quadrature value");

  scalar("n", "sample size of the selected experiment");
  scalar("reps", "replications of the selected experiment");
  list("eps", "eps grid of the selected experiment");
  list("t", "t grid (diameter, poisson) or t (chenstein)");

  scalar("n-sample", "sample: number of points");
  scalar("sampler", "parameter | rejection | ball-scaling | circle-diagnostic | disk-diagnostic");
  scalar("dump", "sample: csv | binary | none");
  scalar("n-diameter", "diameter: number of points");
  list("t-diameter", "diameter: t grid for N_n(t)");
  scalar("method", "constant: mc5d | reduced3d | both");
  scalar("mc-budget", "constant: Monte Carlo samples");
  scalar("cells", "constant: quadrature cells per axis (medium grid)");
  scalar("refined-cells", "constant: quadrature cells per axis (fine grid)");
  scalar("pairs", "tail: pair budget");
  list("eps-tail", "tail: eps grid");
  scalar("tail-fit-min", "tail: smallest eps in the slope fit");
  scalar("tail-fit-max", "tail: largest eps in the slope fit");
  scalar("tail-sampler", "tail: localized | plain");
  scalar("n-outer", "overlap: outer anchors");
  scalar("n-inner", "overlap: inner partners per anchor");
  list("eps-overlap", "overlap: eps grid");
  scalar("overlap-fit-min", "overlap: smallest eps in the slope fit");
  scalar("overlap-fit-max", "overlap: largest eps in the slope fit");
  scalar("n-poisson", "poisson: number of points");
  scalar("reps-poisson", "poisson: replications");
  scalar("lambda-target", "poisson: adds the t with Lambda_a t^{7/2} equal to this");
  list("t-poisson", "poisson: t grid");
  scalar("n-limit", "limit: number of points");
  scalar("reps-limit", "limit: replications");
  scalar("mode", "exponent: circle | interior | ball | all");
  list("n-grid", "exponent: sample sizes");
  scalar("reps-exponent", "exponent: replications per sample size");
  list("cs-n-grid", "chenstein: sample sizes");
  scalar("cs-t", "chenstein: t (0 = widest t covered by both curves)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    ParseResult r;
    r.help = true;
    r.help_text = app.help();
    return r;
  } catch (const CLI::ParseError& e) {
    throw ConfigError("arguments", e.what());
  }

  auto given = [&](const std::string& key) { return opts.at(key)->count() > 0; };

  const Profile profile = given("profile") ? profile_from_string(s["profile"]) : Profile::none;
  RunConfig c = profile_defaults(profile);

  if (given("experiment")) c.experiment = experiment_from_string(s["experiment"]);
  if (given("a")) c.a = parse_real("a", s["a"]);
  if (given("seed")) c.seed = parse_count("seed", s["seed"]);
  if (given("workers")) {
    const auto w = parse_count("workers", s["workers"]);
    require(w <= 4096, "workers", "at most 4096 workers");
    c.workers = static_cast<unsigned>(w);
  }
  if (given("output-dir")) c.output_dir = s["output-dir"];
  if (given("check")) c.check = check;
  if (given("lambda-override")) c.lambda_override = parse_real("lambda-override", s["lambda-override"]);

  if (given("n-sample")) c.n_sample = parse_count("n-sample", s["n-sample"]);
  if (given("sampler")) {
    try {
      c.sampler = sample_method_from_string(s["sampler"]);
    } catch (const std::invalid_argument& e) {
      throw ConfigError("sampler", e.what());
    }
  }
  if (given("dump")) c.dump = s["dump"];
  if (given("n-diameter")) c.n_diameter = parse_count("n-diameter", s["n-diameter"]);
  if (given("t-diameter")) c.t_diameter = parse_reals("t-diameter", v["t-diameter"]);
  if (given("method")) c.method = s["method"];
  if (given("mc-budget")) c.mc_budget = parse_count("mc-budget", s["mc-budget"]);
  if (given("cells")) c.cells = parse_count("cells", s["cells"]);
  if (given("refined-cells")) c.refined_cells = parse_count("refined-cells", s["refined-cells"]);
  if (given("pairs")) c.pairs = parse_count("pairs", s["pairs"]);
  if (given("eps-tail")) c.eps_tail = parse_reals("eps-tail", v["eps-tail"]);
  if (given("tail-fit-min")) c.tail_fit_min = parse_real("tail-fit-min", s["tail-fit-min"]);
  if (given("tail-fit-max")) c.tail_fit_max = parse_real("tail-fit-max", s["tail-fit-max"]);
  if (given("tail-sampler")) c.tail_sampler = s["tail-sampler"];
  if (given("n-outer")) c.n_outer = parse_count("n-outer", s["n-outer"]);
  if (given("n-inner")) c.n_inner = parse_count("n-inner", s["n-inner"]);
  if (given("eps-overlap")) c.eps_overlap = parse_reals("eps-overlap", v["eps-overlap"]);
  if (given("overlap-fit-min")) {
    c.overlap_fit_min = parse_real("overlap-fit-min", s["overlap-fit-min"]);
  }
  if (given("overlap-fit-max")) {
    c.overlap_fit_max = parse_real("overlap-fit-max", s["overlap-fit-max"]);
  }
  if (given("n-poisson")) c.n_poisson = parse_count("n-poisson", s["n-poisson"]);
  if (given("reps-poisson")) c.reps_poisson = parse_count("reps-poisson", s["reps-poisson"]);
  if (given("lambda-target")) c.lambda_target = parse_real("lambda-target", s["lambda-target"]);
  if (given("t-poisson")) c.t_poisson = parse_reals("t-poisson", v["t-poisson"]);
  if (given("n-limit")) c.n_limit = parse_count("n-limit", s["n-limit"]);
  if (given("reps-limit")) c.reps_limit = parse_count("reps-limit", s["reps-limit"]);
  if (given("mode")) c.mode = s["mode"];
  if (given("n-grid")) c.n_grid = parse_counts("n-grid", v["n-grid"]);
  if (given("reps-exponent")) c.reps_exponent = parse_count("reps-exponent", s["reps-exponent"]);
  if (given("cs-n-grid")) c.cs_n_grid = parse_counts("cs-n-grid", v["cs-n-grid"]);
  if (given("cs-t")) c.cs_t = parse_real("cs-t", s["cs-t"]);

  // Shared flags resolve against the selected experiment.
  const std::string exp_name(to_string(c.experiment));
  if (given("n")) {
    const auto n = parse_count("n", s["n"]);
    switch (c.experiment) {
      case Experiment::sample: c.n_sample = n; break;
      case Experiment::diameter: c.n_diameter = n; break;
      case Experiment::poisson: c.n_poisson = n; break;
      case Experiment::limit: c.n_limit = n; break;
      default: throw ConfigError("n", "--n does not apply to '" + exp_name + "'");
    }
  }
  if (given("reps")) {
    const auto r = parse_count("reps", s["reps"]);
    switch (c.experiment) {
      case Experiment::poisson: c.reps_poisson = r; break;
      case Experiment::limit: c.reps_limit = r; break;
      case Experiment::exponent: c.reps_exponent = r; break;
      default: throw ConfigError("reps", "--reps does not apply to '" + exp_name + "'");
    }
  }
  if (given("eps")) {
    auto e = parse_reals("eps", v["eps"]);
    switch (c.experiment) {
      case Experiment::tail: c.eps_tail = std::move(e); break;
      case Experiment::overlap: c.eps_overlap = std::move(e); break;
      default: throw ConfigError("eps", "--eps does not apply to '" + exp_name + "'");
    }
  }
  if (given("t")) {
    auto t = parse_reals("t", v["t"]);
    switch (c.experiment) {
      case Experiment::diameter: c.t_diameter = std::move(t); break;
      case Experiment::poisson: c.t_poisson = std::move(t); break;
      case Experiment::chenstein:
        require(t.size() == 1, "t", "chenstein takes a single t");
        c.cs_t = t.front();
        break;
      default: throw ConfigError("t", "--t does not apply to '" + exp_name + "'");
    }
  }

  validate(c);
  ParseResult r;
  r.config = std::move(c);
  return r;
}

void validate(const RunConfig& c) {
  require(c.a >= 0.0 && c.a <= 1.0, "a", "must lie in [0, 1]");
  require(!c.output_dir.empty(), "output-dir", "must not be empty");
  if (c.lambda_override) {
    require(*c.lambda_override > 0.0, "lambda-override", "must be positive");
  }
  const Experiment e = c.experiment;
  const bool all = e == Experiment::all;

  if (all || e == Experiment::sample) {
    require(c.n_sample >= 1, "n-sample", "must be >= 1");
    require_one_of("dump", c.dump, {"csv", "binary", "none"});
    const bool diagnostic = c.sampler == SampleMethod::circle_diagnostic ||
                            c.sampler == SampleMethod::disk_diagnostic;
    if (!diagnostic) require(c.a > 0.0, "a", "sampling E needs a > 0");
  }
  if (all || e == Experiment::diameter) {
    require(c.n_diameter >= 2, "n-diameter", "must be >= 2");
    require_interior_a(c.a);
    require(!c.t_diameter.empty(), "t-diameter", "grid is empty");
    for (double t : c.t_diameter) require(t >= 0.0, "t-diameter", "every t must be >= 0");
    require(c.sampler != SampleMethod::circle_diagnostic &&
                c.sampler != SampleMethod::disk_diagnostic,
            "sampler", "diameter needs a sampler of E");
  }
  if (all || e == Experiment::constant) {
    require_interior_a(c.a);
    require_one_of("method", c.method, {"mc5d", "reduced3d", "both"});
    require(c.mc_budget >= 1, "mc-budget", "must be >= 1");
    require(c.cells >= 2, "cells", "must be >= 2");
    require(c.refined_cells > c.cells, "refined-cells", "must exceed cells");
    if (c.method != "reduced3d") require(c.a <= 0.95, "a", "mc5d needs a <= 0.95");
  }
  if (all || e == Experiment::tail || e == Experiment::chenstein) {
    require_interior_a(c.a);
    require(c.pairs >= kMinTailPairs, "pairs", "must be >= 1e6");
    require_eps_grid("eps-tail", c.eps_tail);
    require(c.tail_fit_min < c.tail_fit_max, "tail-fit-min", "must be below tail-fit-max");
    require_one_of("tail-sampler", c.tail_sampler, {"localized", "plain"});
  }
  if (all || e == Experiment::overlap || e == Experiment::chenstein) {
    require_interior_a(c.a);
    require(c.n_outer >= 2, "n-outer", "must be >= 2");
    require(c.n_inner >= kMinInner, "n-inner", "must be >= 1e4");
    require_eps_grid("eps-overlap", c.eps_overlap);
    require(c.overlap_fit_min < c.overlap_fit_max, "overlap-fit-min",
            "must be below overlap-fit-max");
  }
  if (all || e == Experiment::poisson) {
    require_interior_a(c.a);
    require(c.n_poisson >= kMinPoissonN, "n-poisson", "must be >= 1e4");
    require(c.reps_poisson >= kMinPoissonReps, "reps-poisson", "must be >= 500");
    require(c.lambda_target > 0.0, "lambda-target", "must be positive");
    for (double t : c.t_poisson) require(t >= 0.0, "t-poisson", "every t must be >= 0");
  }
  if (all || e == Experiment::limit) {
    require_interior_a(c.a);
    require(c.n_limit >= kMinLimitN, "n-limit", "must be >= 1e4");
    require(c.reps_limit >= kMinLimitReps, "reps-limit", "must be >= 1000");
  }
  if (all || e == Experiment::exponent) {
    require_one_of("mode", c.mode, {"circle", "interior", "ball", "all"});
    if (c.mode == "interior" || c.mode == "all") require_interior_a(c.a);
    require(c.n_grid.size() >= 2, "n-grid", "needs at least two sizes");
    const auto [lo, hi] = std::minmax_element(c.n_grid.begin(), c.n_grid.end());
    require(*lo >= 2, "n-grid", "every n must be >= 2");
    require(*hi >= 10 * *lo, "n-grid", "must span at least one decade");
    require(c.reps_exponent >= 2, "reps-exponent", "must be >= 2");
    require(c.sampler != SampleMethod::circle_diagnostic &&
                c.sampler != SampleMethod::disk_diagnostic,
            "sampler", "interior and ball modes need a sampler of E");
  }
  if (all || e == Experiment::chenstein) {
    require(c.cs_n_grid.size() >= 2, "cs-n-grid", "needs at least two sizes");
    for (auto n : c.cs_n_grid) require(n >= 3, "cs-n-grid", "every n must be >= 3");
    require(c.cs_t >= 0.0, "cs-t", "must be >= 0");
  }
}

std::string to_config_text(const RunConfig& c) {
  std::string out;
  auto line = [&](std::string_view key, const std::string& value) {
    out += std::string(key) + " = " + value + "\n";
  };
  line("experiment", quote(to_string(c.experiment)));
  line("profile", quote(to_string(c.profile)));
  line("a", real(c.a));
  line("seed", count(c.seed));
  line("workers", count(c.workers));
  line("output-dir", quote(c.output_dir));
  line("check", c.check ? "true" : "false");
  if (c.lambda_override) line("lambda-override", real(*c.lambda_override));
  line("n-sample", count(c.n_sample));
  line("sampler", quote(to_string(c.sampler)));
  line("dump", quote(c.dump));
  line("n-diameter", count(c.n_diameter));
  line("t-diameter", array(c.t_diameter, real));
  line("method", quote(c.method));
  line("mc-budget", count(c.mc_budget));
  line("cells", count(c.cells));
  line("refined-cells", count(c.refined_cells));
  line("pairs", count(c.pairs));
  line("eps-tail", array(c.eps_tail, real));
  line("tail-fit-min", real(c.tail_fit_min));
  line("tail-fit-max", real(c.tail_fit_max));
  line("tail-sampler", quote(c.tail_sampler));
  line("n-outer", count(c.n_outer));
  line("n-inner", count(c.n_inner));
  line("eps-overlap", array(c.eps_overlap, real));
  line("overlap-fit-min", real(c.overlap_fit_min));
  line("overlap-fit-max", real(c.overlap_fit_max));
  line("n-poisson", count(c.n_poisson));
  line("reps-poisson", count(c.reps_poisson));
  line("lambda-target", real(c.lambda_target));
  line("t-poisson", array(c.t_poisson, real));
  line("n-limit", count(c.n_limit));
  line("reps-limit", count(c.reps_limit));
  line("mode", quote(c.mode));
  line("n-grid", array(c.n_grid, count));
  line("reps-exponent", count(c.reps_exponent));
  line("cs-n-grid", array(c.cs_n_grid, count));
  line("cs-t", real(c.cs_t));
  return out;
}

std::string to_config_json(const RunConfig& c) {
  nlohmann::json j = {{"experiment", to_string(c.experiment)},
                      {"profile", to_string(c.profile)},
                      {"a", c.a},
                      {"seed", c.seed},
                      {"workers", c.workers},
                      {"output-dir", c.output_dir},
                      {"check", c.check},
                      {"n-sample", c.n_sample},
                      {"sampler", to_string(c.sampler)},
                      {"dump", c.dump},
                      {"n-diameter", c.n_diameter},
                      {"t-diameter", c.t_diameter},
                      {"method", c.method},
                      {"mc-budget", c.mc_budget},
                      {"cells", c.cells},
                      {"refined-cells", c.refined_cells},
                      {"pairs", c.pairs},
                      {"eps-tail", c.eps_tail},
                      {"tail-fit-min", c.tail_fit_min},
                      {"tail-fit-max", c.tail_fit_max},
                      {"tail-sampler", c.tail_sampler},
                      {"n-outer", c.n_outer},
                      {"n-inner", c.n_inner},
                      {"eps-overlap", c.eps_overlap},
                      {"overlap-fit-min", c.overlap_fit_min},
                      {"overlap-fit-max", c.overlap_fit_max},
                      {"n-poisson", c.n_poisson},
                      {"reps-poisson", c.reps_poisson},
                      {"lambda-target", c.lambda_target},
                      {"t-poisson", c.t_poisson},
                      {"n-limit", c.n_limit},
                      {"reps-limit", c.reps_limit},
                      {"mode", c.mode},
                      {"n-grid", c.n_grid},
                      {"reps-exponent", c.reps_exponent},
                      {"cs-n-grid", c.cs_n_grid},
                      {"cs-t", c.cs_t}};
  if (c.lambda_override) j["lambda-override"] = *c.lambda_override;
  return j.dump();
}

}  // namespace diamlaw::cli
