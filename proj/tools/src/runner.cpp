#include "diamlaw/cli/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include "diamlaw/batch_io.hpp"
#include "diamlaw/constants.hpp"
#include "diamlaw/diameter.hpp"
#include "diamlaw/experiments.hpp"
#include "diamlaw/records.hpp"
#include "diamlaw/rng.hpp"
#include "diamlaw/tolerances.hpp"
#include "json.hpp"

#ifndef DIAMLAW_VERSION
#define DIAMLAW_VERSION "unknown"
#endif

namespace diamlaw::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr std::uint64_t kBruteForceLimit = 5000;

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.close();
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

class Outputs {
 public:
  explicit Outputs(fs::path dir) : dir_(std::move(dir)) {}

  const fs::path& dir() const noexcept { return dir_; }

  void stage(const std::string& name, const std::string& content) {
    write_file(partial(name), content);
    staged_.push_back(name);
  }

  /// Writes straight to the final name; used for the constant cache.
  void publish(const std::string& name, const std::string& content) {
    write_file(partial(name), content);
    fs::rename(partial(name), dir_ / name);
    names_.push_back(name);
  }

  void commit() {
    for (const auto& name : staged_) {
      fs::rename(partial(name), dir_ / name);
      names_.push_back(name);
    }
    staged_.clear();
  }

  const std::vector<std::string>& names() const noexcept { return names_; }

 private:
  fs::path partial(const std::string& name) const { return dir_ / (name + ".partial"); }

  fs::path dir_;
  std::vector<std::string> staged_;
  std::vector<std::string> names_;
};

struct Context {
  const RunConfig& cfg;
  std::ostream& log;
  Outputs outputs;
  std::vector<CheckResult> checks;
  unsigned workers = 1;
  std::string config_json;
  AcceptanceTolerances tol;
  std::optional<LimitLaw> law;

  ShapeParam shape() const { return ShapeParam(cfg.a); }

  void check(std::string name, bool passed, double value, std::string requirement) {
    log << "  check " << name << ": " << (passed ? "ok" : "FAILED") << " (" << format_number(value)
        << "; " << requirement << ")\n";
    checks.push_back({std::move(name), passed, value, std::move(requirement)});
  }
};

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string base(const Context& ctx, std::string_view experiment, std::uint64_t n) {
  return record_basename(experiment, ctx.cfg.a, n, ctx.cfg.seed);
}

std::string real_text(double x) { return format_number(x); }

// ---------------------------------------------------------------------------

LimitLaw resolve_law(Context& ctx) {
  if (ctx.law) return *ctx.law;
  const RunConfig& c = ctx.cfg;
  if (c.lambda_override) {
    ctx.log << "Lambda_a overridden: " << real_text(*c.lambda_override) << "\n";
    ctx.law = LimitLaw{*c.lambda_override, c.a};
    return *ctx.law;
  }
  const fs::path cache_dir = ctx.outputs.dir() / "cache";
  fs::create_directories(cache_dir);
  const std::string name = "cache/I_a_a" + real_text(c.a) + "_reduced3d_" +
                           std::to_string(c.cells) + "_" + std::to_string(c.refined_cells) +
                           ".json";
  const fs::path path = ctx.outputs.dir() / name;
  ConstantEstimate est;
  if (fs::exists(path)) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    est = constants_from_json(ss.str());
    ctx.log << "I_a from cache " << name << "\n";
  } else {
    ctx.log << "I_a by reduced quadrature, " << c.cells << " -> " << c.refined_cells
            << " cells\n";
    est = i_a_reduced3d(ctx.shape(), {c.cells, c.refined_cells}, ctx.workers);
    ctx.outputs.publish(name, constants_json(est));
  }
  ctx.law = lambda_a(est.value, c.a);
  ctx.log << "  I_a = " << real_text(est.value) << ", Lambda_a = " << real_text(ctx.law->lambda_a)
          << "\n";
  return *ctx.law;
}

void run_sample(Context& ctx, bool dump_points) {
  const RunConfig& c = ctx.cfg;
  ctx.log << "sample: " << c.n_sample << " points, " << to_string(c.sampler) << "\n";
  const RngStream stream{c.seed, tagged_stream(StreamTag::sample, 0)};
  const double a = c.a;
  const bool diagnostic = c.sampler == SampleMethod::circle_diagnostic ||
                          c.sampler == SampleMethod::disk_diagnostic;
  const SampleBatch batch = sample(c.sampler, stream, c.n_sample, ShapeParam(diagnostic ? 0.0 : a));

  double m1 = 0.0, m2 = 0.0, m3 = 0.0;
  for (const auto& p : batch.points) {
    m1 += p.x1 * p.x1;
    m2 += p.x2 * p.x2;
    m3 += p.x3 * p.x3;
  }
  const double n = static_cast<double>(batch.points.size());
  m1 /= n;
  m2 /= n;
  m3 /= n;
  const double rate = n / static_cast<double>(batch.proposals);

  const std::string b = base(ctx, "sample", c.n_sample);
  json j = {{"experiment", "sample"},
            {"config", json::parse(ctx.config_json)},
            {"a", a},
            {"method", std::string(to_string(c.sampler))},
            {"master_seed", stream.master_seed},
            {"stream_index", stream.stream_index},
            {"n", batch.points.size()},
            {"proposals", batch.proposals},
            {"acceptance_rate", rate},
            {"mean_x1_sq", m1},
            {"mean_x2_sq", m2},
            {"mean_x3_sq", m3}};
  ctx.outputs.stage(b + ".json", j.dump(2) + "\n");
  std::string table = csv_row({"statistic", "value", "expected"});
  const bool in_e = !diagnostic;
  table += csv_row({"mean_x1_sq", real_text(m1), in_e ? real_text(0.2) : ""});
  table += csv_row({"mean_x2_sq", real_text(m2), in_e ? real_text(0.2) : ""});
  table += csv_row({"mean_x3_sq", real_text(m3), in_e ? real_text(a * a / 5.0) : ""});
  table += csv_row({"acceptance_rate", real_text(rate),
                    c.sampler == SampleMethod::rejection ? real_text(std::numbers::pi / 6.0) : ""});
  ctx.outputs.stage(b + ".csv", table);

  if (dump_points && c.dump != "none") {
    std::ostringstream out;
    if (c.dump == "csv") {
      write_batch_csv(out, batch);
      ctx.outputs.stage(b + ".points.csv", out.str());
    } else {
      write_batch_binary(out, batch);
      ctx.outputs.stage(b + ".points.bin", out.str());
    }
  }

  if (in_e) {
    ctx.check("sample.mean_x1_sq", std::abs(m1 - 0.2) <= ctx.tol.second_moment, m1,
              "|value - 0.2| <= 0.002");
    ctx.check("sample.mean_x3_sq", std::abs(m3 - a * a / 5.0) <= ctx.tol.second_moment, m3,
              "|value - a^2/5| <= 0.002");
  }
  if (c.sampler == SampleMethod::rejection) {
    ctx.check("sample.acceptance_rate",
              std::abs(rate - std::numbers::pi / 6.0) <= ctx.tol.acceptance_rate, rate,
              "|value - pi/6| <= 0.002");
  }
}

void run_diameter(Context& ctx) {
  const RunConfig& c = ctx.cfg;
  ctx.log << "diameter: " << c.n_diameter << " points\n";
  const ShapeParam shape = ctx.shape();
  const RngStream stream{c.seed, tagged_stream(StreamTag::diameter, 0)};
  const SampleBatch batch = sample(c.sampler, stream, c.n_diameter, shape);
  const DiameterSweep sweep = diameter_with_counts(batch.points, shape, c.t_diameter);
  const double rescaled = sweep.scale * sweep.diameter.deficit();

  const std::string b = base(ctx, "diameter", c.n_diameter);
  json j = {{"experiment", "diameter"},
            {"config", json::parse(ctx.config_json)},
            {"a", c.a},
            {"n", c.n_diameter},
            {"master_seed", c.seed},
            {"stream_index", stream.stream_index},
            {"m_n", sweep.diameter.m_n},
            {"deficit", sweep.diameter.deficit()},
            {"rescaled_deficit", rescaled},
            {"i", sweep.diameter.i},
            {"j", sweep.diameter.j},
            {"pairs_examined", sweep.diameter.pairs_examined},
            {"t_grid", c.t_diameter},
            {"counts", sweep.counts}};
  ctx.outputs.stage(b + ".json", j.dump(2) + "\n");
  std::string table = csv_row({"t", "eps", "count"});
  for (std::size_t k = 0; k < c.t_diameter.size(); ++k) {
    table += csv_row({real_text(c.t_diameter[k]), real_text(c.t_diameter[k] / sweep.scale),
                      std::to_string(sweep.counts[k])});
  }
  ctx.outputs.stage(b + ".csv", table);

  bool identity = true;
  for (std::size_t k = 0; k < c.t_diameter.size(); ++k) {
    identity = identity && ((sweep.counts[k] == 0) == (rescaled > c.t_diameter[k]));
  }
  ctx.check("diameter.event_identity", identity, identity ? 1.0 : 0.0,
            "N(t) = 0 exactly when the rescaled deficit exceeds t");
  if (c.n_diameter <= kBruteForceLimit) {
    const auto brute = diameter_bruteforce(batch.points);
    const bool same = brute.m_n_squared == sweep.diameter.m_n_squared &&
                      brute.i == sweep.diameter.i && brute.j == sweep.diameter.j;
    ctx.check("diameter.matches_bruteforce", same, same ? 1.0 : 0.0,
              "pruned value and pair equal brute force");
  }
}

void run_constant(Context& ctx) {
  const RunConfig& c = ctx.cfg;
  const ShapeParam shape = ctx.shape();
  std::vector<ConstantEstimate> estimates;
  if (c.method == "mc5d" || c.method == "both") {
    ctx.log << "constant: mc5d with " << c.mc_budget << " samples\n";
    estimates.push_back(i_a_mc5d(shape, c.mc_budget, c.seed, ctx.workers));
  }
  if (c.method == "reduced3d" || c.method == "both") {
    ctx.log << "constant: reduced3d " << c.cells << " -> " << c.refined_cells << " cells\n";
    estimates.push_back(i_a_reduced3d(shape, {c.cells, c.refined_cells}, ctx.workers));
  }
  std::string table = csv_row({"method", "a", "I_a", "stderr", "budget", "Lambda_a", "K_a"});
  for (const auto& e : estimates) {
    const LimitLaw law = lambda_a(e.value, e.a);
    const std::string name(to_string(e.method));
    ctx.outputs.stage(base(ctx, "constant_" + name, e.budget) + ".json", constants_json(e));
    table += csv_row({name, real_text(e.a), real_text(e.value), real_text(e.std_error),
                      std::to_string(e.budget), real_text(law.lambda_a), real_text(law.k_a())});
    ctx.log << "  " << name << ": I_a = " << real_text(e.value) << " +- "
            << real_text(e.std_error) << "\n";
  }
  ctx.outputs.stage(base(ctx, "constant", c.mc_budget) + ".csv", table);
  if (estimates.size() == 2) {
    const auto& mc = estimates[0];
    const auto& q = estimates[1];
    const double combined = std::hypot(mc.std_error, q.std_error);
    const double z = std::abs(mc.value - q.value) / combined;
    ctx.check("constant.agreement", z <= ctx.tol.constant_sigmas, z,
              "|mc5d - reduced3d| <= 3 combined standard errors");
    if (c.lambda_override == std::nullopt) ctx.law = lambda_a(q.value, c.a);
  }
}

TailCurve run_tail(Context& ctx) {
  const RunConfig& c = ctx.cfg;
  ctx.log << "tail: " << c.pairs << " pairs, " << c.tail_sampler << "\n";
  TailConfig tc;
  tc.shape = ctx.shape();
  tc.eps_grid = c.eps_tail;
  tc.n_pairs = c.pairs;
  tc.fit_eps_min = c.tail_fit_min;
  tc.fit_eps_max = c.tail_fit_max;
  tc.localized = c.tail_sampler == "localized";
  tc.master_seed = c.seed;
  tc.workers = ctx.workers;
  TailCurve curve = run_tail_experiment(tc);
  const std::string b = base(ctx, "tail", c.pairs);
  ctx.outputs.stage(b + ".json", to_json(curve, ctx.config_json));
  ctx.outputs.stage(b + ".csv", to_csv(curve));
  ctx.log << "  slope " << real_text(curve.fitted_slope) << "\n";

  const LimitLaw law = resolve_law(ctx);
  ctx.check("tail.slope", std::abs(curve.fitted_slope - ctx.tol.tail_slope) <= ctx.tol.tail_slope_tol,
            curve.fitted_slope, "3.5 +- 0.15");
  // the two smallest grid points
  const auto& pts = curve.points;
  for (std::size_t k = pts.size() >= 2 ? pts.size() - 2 : 0; k < pts.size(); ++k) {
    const double ratio = pts[k].prob / std::pow(pts[k].eps, 3.5) / law.k_a();
    ctx.check("tail.level_ratio(eps=" + real_text(pts[k].eps) + ")",
              std::abs(ratio - 1.0) <= ctx.tol.tail_level_rel, ratio,
              "p / (K_a eps^3.5) within 15% of 1");
  }
  return curve;
}

TailCurve run_overlap(Context& ctx) {
  const RunConfig& c = ctx.cfg;
  ctx.log << "overlap: " << c.n_outer << " x " << c.n_inner << "\n";
  OverlapConfig oc;
  oc.shape = ctx.shape();
  oc.eps_grid = c.eps_overlap;
  oc.n_outer = c.n_outer;
  oc.n_inner = c.n_inner;
  oc.fit_eps_min = c.overlap_fit_min;
  oc.fit_eps_max = c.overlap_fit_max;
  oc.master_seed = c.seed;
  oc.workers = ctx.workers;
  TailCurve curve = run_overlap_experiment(oc);
  const std::string b = base(ctx, "overlap", c.n_outer * c.n_inner);
  ctx.outputs.stage(b + ".json", to_json(curve, ctx.config_json));
  ctx.outputs.stage(b + ".csv", to_csv(curve));
  ctx.log << "  slope " << real_text(curve.fitted_slope) << "\n";

  ctx.check("overlap.slope",
            curve.fitted_slope >= ctx.tol.overlap_slope_min &&
                curve.fitted_slope <= ctx.tol.overlap_slope_max,
            curve.fitted_slope, "in [5.0, 6.0]");
  bool below = true;
  for (const auto& p : curve.points) below = below && p.prob <= p.marginal_prob;
  ctx.check("overlap.q_le_p", below, below ? 1.0 : 0.0, "q(eps) <= p(eps) at every eps");
  return curve;
}

void run_chenstein(Context& ctx, const TailCurve& tail, const TailCurve& overlap) {
  const RunConfig& c = ctx.cfg;
  double t = c.cs_t;
  if (t == 0.0) {
    const double eps_max = std::min(tail.points.front().eps, overlap.points.front().eps);
    const auto n_min = *std::min_element(c.cs_n_grid.begin(), c.cs_n_grid.end());
    // shrunk by one part in 1e12 so eps_n at n_min rounds inside the grid
    t = eps_max * near_diametral_scale(n_min) * (1.0 - 1e-12);
  }
  ctx.log << "chenstein: t = " << real_text(t) << "\n";
  std::vector<std::size_t> grid(c.cs_n_grid.begin(), c.cs_n_grid.end());
  const ChenSteinReport r = chen_stein_diagnostic(ctx.shape(), grid, t, tail, overlap);
  const auto n_max = *std::max_element(grid.begin(), grid.end());
  const std::string b = base(ctx, "chenstein", n_max);
  ctx.outputs.stage(b + ".json", to_json(r, ctx.config_json));
  ctx.outputs.stage(b + ".csv", to_csv(r));
  ctx.check("chenstein.b1_spread", r.b1_scaled_spread < ctx.tol.chen_stein_spread,
            r.b1_scaled_spread, "max/min of b1 n < 2");
  ctx.check("chenstein.b2_spread", r.b2_scaled_spread < ctx.tol.chen_stein_spread,
            r.b2_scaled_spread, "max/min of b2 n^(1/7) < 2");
}

void run_poisson(Context& ctx) {
  const RunConfig& c = ctx.cfg;
  const LimitLaw law = resolve_law(ctx);
  const double t_target = law.t_for_mean(c.lambda_target);
  std::vector<double> grid = c.t_poisson;
  grid.push_back(t_target);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  ctx.log << "poisson: n = " << c.n_poisson << ", " << c.reps_poisson << " replications, t* = "
          << real_text(t_target) << "\n";

  PoissonConfig pc;
  pc.shape = ctx.shape();
  pc.n = c.n_poisson;
  pc.t_grid = grid;
  pc.replications = c.reps_poisson;
  pc.law = law;
  pc.method = c.sampler;
  pc.master_seed = c.seed;
  pc.workers = ctx.workers;
  const PoissonSummary s = run_poisson_experiment(pc);
  const std::string b = base(ctx, "poisson", c.n_poisson);
  ctx.outputs.stage(b + ".json", to_json(s, ctx.config_json));
  ctx.outputs.stage(b + ".csv", to_csv(s));

  ctx.check("poisson.event_identity", s.event_identity_holds, s.event_identity_holds ? 1.0 : 0.0,
            "zero fraction equals P(rescaled deficit > t) exactly");
  for (const auto& pt : s.per_t) {
    if (pt.t != t_target) continue;
    const double lam = c.lambda_target;
    ctx.check("poisson.mean", std::abs(pt.mean_count - lam) <= ctx.tol.poisson_mean_rel * lam,
              pt.mean_count, "within 10% of lambda");
    const double disp = pt.mean_count > 0.0 ? pt.var_count / pt.mean_count : 0.0;
    ctx.check("poisson.dispersion",
              disp >= ctx.tol.poisson_dispersion_min && disp <= ctx.tol.poisson_dispersion_max,
              disp, "variance/mean in [0.85, 1.15]");
    ctx.check("poisson.zero_fraction",
              std::abs(pt.zero_fraction - std::exp(-lam)) <= ctx.tol.poisson_zero_abs,
              pt.zero_fraction, "within 0.03 of exp(-lambda)");
  }
}

void run_limit(Context& ctx, const TailCurve* tail) {
  const RunConfig& c = ctx.cfg;
  const LimitLaw law = resolve_law(ctx);
  ctx.log << "limit: n = " << c.n_limit << ", " << c.reps_limit << " replications\n";
  LimitConfig lc;
  lc.shape = ctx.shape();
  lc.n = c.n_limit;
  lc.replications = c.reps_limit;
  lc.law = law;
  lc.method = c.sampler;
  lc.master_seed = c.seed;
  lc.workers = ctx.workers;
  const LimitLawReport r = run_limit_experiment(lc);
  const std::string b = base(ctx, "limit", c.n_limit);
  ctx.outputs.stage(b + ".json", to_json(r, ctx.config_json));
  ctx.outputs.stage(b + ".csv", to_csv(r));
  ctx.log << "  KS " << real_text(r.ks_statistic) << ", median " << real_text(r.median)
          << " (theory " << real_text(r.median_theory) << ")\n";

  ctx.check("limit.ks", r.ks_statistic <= ctx.tol.limit_ks, r.ks_statistic, "KS <= 0.08");
  const bool positive = std::all_of(r.rescaled_deficits.begin(), r.rescaled_deficits.end(),
                                    [](double x) { return x > 0.0; });
  ctx.check("limit.positive", positive, positive ? 1.0 : 0.0, "every rescaled deficit > 0");

  if (tail != nullptr) {
    // K from the smallest fitted eps of the tail curve.
    const TailPoint* small = nullptr;
    for (const auto& p : tail->points) {
      if (p.in_fit) small = &p;
    }
    if (small != nullptr) {
      const double k_hat = small->prob / std::pow(small->eps, 3.5);
      const LimitLaw fitted{0.5 * k_hat, c.a};
      const double ks_hat = limit_ks_statistic(r.rescaled_deficits, fitted);
      const double diff = std::abs(ks_hat - r.ks_statistic);
      ctx.check("limit.tail_coherence", diff < ctx.tol.ks_coherence, diff,
                "|KS(K_hat / 2) - KS(Lambda_a)| < 0.02");
    }
  }
}

void run_exponent(Context& ctx) {
  const RunConfig& c = ctx.cfg;
  std::vector<ExponentMode> modes;
  if (c.mode == "all") {
    modes = {ExponentMode::circle, ExponentMode::interior, ExponentMode::ball};
  } else {
    modes = {exponent_mode_from_string(c.mode)};
  }
  for (ExponentMode m : modes) {
    ctx.log << "exponent: " << to_string(m) << "\n";
    ExponentConfig ec;
    ec.mode = m;
    ec.a = c.a;
    ec.n_grid.assign(c.n_grid.begin(), c.n_grid.end());
    ec.replications = c.reps_exponent;
    ec.method = c.sampler;
    ec.master_seed = c.seed;
    ec.workers = ctx.workers;
    const ExponentReport r = run_exponent_experiment(ec);
    const auto n_max = *std::max_element(c.n_grid.begin(), c.n_grid.end());
    const std::string b =
        record_basename("exponent_" + std::string(to_string(m)), r.a, n_max, c.seed);
    ctx.outputs.stage(b + ".json", to_json(r, ctx.config_json));
    ctx.outputs.stage(b + ".csv", to_csv(r));
    ctx.log << "  fitted " << real_text(r.fitted_exponent) << " (expected "
            << real_text(r.expected) << ")\n";
    ctx.check("exponent." + std::string(to_string(m)),
              std::abs(r.fitted_exponent - r.expected) <= ctx.tol.exponent_tol, r.fitted_exponent,
              "within 0.05 of " + real_text(r.expected));
  }
}

std::uint64_t record_size(const RunConfig& c) {
  switch (c.experiment) {
    case Experiment::sample: return c.n_sample;
    case Experiment::diameter: return c.n_diameter;
    case Experiment::constant: return c.mc_budget;
    case Experiment::tail: return c.pairs;
    case Experiment::overlap: return c.n_outer * c.n_inner;
    case Experiment::poisson: return c.n_poisson;
    case Experiment::limit: return c.n_limit;
    case Experiment::exponent: return *std::max_element(c.n_grid.begin(), c.n_grid.end());
    case Experiment::chenstein:
      return *std::max_element(c.cs_n_grid.begin(), c.cs_n_grid.end());
    case Experiment::all: return 0;
  }
  return 0;
}

std::string manifest_json(const RunManifest& m) {
  json checks = json::array();
  for (const auto& c : m.checks) {
    checks.push_back(
        {{"name", c.name}, {"passed", c.passed}, {"value", c.value}, {"requirement", c.requirement}});
  }
  json j = {{"config", json::parse(m.config_json)},
            {"version", m.version},
            {"timestamp", m.timestamp},
            {"wall_clock_seconds", m.wall_clock_seconds},
            {"outputs", m.outputs},
            {"checks", std::move(checks)}};
  return j.dump(2) + "\n";
}

}  // namespace

RunOutcome run(const RunConfig& config, std::ostream& log) {
  RunOutcome outcome;
  const auto start = std::chrono::steady_clock::now();
  try {
    validate(config);
    fs::create_directories(config.output_dir);
    Context ctx{config, log, Outputs(config.output_dir), {}, config.workers, to_config_json(config),
                {}, std::nullopt};
    if (ctx.workers == 0) ctx.workers = std::max(1u, std::thread::hardware_concurrency());

    switch (config.experiment) {
      case Experiment::sample: run_sample(ctx, true); break;
      case Experiment::diameter: run_diameter(ctx); break;
      case Experiment::constant: run_constant(ctx); break;
      case Experiment::tail: run_tail(ctx); break;
      case Experiment::overlap: run_overlap(ctx); break;
      case Experiment::poisson: run_poisson(ctx); break;
      case Experiment::limit: run_limit(ctx, nullptr); break;
      case Experiment::exponent: run_exponent(ctx); break;
      case Experiment::chenstein: {
        const TailCurve tail = run_tail(ctx);
        const TailCurve overlap = run_overlap(ctx);
        run_chenstein(ctx, tail, overlap);
        break;
      }
      case Experiment::all: {
        run_constant(ctx);
        run_sample(ctx, false);
        run_diameter(ctx);
        const TailCurve tail = run_tail(ctx);
        const TailCurve overlap = run_overlap(ctx);
        run_chenstein(ctx, tail, overlap);
        run_poisson(ctx);
        run_limit(ctx, &tail);
        run_exponent(ctx);
        break;
      }
    }
    ctx.outputs.commit();

    RunManifest& m = outcome.manifest;
    m.config_json = ctx.config_json;
    m.version = DIAMLAW_VERSION;
    m.timestamp = utc_timestamp();
    m.wall_clock_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    m.outputs = ctx.outputs.names();
    m.checks = ctx.checks;

    const std::string manifest_name =
        record_basename(to_string(config.experiment), config.a, record_size(config), config.seed) +
        ".manifest.json";
    const fs::path path = fs::path(config.output_dir) / manifest_name;
    write_file(fs::path(path.string() + ".partial"), manifest_json(m));
    fs::rename(fs::path(path.string() + ".partial"), path);
    outcome.manifest_path = path.string();

    const bool failed = std::any_of(m.checks.begin(), m.checks.end(),
                                    [](const CheckResult& c) { return !c.passed; });
    outcome.exit_code = config.check && failed ? kExitCheck : kExitOk;
  } catch (const ConfigError& e) {
    outcome.exit_code = kExitConfig;
    outcome.error = e.what();
  } catch (const std::exception& e) {
    outcome.exit_code = kExitRuntime;
    outcome.error = e.what();
  }
  return outcome;
}

int run_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  ParseResult parsed;
  try {
    parsed = parse_config(args);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  }
  if (parsed.help) {
    out << parsed.help_text;
    return kExitOk;
  }
  const RunOutcome r = run(parsed.config, out);
  if (!r.error.empty()) {
    err << (r.exit_code == kExitConfig ? "config error: " : "error: ") << r.error << "\n";
    return r.exit_code;
  }
  out << "manifest: " << r.manifest_path << "\n";
  if (r.exit_code == kExitCheck) err << "acceptance check failed\n";
  return r.exit_code;
}

}  // namespace diamlaw::cli
