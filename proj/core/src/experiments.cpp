#include "diamlaw/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>

#include "diamlaw/diameter.hpp"
#include "diamlaw/parallel.hpp"
#include "diamlaw/rng.hpp"
#include "diamlaw/stats.hpp"

namespace diamlaw {

namespace {

constexpr std::uint64_t kPairChunk = std::uint64_t{1} << 20;
constexpr std::uint64_t kOuterChunk = 16;

std::uint64_t grid_local(std::size_t grid_index, std::uint64_t item) {
  return (static_cast<std::uint64_t>(grid_index) << 32) | (item & 0xffffffffULL);
}

std::vector<double> sorted_decreasing(std::vector<double> grid, const char* what) {
  if (grid.empty()) throw std::invalid_argument(std::string(what) + ": empty eps grid");
  for (double e : grid) {
    if (!(e > 0.0)) throw std::invalid_argument(std::string(what) + ": eps must be positive");
  }
  std::sort(grid.begin(), grid.end(), std::greater<>());
  if (std::adjacent_find(grid.begin(), grid.end()) != grid.end()) {
    throw std::invalid_argument(std::string(what) + ": duplicate eps");
  }
  return grid;
}

void binomial_estimate(TailPoint& p) {
  const double n = static_cast<double>(p.pairs);
  const double f = static_cast<double>(p.hits) / n;
  p.prob = p.window_mass * f;
  p.std_error = p.window_mass * std::sqrt(f * (1.0 - f) / n);
}

// Isotonic smoothing, hit filter, and the weighted log-log fit.
void finish_curve(TailCurve& curve) {
  auto& pts = curve.points;
  const std::size_t m = pts.size();
  std::vector<double> y(m), w(m);
  for (std::size_t k = 0; k < m; ++k) {
    // ascending eps order
    const TailPoint& p = pts[m - 1 - k];
    y[k] = p.prob;
    w[k] = p.std_error > 0.0 ? 1.0 / (p.std_error * p.std_error) : 0.0;
  }
  const auto smooth = stats::isotonic_nondecreasing(y, w);
  for (std::size_t k = 0; k < m; ++k) pts[m - 1 - k].smoothed = smooth[k];

  std::vector<double> lx, ly, lw;
  for (auto& p : pts) {
    p.flagged = p.hits < kMinHitsForFit;
    p.in_fit = !p.flagged && p.eps >= curve.fit_eps_min && p.eps <= curve.fit_eps_max &&
               p.smoothed > 0.0 && p.std_error > 0.0;
    if (!p.in_fit) continue;
    const double rel = p.std_error / p.prob;
    lx.push_back(std::log(p.eps));
    ly.push_back(std::log(p.smoothed));
    lw.push_back(1.0 / (rel * rel));
  }
  if (lx.size() >= 2) {
    const auto fit = stats::weighted_linear_fit(lx, ly, lw);
    curve.fitted_slope = fit.slope;
    curve.fitted_intercept = fit.intercept;
    curve.slope_std_error = fit.slope_std_error;
  } else {
    curve.fitted_slope = std::numeric_limits<double>::quiet_NaN();
    curve.fitted_intercept = std::numeric_limits<double>::quiet_NaN();
    curve.slope_std_error = std::numeric_limits<double>::quiet_NaN();
  }
}

bool pair_hit(const EquatorialCoords& x, const EquatorialCoords& y, const ShapeParam& shape,
              double eps) {
  return deficit(embed(x, shape), embed(y, shape)) <= eps;
}

std::vector<Point3> replication_points(SampleMethod method, const ShapeParam& shape,
                                       std::size_t n, RngStream stream) {
  Philox rng(stream);
  std::vector<Point3> pts;
  fill_points(rng, method, shape, n, pts);
  return pts;
}

void require_e_method(SampleMethod method, const char* what) {
  if (method == SampleMethod::circle_diagnostic || method == SampleMethod::disk_diagnostic) {
    throw std::invalid_argument(std::string(what) + ": method must sample E");
  }
}

}  // namespace

double TailCurve::prob_at(double eps) const {
  std::vector<double> xs, ys;
  for (auto it = points.rbegin(); it != points.rend(); ++it) {
    xs.push_back(it->eps);
    ys.push_back(it->prob);
  }
  return stats::loglog_interpolate(xs, ys, eps);
}

TailCurve run_tail_experiment(const TailConfig& config) {
  const ShapeParam& shape = config.shape;
  shape.require_interior("run_tail_experiment");
  const auto grid = sorted_decreasing(config.eps_grid, "run_tail_experiment");
  if (config.n_pairs == 0) throw std::invalid_argument("run_tail_experiment: zero pairs");

  TailCurve curve;
  curve.kind = CurveKind::tail;
  curve.a = shape.a();
  curve.n_pairs = config.n_pairs;
  curve.localized = config.localized;
  curve.fit_eps_min = config.fit_eps_min;
  curve.fit_eps_max = config.fit_eps_max;
  curve.master_seed = config.master_seed;
  curve.points.resize(grid.size());

  if (config.localized) {
    const std::uint64_t per_point = std::max<std::uint64_t>(1, config.n_pairs / grid.size());
    const std::uint64_t chunks = (per_point + kPairChunk - 1) / kPairChunk;
    std::vector<LocalizedPairSampler> samplers;
    for (double e : grid) samplers.emplace_back(e, shape);

    const auto hits = parallel_map(grid.size() * chunks, config.workers, [&](std::size_t job) {
      const std::size_t g = job / chunks;
      const std::uint64_t c = job % chunks;
      const std::uint64_t count = std::min(kPairChunk, per_point - c * kPairChunk);
      const auto& sampler = samplers[g];
      Philox rng({config.master_seed, tagged_stream(StreamTag::tail, grid_local(g, c))});
      std::uint64_t h = 0;
      for (std::uint64_t k = 0; k < count; ++k) {
        const auto x = sampler.draw_anchor(rng);
        const auto y = sampler.draw_partner(rng, x);
        if (pair_hit(x, y, shape, grid[g])) ++h;
      }
      return h;
    });

    for (std::size_t g = 0; g < grid.size(); ++g) {
      TailPoint& p = curve.points[g];
      p.eps = grid[g];
      p.pairs = per_point;
      p.window_mass = samplers[g].window_mass();
      for (std::uint64_t c = 0; c < chunks; ++c) p.hits += hits[g * chunks + c];
      binomial_estimate(p);
    }
  } else {
    const std::uint64_t chunks = (config.n_pairs + kPairChunk - 1) / kPairChunk;
    const auto hits = parallel_map(chunks, config.workers, [&](std::size_t c) {
      const std::uint64_t count = std::min(kPairChunk, config.n_pairs - c * kPairChunk);
      Philox rng({config.master_seed,
                  tagged_stream(StreamTag::tail, (std::uint64_t{1} << 47) | c)});
      std::vector<std::uint64_t> h(grid.size(), 0);
      for (std::uint64_t k = 0; k < count; ++k) {
        const Point3 x = draw_parameter(rng, shape);
        const Point3 y = draw_parameter(rng, shape);
        const double d = deficit(x, y);
        // grid is decreasing: hits form a prefix
        for (std::size_t g = 0; g < grid.size() && d <= grid[g]; ++g) ++h[g];
      }
      return h;
    });
    for (std::size_t g = 0; g < grid.size(); ++g) {
      TailPoint& p = curve.points[g];
      p.eps = grid[g];
      p.pairs = config.n_pairs;
      for (const auto& h : hits) p.hits += h[g];
      binomial_estimate(p);
    }
  }
  finish_curve(curve);
  return curve;
}

TailCurve run_overlap_experiment(const OverlapConfig& config) {
  const ShapeParam& shape = config.shape;
  shape.require_interior("run_overlap_experiment");
  const auto grid = sorted_decreasing(config.eps_grid, "run_overlap_experiment");
  if (config.n_outer < 2) throw std::invalid_argument("run_overlap_experiment: n_outer must be >= 2");
  if (config.n_inner < 2) throw std::invalid_argument("run_overlap_experiment: n_inner must be >= 2");

  TailCurve curve;
  curve.kind = CurveKind::overlap;
  curve.a = shape.a();
  curve.n_outer = config.n_outer;
  curve.n_inner = config.n_inner;
  curve.n_pairs = config.n_outer * config.n_inner;
  curve.fit_eps_min = config.fit_eps_min;
  curve.fit_eps_max = config.fit_eps_max;
  curve.master_seed = config.master_seed;
  curve.points.resize(grid.size());

  std::vector<LocalizedPairSampler> samplers;
  for (double e : grid) samplers.emplace_back(e, shape);

  struct Outer {
    std::uint64_t hits = 0;
    double fraction = 0.0;
    double square = 0.0;  // unbiased, before clipping
  };
  const std::uint64_t groups = (config.n_outer + kOuterChunk - 1) / kOuterChunk;
  const double m = static_cast<double>(config.n_inner);

  const auto results = parallel_map(grid.size() * groups, config.workers, [&](std::size_t job) {
    const std::size_t g = job / groups;
    const std::uint64_t first = (job % groups) * kOuterChunk;
    const std::uint64_t last = std::min(config.n_outer, first + kOuterChunk);
    const auto& sampler = samplers[g];
    std::vector<Outer> out;
    out.reserve(last - first);
    for (std::uint64_t o = first; o < last; ++o) {
      Philox rng({config.master_seed, tagged_stream(StreamTag::overlap, grid_local(g, o))});
      const auto x = sampler.draw_anchor(rng);
      const Point3 px = embed(x, shape);
      std::uint64_t h = 0;
      for (std::uint64_t k = 0; k < config.n_inner; ++k) {
        const auto y = sampler.draw_partner(rng, x);
        if (deficit(px, embed(y, shape)) <= grid[g]) ++h;
      }
      Outer r;
      r.hits = h;
      r.fraction = static_cast<double>(h) / m;
      r.square = r.fraction * r.fraction - r.fraction * (1.0 - r.fraction) / (m - 1.0);
      out.push_back(r);
    }
    return out;
  });

  for (std::size_t g = 0; g < grid.size(); ++g) {
    TailPoint& p = curve.points[g];
    p.eps = grid[g];
    p.pairs = curve.n_pairs;
    p.window_mass = samplers[g].window_mass();
    const double am = samplers[g].anchor_mass();
    const double pm = samplers[g].partner_mass();
    std::vector<double> squares, fractions;
    squares.reserve(config.n_outer);
    fractions.reserve(config.n_outer);
    for (std::uint64_t b = 0; b < groups; ++b) {
      for (const Outer& r : results[g * groups + b]) {
        p.hits += r.hits;
        double s = r.square;
        if (s < 0.0) {
          s = 0.0;
          ++p.clipped;
        }
        squares.push_back(s * pm * pm);
        fractions.push_back(r.fraction * pm);
      }
    }
    const auto sq = stats::moments(squares);
    const auto fr = stats::moments(fractions);
    const double n_outer = static_cast<double>(config.n_outer);
    p.prob = am * sq.mean;
    p.std_error = am * std::sqrt(sq.variance / n_outer);
    p.marginal_prob = am * fr.mean;
    p.marginal_std_error = am * std::sqrt(fr.variance / n_outer);
  }
  finish_curve(curve);
  return curve;
}

PoissonSummary run_poisson_experiment(const PoissonConfig& config) {
  const ShapeParam& shape = config.shape;
  shape.require_interior("run_poisson_experiment");
  require_e_method(config.method, "run_poisson_experiment");
  if (config.n < 2) throw std::invalid_argument("run_poisson_experiment: n must be >= 2");
  if (config.replications == 0) {
    throw std::invalid_argument("run_poisson_experiment: zero replications");
  }
  if (config.t_grid.empty()) throw std::invalid_argument("run_poisson_experiment: empty t grid");
  for (double t : config.t_grid) {
    if (!(t >= 0.0)) throw std::invalid_argument("run_poisson_experiment: t must be >= 0");
  }

  PoissonSummary out;
  out.a = shape.a();
  out.n = config.n;
  out.replications = config.replications;
  out.law = config.law;
  out.method = config.method;
  out.master_seed = config.master_seed;

  out.reps = parallel_map(config.replications, config.workers, [&](std::size_t r) {
    const RngStream stream{config.master_seed, tagged_stream(StreamTag::poisson, r)};
    const auto pts = replication_points(config.method, shape, config.n, stream);
    const auto sweep = diameter_with_counts(pts, shape, config.t_grid);
    PoissonReplication rep;
    rep.stream_index = stream.stream_index;
    rep.m_n = sweep.diameter.m_n;
    rep.rescaled_deficit = sweep.scale * sweep.diameter.deficit();
    rep.counts = sweep.counts;
    rep.pairs_examined = sweep.diameter.pairs_examined;
    return rep;
  });

  out.event_identity_holds = true;
  const double reps = static_cast<double>(config.replications);
  for (std::size_t k = 0; k < config.t_grid.size(); ++k) {
    PoissonTPoint pt;
    pt.t = config.t_grid[k];
    pt.lambda_theory = config.law.lambda_a * std::pow(pt.t, 3.5);
    std::vector<double> counts;
    counts.reserve(out.reps.size());
    std::uint64_t zeros = 0;
    std::uint64_t exceed = 0;
    std::uint64_t max_count = 0;
    for (const auto& rep : out.reps) {
      const std::uint64_t c = rep.counts[k];
      counts.push_back(static_cast<double>(c));
      max_count = std::max(max_count, c);
      const bool zero = c == 0;
      const bool beyond = rep.rescaled_deficit > pt.t;
      zeros += zero;
      exceed += beyond;
      if (zero != beyond) out.event_identity_holds = false;
    }
    pt.pmf.assign(max_count + 1, 0);
    for (const auto& rep : out.reps) ++pt.pmf[rep.counts[k]];
    const auto mo = stats::moments(counts);
    pt.mean_count = mo.mean;
    pt.var_count = mo.variance;
    pt.zero_fraction = static_cast<double>(zeros) / reps;
    pt.exceed_fraction = static_cast<double>(exceed) / reps;
    out.per_t.push_back(std::move(pt));
  }
  return out;
}

double limit_ks_statistic(std::span<const double> rescaled, const LimitLaw& law) {
  return stats::ks_statistic(rescaled, [&](double t) { return law.cdf(std::max(t, 0.0)); });
}

LimitLawReport run_limit_experiment(const LimitConfig& config) {
  const ShapeParam& shape = config.shape;
  shape.require_interior("run_limit_experiment");
  require_e_method(config.method, "run_limit_experiment");
  if (config.n < 2) throw std::invalid_argument("run_limit_experiment: n must be >= 2");
  if (config.replications == 0) {
    throw std::invalid_argument("run_limit_experiment: zero replications");
  }
  if (!(config.law.lambda_a > 0.0)) {
    throw std::invalid_argument("run_limit_experiment: law.lambda_a must be positive");
  }

  LimitLawReport out;
  out.a = shape.a();
  out.n = config.n;
  out.replications = config.replications;
  out.theory = config.law;
  out.method = config.method;
  out.master_seed = config.master_seed;

  const double scale = near_diametral_scale(config.n);
  out.reps = parallel_map(config.replications, config.workers, [&](std::size_t r) {
    const RngStream stream{config.master_seed, tagged_stream(StreamTag::limit, r)};
    const auto pts = replication_points(config.method, shape, config.n, stream);
    const auto d = diameter_pruned(pts, shape);
    LimitReplication rep;
    rep.stream_index = stream.stream_index;
    rep.m_n = d.m_n;
    rep.deficit = d.deficit();
    rep.rescaled_deficit = scale * rep.deficit;
    rep.i = d.i;
    rep.j = d.j;
    rep.pairs_examined = d.pairs_examined;
    return rep;
  });

  out.rescaled_deficits.reserve(out.reps.size());
  for (const auto& r : out.reps) out.rescaled_deficits.push_back(r.rescaled_deficit);
  out.ks_statistic = limit_ks_statistic(out.rescaled_deficits, config.law);
  out.ks_p_value = stats::kolmogorov_sf(
      std::sqrt(static_cast<double>(config.replications)) * out.ks_statistic);

  std::vector<double> sorted = out.rescaled_deficits;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t h = sorted.size() / 2;
  out.median = sorted.size() % 2 == 1 ? sorted[h] : 0.5 * (sorted[h - 1] + sorted[h]);
  out.median_theory = config.law.quantile_survival(0.5);
  return out;
}

std::string_view to_string(ExponentMode m) noexcept {
  switch (m) {
    case ExponentMode::circle: return "circle";
    case ExponentMode::interior: return "interior";
    case ExponentMode::ball: return "ball";
  }
  return "unknown";
}

ExponentMode exponent_mode_from_string(std::string_view name) {
  if (name == "circle") return ExponentMode::circle;
  if (name == "interior") return ExponentMode::interior;
  if (name == "ball") return ExponentMode::ball;
  throw std::invalid_argument("unknown exponent mode '" + std::string(name) + "'");
}

double expected_exponent(ExponentMode m) noexcept {
  switch (m) {
    case ExponentMode::circle: return 4.0 / 5.0;
    case ExponentMode::interior: return 4.0 / 7.0;
    case ExponentMode::ball: return 2.0 / 3.0;
  }
  return 0.0;
}

ExponentReport run_exponent_experiment(const ExponentConfig& config) {
  if (config.n_grid.size() < 2) {
    throw std::invalid_argument("run_exponent_experiment: need at least two n values");
  }
  for (std::size_t n : config.n_grid) {
    if (n < 2) throw std::invalid_argument("run_exponent_experiment: n must be >= 2");
  }
  if (config.replications < 2) {
    throw std::invalid_argument("run_exponent_experiment: need at least two replications");
  }

  double a = 0.0;
  SampleMethod method = SampleMethod::disk_diagnostic;
  switch (config.mode) {
    case ExponentMode::circle: break;
    case ExponentMode::interior:
      a = config.a;
      ShapeParam(a).require_interior("run_exponent_experiment");
      require_e_method(config.method, "run_exponent_experiment");
      method = config.method;
      break;
    case ExponentMode::ball:
      a = 1.0;
      require_e_method(config.method, "run_exponent_experiment");
      method = config.method;
      break;
  }
  const ShapeParam shape(a);

  ExponentReport out;
  out.mode = config.mode;
  out.a = a;
  out.replications = config.replications;
  out.master_seed = config.master_seed;
  out.expected = expected_exponent(config.mode);

  const std::size_t reps = config.replications;
  const std::uint64_t mode_bits = static_cast<std::uint64_t>(config.mode) << 44;
  struct Rep {
    double deficit;
    std::uint64_t pairs;
  };
  const auto all = parallel_map(config.n_grid.size() * reps, config.workers, [&](std::size_t job) {
    const std::size_t g = job / reps;
    const std::size_t r = job % reps;
    const RngStream stream{config.master_seed,
                           tagged_stream(StreamTag::exponent, mode_bits | grid_local(g, r))};
    const auto pts = replication_points(method, shape, config.n_grid[g], stream);
    const DiameterResult d = config.mode == ExponentMode::ball ? diameter_radial(pts)
                                                                : diameter_pruned(pts, shape);
    return Rep{d.deficit(), d.pairs_examined};
  });

  std::vector<double> lx, ly, lvar;
  for (std::size_t g = 0; g < config.n_grid.size(); ++g) {
    ExponentPoint pt;
    pt.n = config.n_grid[g];
    pt.deficits.reserve(reps);
    double pairs = 0.0;
    for (std::size_t r = 0; r < reps; ++r) {
      pt.deficits.push_back(all[g * reps + r].deficit);
      pairs += static_cast<double>(all[g * reps + r].pairs);
    }
    const auto mo = stats::moments(pt.deficits);
    pt.mean_deficit = mo.mean;
    pt.std_error = std::sqrt(mo.variance / static_cast<double>(reps));
    pt.mean_pairs_examined = pairs / static_cast<double>(reps);
    if (!(pt.mean_deficit > 0.0)) {
      throw std::runtime_error("run_exponent_experiment: zero mean deficit at n = " +
                               std::to_string(pt.n));
    }
    lx.push_back(std::log(static_cast<double>(pt.n)));
    ly.push_back(-std::log(pt.mean_deficit));
    const double rel = pt.std_error / pt.mean_deficit;
    lvar.push_back(rel * rel);
    out.points.push_back(std::move(pt));
  }

  const std::vector<double> ones(lx.size(), 1.0);
  const auto fit = stats::weighted_linear_fit(lx, ly, ones);
  out.fitted_exponent = fit.slope;
  // Delta-method error of the unweighted slope: sum (x - mean)^2 var_i / sxx^2.
  double mx = 0.0;
  for (double x : lx) mx += x;
  mx /= static_cast<double>(lx.size());
  double sxx = 0.0, num = 0.0;
  for (std::size_t k = 0; k < lx.size(); ++k) {
    const double dx = lx[k] - mx;
    sxx += dx * dx;
    num += dx * dx * lvar[k];
  }
  out.exponent_std_error = std::sqrt(num) / sxx;
  return out;
}

ChenSteinReport chen_stein_diagnostic(const ShapeParam& shape, std::span<const std::size_t> n_grid,
                                      double t, const TailCurve& tail,
                                      const TailCurve& overlap) {
  if (tail.kind != CurveKind::tail || overlap.kind != CurveKind::overlap) {
    throw std::invalid_argument("chen_stein_diagnostic: curve kinds swapped");
  }
  if (!(t > 0.0)) throw std::invalid_argument("chen_stein_diagnostic: t must be positive");
  if (n_grid.empty()) throw std::invalid_argument("chen_stein_diagnostic: empty n grid");

  ChenSteinReport out;
  out.a = shape.a();
  out.t = t;
  double b1_lo = std::numeric_limits<double>::infinity(), b1_hi = 0.0;
  double b2_lo = b1_lo, b2_hi = 0.0;
  for (std::size_t n : n_grid) {
    if (n < 3) throw std::invalid_argument("chen_stein_diagnostic: n must be >= 3");
    ChenSteinRow row;
    row.n = n;
    row.eps_n = t / near_diametral_scale(n);
    row.p = tail.prob_at(row.eps_n);
    row.q = overlap.prob_at(row.eps_n);
    const double nd = static_cast<double>(n);
    const double pairs = 0.5 * nd * (nd - 1.0);
    row.b1 = pairs * (2.0 * nd - 3.0) * row.p * row.p;
    row.b2 = pairs * 2.0 * (nd - 2.0) * row.q;
    row.b1_scaled = row.b1 * nd;
    row.b2_scaled = row.b2 * std::pow(nd, 1.0 / 7.0);
    b1_lo = std::min(b1_lo, row.b1_scaled);
    b1_hi = std::max(b1_hi, row.b1_scaled);
    b2_lo = std::min(b2_lo, row.b2_scaled);
    b2_hi = std::max(b2_hi, row.b2_scaled);
    out.rows.push_back(row);
  }
  out.b1_scaled_spread = b1_hi / b1_lo;
  out.b2_scaled_spread = b2_hi / b2_lo;
  return out;
}

}  // namespace diamlaw
