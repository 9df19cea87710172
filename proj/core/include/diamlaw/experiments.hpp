#ifndef DIAMLAW_EXPERIMENTS_HPP
#define DIAMLAW_EXPERIMENTS_HPP

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string_view>
#include <vector>

#include "diamlaw/constants.hpp"
#include "diamlaw/geometry.hpp"
#include "diamlaw/sampling.hpp"

// Seeded, replicable verification experiments.  Every record is a pure
// function of its config: replications (or sample chunks) own fixed stream
// indices and are aggregated in index order, so results do not depend on
// the worker count.

namespace diamlaw {

inline constexpr std::uint64_t kMinHitsForFit = 100;

// ---------------------------------------------------------------------------
// Two-point tail and overlap

enum class CurveKind { tail, overlap };

struct TailPoint {
  double eps = 0.0;
  std::uint64_t pairs = 0;  // pair evaluations spent on this grid point
  std::uint64_t hits = 0;
  double window_mass = 1.0;  // probability of the sampled localization window
  double prob = 0.0;         // P(W12 <= eps), or P(W12 <= eps, W13 <= eps)
  double std_error = 0.0;
  double smoothed = 0.0;  // isotonic in eps, used by the fit
  // Overlap only: P(W12 <= eps) from the same nested draws.
  double marginal_prob = 0.0;
  double marginal_std_error = 0.0;
  std::uint64_t clipped = 0;  // bias-corrected squares clipped at 0
  bool in_fit = false;
  bool flagged = false;  // fewer than kMinHitsForFit hits
};

struct TailCurve {
  CurveKind kind = CurveKind::tail;
  double a = 0.0;
  std::vector<TailPoint> points;  // ordered by decreasing eps
  std::uint64_t n_pairs = 0;
  std::uint64_t n_outer = 0;
  std::uint64_t n_inner = 0;
  bool localized = true;
  double fit_eps_min = 0.0;
  double fit_eps_max = 0.0;
  double fitted_slope = 0.0;
  double fitted_intercept = 0.0;
  double slope_std_error = 0.0;
  std::uint64_t master_seed = 0;

  /// log-log interpolation of prob; throws std::out_of_range when eps is
  /// outside the measured grid.
  double prob_at(double eps) const;
};

struct TailConfig {
  ShapeParam shape{0.5};
  std::vector<double> eps_grid;  // any order; stored decreasing
  std::uint64_t n_pairs = 100'000'000;
  double fit_eps_min = 0.0;
  double fit_eps_max = std::numeric_limits<double>::infinity();
  /// true: each eps samples its own localization window (budget split evenly
  /// over the grid).  false: plain uniform pairs shared by every grid point.
  bool localized = true;
  std::uint64_t master_seed = 1;
  unsigned workers = 1;
};

/// Hit-or-miss estimate of P(W12 <= eps) with binomial standard errors, and
/// the weighted log-log slope over grid points with >= 100 hits inside the
/// fit range.
TailCurve run_tail_experiment(const TailConfig& config);

struct OverlapConfig {
  ShapeParam shape{0.5};
  std::vector<double> eps_grid;
  std::uint64_t n_outer = 10'000;
  std::uint64_t n_inner = 10'000;
  double fit_eps_min = 0.0;
  double fit_eps_max = std::numeric_limits<double>::infinity();
  std::uint64_t master_seed = 1;
  unsigned workers = 1;
};

/// Nested estimator of q(eps) = P(W12 <= eps, W13 <= eps) = E[p_eps(X1)^2].
/// For each outer anchor the inner hit fraction h over n_inner partners gives
/// the unbiased square h^2 - h(1 - h)/(n_inner - 1).
TailCurve run_overlap_experiment(const OverlapConfig& config);

// ---------------------------------------------------------------------------
// Poisson approximation and limit law

struct PoissonConfig {
  ShapeParam shape{0.5};
  std::size_t n = 100'000;
  std::vector<double> t_grid;
  std::size_t replications = 2000;
  LimitLaw law;
  SampleMethod method = SampleMethod::rejection;
  std::uint64_t master_seed = 1;
  unsigned workers = 1;
};

struct PoissonReplication {
  std::uint64_t stream_index = 0;
  double m_n = 0.0;
  double rescaled_deficit = 0.0;  // n^{4/7} (2 - m_n)
  std::vector<std::uint64_t> counts;
  std::uint64_t pairs_examined = 0;
};

struct PoissonTPoint {
  double t = 0.0;
  double lambda_theory = 0.0;  // Lambda_a t^{7/2}
  double mean_count = 0.0;
  double var_count = 0.0;
  double zero_fraction = 0.0;
  double exceed_fraction = 0.0;  // fraction with rescaled_deficit > t
  std::vector<std::uint64_t> pmf;  // pmf[k] = replications with N = k
};

struct PoissonSummary {
  double a = 0.0;
  std::size_t n = 0;
  std::size_t replications = 0;
  LimitLaw law;
  SampleMethod method = SampleMethod::rejection;
  std::uint64_t master_seed = 0;
  std::vector<PoissonTPoint> per_t;
  std::vector<PoissonReplication> reps;
  /// zero_fraction == exceed_fraction for every t, and per replication.
  bool event_identity_holds = false;
};

PoissonSummary run_poisson_experiment(const PoissonConfig& config);

struct LimitConfig {
  ShapeParam shape{0.5};
  std::size_t n = 200'000;
  std::size_t replications = 2000;
  LimitLaw law;
  SampleMethod method = SampleMethod::rejection;
  std::uint64_t master_seed = 1;
  unsigned workers = 1;
};

struct LimitReplication {
  std::uint64_t stream_index = 0;
  double m_n = 0.0;
  double deficit = 0.0;
  double rescaled_deficit = 0.0;
  std::size_t i = 0;
  std::size_t j = 0;
  std::uint64_t pairs_examined = 0;
};

struct LimitLawReport {
  double a = 0.0;
  std::size_t n = 0;
  std::size_t replications = 0;
  LimitLaw theory;
  SampleMethod method = SampleMethod::rejection;
  std::uint64_t master_seed = 0;
  std::vector<LimitReplication> reps;
  std::vector<double> rescaled_deficits;
  double ks_statistic = 0.0;
  double ks_p_value = 0.0;
  double median = 0.0;
  double median_theory = 0.0;  // (ln 2 / Lambda)^{2/7}
};

LimitLawReport run_limit_experiment(const LimitConfig& config);

/// KS distance of the rescaled deficits to 1 - exp(-law.lambda_a t^{7/2}).
double limit_ks_statistic(std::span<const double> rescaled, const LimitLaw& law);

// ---------------------------------------------------------------------------
// Normalisation exponent across the degenerate cases

enum class ExponentMode {
  circle,    // a = 0: uniform on the flat unit disk
  interior,  // 0 < a < 1
  ball,      // a = 1
};

std::string_view to_string(ExponentMode m) noexcept;
ExponentMode exponent_mode_from_string(std::string_view name);
/// 4/5, 4/7, 2/3.
double expected_exponent(ExponentMode m) noexcept;

struct ExponentConfig {
  ExponentMode mode = ExponentMode::interior;
  double a = 0.5;  // interior mode only
  std::vector<std::size_t> n_grid;
  std::size_t replications = 500;
  SampleMethod method = SampleMethod::rejection;  // interior and ball
  std::uint64_t master_seed = 1;
  unsigned workers = 1;
};

struct ExponentPoint {
  std::size_t n = 0;
  double mean_deficit = 0.0;
  double std_error = 0.0;
  double mean_pairs_examined = 0.0;
  std::vector<double> deficits;  // per replication
};

struct ExponentReport {
  ExponentMode mode = ExponentMode::interior;
  double a = 0.0;
  std::size_t replications = 0;
  std::uint64_t master_seed = 0;
  std::vector<ExponentPoint> points;
  double fitted_exponent = 0.0;  // slope of -log(mean deficit) vs log n
  double exponent_std_error = 0.0;
  double expected = 0.0;
};

ExponentReport run_exponent_experiment(const ExponentConfig& config);

// ---------------------------------------------------------------------------
// Chen-Stein terms

struct ChenSteinRow {
  std::size_t n = 0;
  double eps_n = 0.0;
  double p = 0.0;   // P(W12 <= eps_n)
  double q = 0.0;   // P(W12 <= eps_n, W13 <= eps_n)
  double b1 = 0.0;  // C(n,2) (2n - 3) p^2
  double b2 = 0.0;  // C(n,2) 2 (n - 2) q
  double b1_scaled = 0.0;  // b1 n
  double b2_scaled = 0.0;  // b2 n^{1/7}
};

struct ChenSteinReport {
  double a = 0.0;
  double t = 0.0;
  std::vector<ChenSteinRow> rows;
  double b1_scaled_spread = 0.0;  // max / min over the grid
  double b2_scaled_spread = 0.0;
};

/// Evaluates the dependency-graph terms b1 and b2 from measured curves at
/// eps_n = t n^{-4/7}.  Throws std::out_of_range if any eps_n falls outside
/// the measured range of either curve.
ChenSteinReport chen_stein_diagnostic(const ShapeParam& shape, std::span<const std::size_t> n_grid,
                                      double t, const TailCurve& tail,
                                      const TailCurve& overlap);

}  // namespace diamlaw

#endif  // DIAMLAW_EXPERIMENTS_HPP
