#include <cmath>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "diamlaw/constants.hpp"
#include "diamlaw/diameter.hpp"
#include "diamlaw/experiments.hpp"
#include "diamlaw/records.hpp"

namespace diamlaw {
namespace {

const LimitLaw kLaw05 = lambda_a(256.0 * 3.14159265358979323846 / (105.0 * std::sqrt(0.75)), 0.5);

TailConfig small_tail(bool localized, unsigned workers = 1) {
  TailConfig c;
  c.eps_grid = {0.2, 0.1, 0.05};
  c.n_pairs = 3'000'000;
  c.localized = localized;
  c.master_seed = 17;
  c.workers = workers;
  return c;
}

OverlapConfig small_overlap(unsigned workers = 1) {
  OverlapConfig c;
  c.eps_grid = {0.3, 0.2, 0.1};
  c.n_outer = 200;
  c.n_inner = 2000;
  c.master_seed = 17;
  c.workers = workers;
  return c;
}

TEST(Tail, WholeSpaceWhenEpsCoversDiameter) {
  TailConfig c = small_tail(true);
  c.eps_grid = {2.5};
  c.n_pairs = 10000;
  const auto curve = run_tail_experiment(c);
  ASSERT_EQ(curve.points.size(), 1u);
  EXPECT_EQ(curve.points[0].prob, 1.0);
  EXPECT_EQ(curve.points[0].hits, 10000u);
}

TEST(Tail, GridStoredDecreasing) {
  TailConfig c = small_tail(true);
  c.eps_grid = {0.05, 0.2, 0.1};
  const auto curve = run_tail_experiment(c);
  EXPECT_EQ(curve.points[0].eps, 0.2);
  EXPECT_EQ(curve.points[2].eps, 0.05);
  c.eps_grid = {0.1, 0.1};
  EXPECT_THROW(run_tail_experiment(c), std::invalid_argument);
}

TEST(Tail, LocalizedAgreesWithPlain) {
  const auto loc = run_tail_experiment(small_tail(true));
  const auto plain = run_tail_experiment(small_tail(false));
  EXPECT_FALSE(plain.localized);
  for (std::size_t k = 0; k < loc.points.size(); ++k) {
    const auto& x = loc.points[k];
    const auto& y = plain.points[k];
    ASSERT_EQ(x.eps, y.eps);
    ASSERT_GT(y.hits, 50u);
    const double se = std::hypot(x.std_error, y.std_error);
    EXPECT_LT(std::abs(x.prob - y.prob), 4 * se) << "eps=" << x.eps;
    EXPECT_LT(x.std_error, y.std_error);
  }
}

TEST(Tail, SlopeNearSevenHalves) {
  TailConfig c = small_tail(true);
  c.eps_grid = {0.1, 0.05, 0.03, 0.02};
  c.n_pairs = 8'000'000;
  const auto curve = run_tail_experiment(c);
  EXPECT_NEAR(curve.fitted_slope, 3.5, 0.3);
  EXPECT_NEAR(curve.prob_at(0.02) / std::pow(0.02, 3.5) / kLaw05.k_a(), 1.0, 0.2);
  EXPECT_THROW(curve.prob_at(0.5), std::out_of_range);
}

TEST(Tail, PlainPrefixCountsAreNested) {
  const auto curve = run_tail_experiment(small_tail(false));
  for (std::size_t k = 1; k < curve.points.size(); ++k) {
    EXPECT_LE(curve.points[k].hits, curve.points[k - 1].hits);
  }
}

TEST(Overlap, JointBelowMarginal) {
  const auto curve = run_overlap_experiment(small_overlap());
  EXPECT_EQ(curve.kind, CurveKind::overlap);
  for (const auto& p : curve.points) {
    EXPECT_GE(p.prob, 0.0);
    EXPECT_LE(p.prob, p.marginal_prob);
    EXPECT_GT(p.marginal_prob, 0.0);
  }
  EXPECT_THROW(run_overlap_experiment([] {
                 auto c = small_overlap();
                 c.n_inner = 1;
                 return c;
               }()),
               std::invalid_argument);
}

// q/p^2 grows as eps shrinks: two near-diametral partners of one point are
// strongly dependent.
TEST(Overlap, JointExceedsIndependence) {
  const auto curve = run_overlap_experiment(small_overlap());
  const auto& big = curve.points.front();
  const auto& small = curve.points.back();
  const double ratio_big = big.prob / (big.marginal_prob * big.marginal_prob);
  const double ratio_small = small.prob / (small.marginal_prob * small.marginal_prob);
  EXPECT_GT(ratio_big, 1.0);
  EXPECT_GT(ratio_small, ratio_big);
}

PoissonConfig small_poisson(unsigned workers = 1) {
  PoissonConfig c;
  c.n = 3000;
  c.t_grid = {0.0, 1.0, 2.0};
  c.replications = 24;
  c.law = kLaw05;
  c.master_seed = 17;
  c.workers = workers;
  return c;
}

TEST(Poisson, ZeroThresholdAndEventIdentity) {
  const auto s = run_poisson_experiment(small_poisson());
  EXPECT_TRUE(s.event_identity_holds);
  ASSERT_EQ(s.per_t.size(), 3u);
  EXPECT_EQ(s.per_t[0].mean_count, 0.0);
  EXPECT_EQ(s.per_t[0].zero_fraction, 1.0);
  EXPECT_NEAR(s.per_t[1].lambda_theory, kLaw05.lambda_a, 1e-12);
  EXPECT_LE(s.per_t[1].mean_count, s.per_t[2].mean_count);
  for (const auto& r : s.reps) {
    EXPECT_EQ(r.counts[0], 0u);
    for (std::size_t k = 0; k < 3; ++k) {
      EXPECT_EQ(r.counts[k] == 0, r.rescaled_deficit > s.per_t[k].t);
    }
  }
}

TEST(Poisson, RejectsDiagnosticSamplers) {
  auto c = small_poisson();
  c.method = SampleMethod::disk_diagnostic;
  EXPECT_THROW(run_poisson_experiment(c), std::invalid_argument);
}

LimitConfig small_limit(unsigned workers = 1) {
  LimitConfig c;
  c.n = 3000;
  c.replications = 40;
  c.law = kLaw05;
  c.master_seed = 17;
  c.workers = workers;
  return c;
}

TEST(Limit, RescaledDeficitsAndKs) {
  const auto r = run_limit_experiment(small_limit());
  ASSERT_EQ(r.rescaled_deficits.size(), 40u);
  for (std::size_t k = 0; k < r.reps.size(); ++k) {
    EXPECT_GT(r.reps[k].deficit, 0.0);
    EXPECT_DOUBLE_EQ(r.rescaled_deficits[k], r.reps[k].deficit * near_diametral_scale(3000));
  }
  EXPECT_EQ(r.ks_statistic, limit_ks_statistic(r.rescaled_deficits, kLaw05));
  EXPECT_GT(r.ks_statistic, 0.0);
  EXPECT_LT(r.ks_statistic, 0.5);
  EXPECT_NEAR(r.median_theory, kLaw05.quantile_survival(0.5), 1e-12);
}

TEST(Exponent, Modes) {
  EXPECT_DOUBLE_EQ(expected_exponent(ExponentMode::circle), 0.8);
  EXPECT_DOUBLE_EQ(expected_exponent(ExponentMode::interior), 4.0 / 7.0);
  EXPECT_DOUBLE_EQ(expected_exponent(ExponentMode::ball), 2.0 / 3.0);
  for (auto m : {ExponentMode::circle, ExponentMode::interior, ExponentMode::ball}) {
    EXPECT_EQ(exponent_mode_from_string(to_string(m)), m);
  }
  EXPECT_THROW(exponent_mode_from_string("sphere"), std::invalid_argument);
}

TEST(Exponent, SmallRunsLandNearTheory) {
  for (auto m : {ExponentMode::circle, ExponentMode::interior, ExponentMode::ball}) {
    ExponentConfig c;
    c.mode = m;
    c.n_grid = {1000, 10000};
    c.replications = 60;
    c.master_seed = 17;
    const auto r = run_exponent_experiment(c);
    EXPECT_EQ(r.points.size(), 2u);
    EXPECT_NEAR(r.fitted_exponent, expected_exponent(m), 0.2) << to_string(m);
    EXPECT_GT(r.exponent_std_error, 0.0);
  }
}

TEST(Exponent, Preconditions) {
  ExponentConfig c;
  c.n_grid = {1000};
  EXPECT_THROW(run_exponent_experiment(c), std::invalid_argument);
  c.n_grid = {1000, 2000};
  c.method = SampleMethod::circle_diagnostic;
  EXPECT_THROW(run_exponent_experiment(c), std::invalid_argument);
}

TEST(ChenStein, TermsFromCurves) {
  const auto tail = run_tail_experiment(small_tail(true));
  const auto overlap = run_overlap_experiment(small_overlap());
  const std::size_t grid[] = {10000, 30000};
  const double t = 0.2 * near_diametral_scale(10000) * (1 - 1e-12);
  const auto cs = chen_stein_diagnostic(ShapeParam(0.5), grid, t, tail, overlap);
  ASSERT_EQ(cs.rows.size(), 2u);
  for (const auto& row : cs.rows) {
    const double n = static_cast<double>(row.n);
    const double pairs = n * (n - 1) / 2;
    EXPECT_GE(row.b1, 0.0);
    EXPECT_GE(row.b2, 0.0);
    EXPECT_NEAR(row.p, tail.prob_at(row.eps_n), 1e-15);
    EXPECT_NEAR(row.b1, pairs * (2 * n - 3) * row.p * row.p, 1e-9 * row.b1);
    EXPECT_NEAR(row.b2, pairs * 2 * (n - 2) * row.q, 1e-9 * row.b2);
    EXPECT_NEAR(row.b1_scaled, row.b1 * n, 1e-9 * row.b1_scaled);
  }
  EXPECT_GE(cs.b1_scaled_spread, 1.0);
  const std::size_t too_small[] = {100};
  EXPECT_THROW(chen_stein_diagnostic(ShapeParam(0.5), too_small, t, tail, overlap),
               std::out_of_range);
  EXPECT_THROW(chen_stein_diagnostic(ShapeParam(0.5), grid, t, overlap, tail),
               std::invalid_argument);
}

TEST(Determinism, WorkerCountDoesNotChangeRecords) {
  EXPECT_EQ(to_csv(run_tail_experiment(small_tail(true, 1))),
            to_csv(run_tail_experiment(small_tail(true, 8))));
  EXPECT_EQ(to_csv(run_tail_experiment(small_tail(false, 1))),
            to_csv(run_tail_experiment(small_tail(false, 8))));
  EXPECT_EQ(to_csv(run_overlap_experiment(small_overlap(1))),
            to_csv(run_overlap_experiment(small_overlap(8))));
  EXPECT_EQ(to_csv(run_poisson_experiment(small_poisson(1))),
            to_csv(run_poisson_experiment(small_poisson(8))));
  EXPECT_EQ(to_csv(run_limit_experiment(small_limit(1))),
            to_csv(run_limit_experiment(small_limit(8))));
}

}  // namespace
}  // namespace diamlaw
