#include <cmath>
#include <numbers>
#include <stdexcept>

#include <gtest/gtest.h>

#include "diamlaw/constants.hpp"

namespace diamlaw {
namespace {

constexpr double kPi = std::numbers::pi;

// Integrating s, s' and tau in closed form leaves a Gaussian-type integral in
// (y, y') whose quadratic form has determinant 1 - a^2.
double closed_form_i_a(double a) { return 256.0 * kPi / (105.0 * std::sqrt(1.0 - a * a)); }

TEST(ReducedIntegrand, Origin) {
  for (double av : {0.0, 0.3, 0.9}) {
    EXPECT_DOUBLE_EQ(reduced_integrand(0, 0, 0, ShapeParam(av)), 2.0);
  }
  EXPECT_EQ(reduced_integrand(0, 0, 2.5, ShapeParam(0.5)), 0.0);
}

// The reduced integrand is the (s, s') area of the slice; check it against a
// direct 2-d midpoint count.
TEST(ReducedIntegrand, MatchesSliceArea) {
  const ShapeParam a(0.6);
  const double y = 0.4, yp = -0.3, tau = 0.7;
  constexpr int cells = 2000;
  const double hi = 4.0;
  const double h = hi / cells;
  double area = 0.0;
  for (int i = 0; i < cells; ++i) {
    for (int j = 0; j < cells; ++j) {
      const LocalCoords c{(i + 0.5) * h, (j + 0.5) * h, y, yp, tau};
      if (c.in_region() && local_G(c, a) <= 1.0) area += h * h;
    }
  }
  EXPECT_NEAR(reduced_integrand(y, yp, tau, a), area, 0.01);
}

TEST(SublevelBox, ContainsSublevelSet) {
  const ShapeParam a(0.5);
  const SublevelBox box = sublevel_box(a);
  EXPECT_NEAR(box.s_max, 2.0 / 0.75, 1e-15);
  Philox rng({5, tagged_stream(StreamTag::test, 1)});
  std::size_t inside = 0;
  for (int k = 0; k < 1000000; ++k) {
    LocalCoords c;
    c.s = rng.uniform(0, 2 * box.s_max);
    c.sp = rng.uniform(0, 2 * box.s_max);
    c.y = rng.uniform(-1, 1) * std::sqrt(c.s);
    c.yp = rng.uniform(-1, 1) * std::sqrt(c.sp);
    c.tau = rng.uniform(-2 * box.tau_max, 2 * box.tau_max);
    if (local_G(c, a) > 1.0) continue;
    ++inside;
    ASSERT_LE(c.s, box.s_max);
    ASSERT_LE(c.sp, box.s_max);
    ASSERT_LE(std::abs(c.y), box.y_max);
    ASSERT_LE(std::abs(c.yp), box.y_max);
    ASSERT_LE(std::abs(c.tau), box.tau_max);
  }
  EXPECT_GT(inside, 100u);
}

TEST(Reduced3d, ClosedFormOracle) {
  for (double av : {0.2, 0.5, 0.8}) {
    const auto est = i_a_reduced3d(ShapeParam(av), {60, 120});
    EXPECT_EQ(est.method, IntegralMethod::reduced3d);
    EXPECT_NEAR(est.value / closed_form_i_a(av), 1.0, 2e-3) << "a=" << av;
    EXPECT_LE(std::abs(est.value - closed_form_i_a(av)), 3 * est.std_error + 1e-3);
  }
}

TEST(Reduced3d, SmallAMatchesFlatLimit) {
  const auto est = i_a_reduced3d(ShapeParam(0.01), {60, 120});
  EXPECT_NEAR(est.value / (256.0 * kPi / 105.0), 1.0, 0.01);
}

TEST(Reduced3d, WorkerCountInvariant) {
  const ShapeParam a(0.5);
  EXPECT_EQ(reduced3d_midpoint(a, 40, 1), reduced3d_midpoint(a, 40, 4));
  EXPECT_THROW(i_a_reduced3d(a, {40, 40}), std::invalid_argument);
}

TEST(Mc5d, ClosedFormOracle) {
  const auto est = i_a_mc5d(ShapeParam(0.5), 4'000'000, 11);
  EXPECT_EQ(est.method, IntegralMethod::mc5d);
  EXPECT_EQ(est.budget, 4'000'000u);
  EXPECT_GT(est.std_error, 0.0);
  EXPECT_LT(std::abs(est.value - closed_form_i_a(0.5)), 4 * est.std_error);
  EXPECT_EQ(est.shell_hits, 0u);
}

TEST(Mc5d, DeterministicAcrossWorkers) {
  const auto x = i_a_mc5d(ShapeParam(0.3), 3'000'000, 9, 1);
  const auto y = i_a_mc5d(ShapeParam(0.3), 3'000'000, 9, 3);
  EXPECT_EQ(x.value, y.value);
  EXPECT_EQ(x.hits, y.hits);
}

TEST(Mc5d, Preconditions) {
  EXPECT_THROW(i_a_mc5d(ShapeParam(0.96), 1000, 1), std::invalid_argument);
  EXPECT_THROW(i_a_mc5d(ShapeParam(0.0), 1000, 1), std::invalid_argument);
  EXPECT_THROW(i_a_mc5d(ShapeParam(0.5), 0, 1), std::invalid_argument);
}

TEST(LimitLaw, LambdaExamples) {
  EXPECT_NEAR(lambda_a(64 * kPi / 9).lambda_a, 1.0, 1e-15);
  EXPECT_NEAR(lambda_a(1.0).lambda_a, 0.04476, 1e-5);
  EXPECT_NEAR(lambda_a(1.0).k_a(), 2 * 9 / (64 * kPi), 1e-15);
  EXPECT_THROW(lambda_a(0.0), std::invalid_argument);
  const auto law = lambda_a(closed_form_i_a(0.5), 0.5);
  EXPECT_NEAR(law.lambda_a, 36.0 / (105.0 * std::sqrt(0.75)), 1e-15);
  EXPECT_NEAR(law.lambda_a, 0.395897, 1e-6);
  EXPECT_NEAR(law.k_a(), 0.791795, 1e-6);
}

TEST(LimitLaw, Survival) {
  const auto unit = lambda_a(64 * kPi / 9);
  EXPECT_EQ(weibull_survival(0.0, unit), 1.0);
  EXPECT_NEAR(weibull_survival(1.0, unit), std::exp(-1.0), 1e-15);
  EXPECT_NEAR(weibull_survival(2.0, unit), std::exp(-std::pow(2.0, 3.5)), 1e-18);
  EXPECT_NEAR(weibull_survival(2.0, unit), 1.2204e-5, 1e-9);
  EXPECT_NEAR(unit.cdf(1.0), 1 - std::exp(-1.0), 1e-15);
  EXPECT_THROW(unit.survival(-1.0), std::invalid_argument);
}

TEST(LimitLaw, QuantileAndMeanInverse) {
  const auto law = lambda_a(closed_form_i_a(0.5), 0.5);
  for (double p : {0.9, 0.5, 0.1, 1e-3}) {
    EXPECT_NEAR(law.survival(law.quantile_survival(p)), p, 1e-12);
  }
  EXPECT_NEAR(law.quantile_survival(0.5), std::pow(std::log(2.0) / law.lambda_a, 2.0 / 7.0), 1e-12);
  const double t1 = law.t_for_mean(1.0);
  EXPECT_NEAR(t1, 1.3031, 1e-4);
  EXPECT_NEAR(law.lambda_a * std::pow(t1, 3.5), 1.0, 1e-12);
  EXPECT_THROW(law.quantile_survival(0.0), std::invalid_argument);
}

}  // namespace
}  // namespace diamlaw
