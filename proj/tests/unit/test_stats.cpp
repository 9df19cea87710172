#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "diamlaw/rng.hpp"
#include "diamlaw/stats.hpp"

namespace diamlaw::stats {
namespace {

TEST(Ks, OneSampleExact) {
  const std::vector<double> x = {0.1, 0.4, 0.7};
  // largest gap is above the last step: 1 - 0.7
  EXPECT_NEAR(ks_statistic(x, [](double t) { return t; }), 0.3, 1e-15);
  EXPECT_THROW(ks_statistic(std::vector<double>{}, [](double t) { return t; }), std::invalid_argument);
}

TEST(Ks, UniformSampleIsClose) {
  Philox rng({3, 4});
  std::vector<double> x(100000);
  for (auto& v : x) v = rng.uniform();
  const double d = ks_statistic(x, [](double t) { return std::clamp(t, 0.0, 1.0); });
  EXPECT_LT(d * std::sqrt(x.size()), 1.94947);
}

TEST(Ks, TwoSample) {
  const std::vector<double> x = {1, 2, 3, 4};
  const std::vector<double> y = {3, 4, 5, 6};
  EXPECT_DOUBLE_EQ(ks_two_sample(x, y), 0.5);
  EXPECT_EQ(ks_two_sample(x, x), 0.0);
  const std::vector<double> tied = {1, 1, 2, 2};
  const std::vector<double> other = {1, 2, 2, 2};
  EXPECT_DOUBLE_EQ(ks_two_sample(tied, other), 0.25);
}

TEST(Ks, KolmogorovSurvival) {
  EXPECT_NEAR(kolmogorov_sf(1.94947), 0.001, 2e-6);
  EXPECT_NEAR(kolmogorov_sf(1.35810), 0.05, 1e-5);
  EXPECT_EQ(kolmogorov_sf(0.0), 1.0);
  EXPECT_LT(kolmogorov_sf(10.0), 1e-80);
}

TEST(Fit, ExactLine) {
  const std::vector<double> x = {0, 1, 2, 3};
  const std::vector<double> y = {1, 3.5, 6, 8.5};
  const std::vector<double> w = {1, 2, 3, 4};
  const auto f = weighted_linear_fit(x, y, w);
  EXPECT_NEAR(f.slope, 2.5, 1e-14);
  EXPECT_NEAR(f.intercept, 1.0, 1e-14);
  // weights are inverse variances: se = 1 / sqrt(sum w (x - xbar_w)^2)
  EXPECT_NEAR(f.slope_std_error, 1.0 / std::sqrt(10.0), 1e-14);
  EXPECT_EQ(f.points, 4u);
  const std::vector<double> same = {1, 1};
  EXPECT_THROW(weighted_linear_fit(same, same, same), std::invalid_argument);
}

TEST(Fit, WeightsMatter) {
  const std::vector<double> x = {0, 1, 2};
  const std::vector<double> y = {0, 1, 5};
  const std::vector<double> light = {1, 1, 1e-12};
  EXPECT_NEAR(weighted_linear_fit(x, y, light).slope, 1.0, 1e-6);
}

TEST(Isotonic, PoolsViolators) {
  const std::vector<double> y = {1, 3, 2, 4};
  const std::vector<double> w = {1, 1, 1, 1};
  EXPECT_EQ(isotonic_nondecreasing(y, w), (std::vector<double>{1, 2.5, 2.5, 4}));
  const std::vector<double> w2 = {1, 3, 1, 1};
  const auto r = isotonic_nondecreasing(y, w2);
  EXPECT_DOUBLE_EQ(r[1], 2.75);
  EXPECT_DOUBLE_EQ(r[2], 2.75);
  const std::vector<double> sorted = {1, 2, 3};
  EXPECT_EQ(isotonic_nondecreasing(sorted, std::vector<double>(3, 1.0)), sorted);
}

TEST(Interpolate, PowerLawExact) {
  const std::vector<double> xs = {0.1, 0.2, 0.4};
  std::vector<double> ys;
  for (double x : xs) ys.push_back(3 * std::pow(x, 3.5));
  EXPECT_NEAR(loglog_interpolate(xs, ys, 0.3) / (3 * std::pow(0.3, 3.5)), 1.0, 1e-13);
  EXPECT_DOUBLE_EQ(loglog_interpolate(xs, ys, 0.1), ys[0]);
  EXPECT_THROW(loglog_interpolate(xs, ys, 0.05), std::out_of_range);
  EXPECT_THROW(loglog_interpolate(xs, ys, 0.5), std::out_of_range);
  const std::vector<double> zero = {1, 0, 1};
  EXPECT_THROW(loglog_interpolate(xs, zero, 0.15), std::domain_error);
}

TEST(Moments, MeanAndVariance) {
  const std::vector<double> v = {2, 4, 4, 4, 5, 5, 7, 9};
  const auto m = moments(v);
  EXPECT_EQ(m.count, 8u);
  EXPECT_DOUBLE_EQ(m.mean, 5.0);
  EXPECT_DOUBLE_EQ(m.variance, 32.0 / 7.0);
}

TEST(ChiSquare, Uniform) {
  const std::vector<std::size_t> even = {10, 10, 10};
  EXPECT_EQ(chi_square_uniform(even), 0.0);
  const std::vector<std::size_t> skew = {5, 10, 15};
  EXPECT_DOUBLE_EQ(chi_square_uniform(skew), 5.0);
}

}  // namespace
}  // namespace diamlaw::stats
