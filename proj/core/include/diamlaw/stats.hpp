#ifndef DIAMLAW_STATS_HPP
#define DIAMLAW_STATS_HPP

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace diamlaw::stats {

/// sup_t |F_n(t) - F(t)| for the empirical CDF of `samples`.
double ks_statistic(std::span<const double> samples, const std::function<double(double)>& cdf);

/// Two-sample sup-distance between empirical CDFs.
double ks_two_sample(std::span<const double> x, std::span<const double> y);

/// Asymptotic Kolmogorov survival function P(K > x).
double kolmogorov_sf(double x);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_std_error = 0.0;
  std::size_t points = 0;
};

/// Weighted least squares y = intercept + slope x.  Needs two distinct x.
LinearFit weighted_linear_fit(std::span<const double> x, std::span<const double> y,
                              std::span<const double> w);

/// Pool-adjacent-violators fit of a nondecreasing sequence.
std::vector<double> isotonic_nondecreasing(std::span<const double> y,
                                           std::span<const double> w);

/// Linear interpolation of log y against log x.  xs must be strictly
/// increasing and ys positive; throws std::out_of_range outside [xs.front(), xs.back()].
double loglog_interpolate(std::span<const double> xs, std::span<const double> ys, double x);

struct Moments {
  std::size_t count = 0;
  double mean = 0.0;
  double variance = 0.0;  // unbiased
};

/// Two-pass mean and unbiased variance.
Moments moments(std::span<const double> values);

/// Pearson chi-square statistic of observed counts against equal expected cells.
double chi_square_uniform(std::span<const std::size_t> counts);

}  // namespace diamlaw::stats

#endif  // DIAMLAW_STATS_HPP
