#include "diamlaw/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace diamlaw::stats {

double ks_statistic(std::span<const double> samples, const std::function<double(double)>& cdf) {
  if (samples.empty()) throw std::invalid_argument("ks_statistic: empty sample");
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i]);
    const double lo = static_cast<double>(i) / n;
    const double hi = static_cast<double>(i + 1) / n;
    d = std::max({d, hi - f, f - lo});
  }
  return d;
}

double ks_two_sample(std::span<const double> x, std::span<const double> y) {
  if (x.empty() || y.empty()) throw std::invalid_argument("ks_two_sample: empty sample");
  std::vector<double> xs(x.begin(), x.end());
  std::vector<double> ys(y.begin(), y.end());
  std::sort(xs.begin(), xs.end());
  std::sort(ys.begin(), ys.end());
  const double nx = static_cast<double>(xs.size());
  const double ny = static_cast<double>(ys.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < xs.size() && j < ys.size()) {
    const double v = std::min(xs[i], ys[j]);
    while (i < xs.size() && xs[i] == v) ++i;
    while (j < ys.size() && ys[j] == v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / nx - static_cast<double>(j) / ny));
  }
  return d;
}

double kolmogorov_sf(double x) {
  if (x <= 0.0) return 1.0;
  if (x < 0.3) {
    // Series in exp(-2 k^2 x^2) converges slowly here; the survival is 1 to
    // double precision anyway.
    return 1.0;
  }
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * x * x);
    sum += (k % 2 == 1 ? term : -term);
    if (term < 1e-18) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

LinearFit weighted_linear_fit(std::span<const double> x, std::span<const double> y,
                              std::span<const double> w) {
  if (x.size() != y.size() || x.size() != w.size()) {
    throw std::invalid_argument("weighted_linear_fit: size mismatch");
  }
  double sw = 0.0, sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sw += w[i];
    sx += w[i] * x[i];
    sy += w[i] * y[i];
  }
  if (!(sw > 0.0)) throw std::invalid_argument("weighted_linear_fit: no weight");
  const double mx = sx / sw;
  const double my = sy / sw;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += w[i] * (x[i] - mx) * (x[i] - mx);
    sxy += w[i] * (x[i] - mx) * (y[i] - my);
  }
  if (!(sxx > 0.0)) throw std::invalid_argument("weighted_linear_fit: need two distinct x");
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.points = x.size();
  // With inverse-variance weights the slope variance is 1 / sxx.
  fit.slope_std_error = std::sqrt(1.0 / sxx);
  return fit;
}

std::vector<double> isotonic_nondecreasing(std::span<const double> y,
                                           std::span<const double> w) {
  if (y.size() != w.size()) throw std::invalid_argument("isotonic_nondecreasing: size mismatch");
  struct Block {
    double value;
    double weight;
    std::size_t length;
  };
  std::vector<Block> blocks;
  for (std::size_t i = 0; i < y.size(); ++i) {
    blocks.push_back({y[i], w[i], 1});
    while (blocks.size() > 1 && blocks[blocks.size() - 2].value > blocks.back().value) {
      const Block top = blocks.back();
      blocks.pop_back();
      Block& prev = blocks.back();
      const double weight = prev.weight + top.weight;
      prev.value = weight > 0.0
                       ? (prev.value * prev.weight + top.value * top.weight) / weight
                       : 0.5 * (prev.value + top.value);
      prev.weight = weight;
      prev.length += top.length;
    }
  }
  std::vector<double> out;
  out.reserve(y.size());
  for (const auto& b : blocks) out.insert(out.end(), b.length, b.value);
  return out;
}

double loglog_interpolate(std::span<const double> xs, std::span<const double> ys, double x) {
  if (xs.size() != ys.size() || xs.empty()) {
    throw std::invalid_argument("loglog_interpolate: bad table");
  }
  if (x < xs.front() || x > xs.back()) {
    throw std::out_of_range("loglog_interpolate: x outside the measured range");
  }
  if (xs.size() == 1) return ys.front();
  auto it = std::upper_bound(xs.begin(), xs.end(), x);
  std::size_t hi = static_cast<std::size_t>(it - xs.begin());
  if (hi >= xs.size()) hi = xs.size() - 1;
  const std::size_t lo = hi - 1;
  if (!(ys[lo] > 0.0 && ys[hi] > 0.0)) {
    throw std::domain_error("loglog_interpolate: nonpositive value in table");
  }
  const double lx0 = std::log(xs[lo]);
  const double lx1 = std::log(xs[hi]);
  const double f = (std::log(x) - lx0) / (lx1 - lx0);
  return std::exp(std::log(ys[lo]) + f * (std::log(ys[hi]) - std::log(ys[lo])));
}

Moments moments(std::span<const double> values) {
  Moments m;
  m.count = values.size();
  if (values.empty()) return m;
  double sum = 0.0;
  for (double v : values) sum += v;
  m.mean = sum / static_cast<double>(values.size());
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - m.mean) * (v - m.mean);
    m.variance = ss / static_cast<double>(values.size() - 1);
  }
  return m;
}

double chi_square_uniform(std::span<const std::size_t> counts) {
  if (counts.empty()) throw std::invalid_argument("chi_square_uniform: no cells");
  double total = 0.0;
  for (auto c : counts) total += static_cast<double>(c);
  const double expected = total / static_cast<double>(counts.size());
  double chi2 = 0.0;
  for (auto c : counts) {
    const double d = static_cast<double>(c) - expected;
    chi2 += d * d / expected;
  }
  return chi2;
}

}  // namespace diamlaw::stats
