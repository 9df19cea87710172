#include "diamlaw/constants.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include "diamlaw/parallel.hpp"

namespace diamlaw {

namespace {

constexpr std::uint64_t kMcChunk = std::uint64_t{1} << 20;
constexpr double kShellWidth = 1e-9;
constexpr double kMaxMcShape = 0.95;

// Neumaier compensated accumulator.
struct CompensatedSum {
  double sum = 0.0;
  double carry = 0.0;

  void add(double x) noexcept {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      carry += (sum - t) + x;
    } else {
      carry += (x - t) + sum;
    }
    sum = t;
  }
  double value() const noexcept { return sum + carry; }
};

struct ChunkHits {
  std::uint64_t hits = 0;
  std::uint64_t shell = 0;
};

}  // namespace

std::string_view to_string(IntegralMethod m) noexcept {
  switch (m) {
    case IntegralMethod::mc5d: return "mc5d";
    case IntegralMethod::reduced3d: return "reduced3d";
  }
  return "unknown";
}

double SublevelBox::volume() const noexcept {
  return s_max * s_max * (2.0 * y_max) * (2.0 * y_max) * (2.0 * tau_max);
}

SublevelBox sublevel_box(const ShapeParam& shape) {
  shape.require_interior("sublevel_box");
  const double a2 = shape.a() * shape.a();
  SublevelBox box;
  box.s_max = 2.0 / (1.0 - a2);
  box.y_max = std::sqrt(box.s_max);
  box.tau_max = std::sqrt(4.0 + 4.0 * a2 * box.s_max);
  return box;
}

ConstantEstimate i_a_mc5d(const ShapeParam& shape, std::uint64_t n_samples,
                          std::uint64_t master_seed, unsigned workers) {
  shape.require_interior("i_a_mc5d");
  if (shape.a() > kMaxMcShape) {
    throw std::invalid_argument("i_a_mc5d: a must be <= 0.95 (bounding box grows without bound)");
  }
  if (n_samples == 0) throw std::invalid_argument("i_a_mc5d: zero sample budget");

  const SublevelBox box = sublevel_box(shape);
  const double a2 = shape.a() * shape.a();
  const std::uint64_t chunks = (n_samples + kMcChunk - 1) / kMcChunk;

  const auto per_chunk = parallel_map(chunks, workers, [&](std::size_t c) {
    const std::uint64_t begin = c * kMcChunk;
    const std::uint64_t count = std::min(kMcChunk, n_samples - begin);
    Philox rng({master_seed, tagged_stream(StreamTag::constant_mc, c)});
    ChunkHits out;
    for (std::uint64_t k = 0; k < count; ++k) {
      const double s = box.s_max * rng.uniform();
      const double sp = box.s_max * rng.uniform();
      const double y = box.y_max * (2.0 * rng.uniform() - 1.0);
      const double yp = box.y_max * (2.0 * rng.uniform() - 1.0);
      const double tau = box.tau_max * (2.0 * rng.uniform() - 1.0);
      if (y * y > s || yp * yp > sp) continue;
      const double dy = y - yp;
      const double g = 0.5 * (s + sp) + 0.25 * tau * tau - 0.25 * a2 * dy * dy;
      if (g > 1.0) continue;
      ++out.hits;
      if (s > box.s_max - kShellWidth || sp > box.s_max - kShellWidth ||
          std::abs(y) > box.y_max - kShellWidth || std::abs(yp) > box.y_max - kShellWidth ||
          std::abs(tau) > box.tau_max - kShellWidth) {
        ++out.shell;
      }
    }
    return out;
  });

  ConstantEstimate est;
  est.method = IntegralMethod::mc5d;
  est.a = shape.a();
  est.budget = n_samples;
  est.master_seed = master_seed;
  for (const auto& c : per_chunk) {
    est.hits += c.hits;
    est.shell_hits += c.shell;
  }
  const double n = static_cast<double>(n_samples);
  const double frac = static_cast<double>(est.hits) / n;
  const double volume = box.volume();
  est.value = volume * frac;
  est.std_error = volume * std::sqrt(frac * (1.0 - frac) / n);
  return est;
}

double reduced_integrand(double y, double yp, double tau, const ShapeParam& shape) noexcept {
  const double a2 = shape.a() * shape.a();
  const double dy = y - yp;
  const double c = 1.0 - 0.25 * tau * tau + 0.25 * a2 * dy * dy;
  const double room = 2.0 * c - y * y - yp * yp;
  return room > 0.0 ? 0.5 * room * room : 0.0;
}

double reduced3d_midpoint(const ShapeParam& shape, std::size_t cells, unsigned workers) {
  if (cells == 0) throw std::invalid_argument("reduced3d_midpoint: zero cells");
  const SublevelBox box = sublevel_box(shape);
  const double hy = 2.0 * box.y_max / static_cast<double>(cells);
  const double ht = 2.0 * box.tau_max / static_cast<double>(cells);
  std::vector<double> ys(cells);
  for (std::size_t i = 0; i < cells; ++i) {
    ys[i] = -box.y_max + hy * (static_cast<double>(i) + 0.5);
  }

  const auto slabs = parallel_map(cells, workers, [&](std::size_t k) {
    const double tau = -box.tau_max + ht * (static_cast<double>(k) + 0.5);
    CompensatedSum acc;
    for (double y : ys) {
      for (double yp : ys) acc.add(reduced_integrand(y, yp, tau, shape));
    }
    return acc.value();
  });

  CompensatedSum total;
  for (double v : slabs) total.add(v);
  return total.value() * hy * hy * ht;
}

ConstantEstimate i_a_reduced3d(const ShapeParam& shape, QuadratureSpec grid,
                               unsigned workers) {
  shape.require_interior("i_a_reduced3d");
  if (grid.cells < 2 || grid.refined_cells <= grid.cells) {
    throw std::invalid_argument("i_a_reduced3d: need 2 <= cells < refined_cells");
  }
  ConstantEstimate est;
  est.method = IntegralMethod::reduced3d;
  est.a = shape.a();
  est.budget = grid.refined_cells;
  est.coarse_value = reduced3d_midpoint(shape, grid.cells / 2, workers);
  est.medium_value = reduced3d_midpoint(shape, grid.cells, workers);
  est.value = reduced3d_midpoint(shape, grid.refined_cells, workers);
  est.std_error = std::abs(est.value - est.medium_value);
  est.converged = est.std_error < std::abs(est.medium_value - est.coarse_value) ||
                  est.std_error == 0.0;
  return est;
}

double LimitLaw::survival(double t) const {
  if (!(t >= 0.0)) throw std::invalid_argument("LimitLaw::survival: t must be >= 0");
  return std::exp(-lambda_a * std::pow(t, 3.5));
}

double LimitLaw::quantile_survival(double p) const {
  if (!(p > 0.0 && p <= 1.0)) {
    throw std::invalid_argument("LimitLaw::quantile_survival: p must lie in (0, 1]");
  }
  return std::pow(-std::log(p) / lambda_a, 2.0 / 7.0);
}

double LimitLaw::t_for_mean(double target_mean) const {
  if (!(target_mean >= 0.0)) {
    throw std::invalid_argument("LimitLaw::t_for_mean: target must be >= 0");
  }
  return std::pow(target_mean / lambda_a, 2.0 / 7.0);
}

LimitLaw lambda_a(double i_a, double a) {
  if (!(i_a > 0.0)) throw std::invalid_argument("lambda_a: I_a must be positive");
  return {9.0 * i_a / (64.0 * std::numbers::pi), a};
}

double weibull_survival(double t, const LimitLaw& law) { return law.survival(t); }

}  // namespace diamlaw
