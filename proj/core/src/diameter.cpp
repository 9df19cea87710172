#include "diamlaw/diameter.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace diamlaw {

namespace {

// Absolute slack on squared distances when comparing a pair bound against
// the running threshold.  Covers rounding in the extracted defects and the
// kContainSlack tolerance on membership.
constexpr double kBoundSlack = 1e-9;

// Number of lowest-key points brute-forced up front to seed the threshold.
constexpr std::size_t kSeedSize = 32;

constexpr std::size_t kNoIndex = std::numeric_limits<std::size_t>::max();

struct Candidate {
  double key = 0.0;  // sweep order; the pair bound is nonincreasing in key
  double r = 0.0;    // per-point term of the pair bound
  std::size_t index = 0;
  bool seed = false;
};

// |p|^2 <= 1 - (1 - a^2) delta, so |p - q|^2 <= 2|p|^2 + 2|q|^2 gives
// 4 - 2(1 - a^2)(delta_i + delta_j).  This dominates pair_upper_bound^2 and,
// unlike it, is nonincreasing in both defects.
struct DefectBound {
  double operator()(const Candidate& x, const Candidate& y) const noexcept {
    return 2.0 * (x.r + y.r);
  }
};

// |p - q| <= |p| + |q|.
struct RadialBound {
  double operator()(const Candidate& x, const Candidate& y) const noexcept {
    const double r = x.r + y.r;
    return r * r;
  }
};

bool key_less(const Candidate& x, const Candidate& y) noexcept {
  return x.key < y.key || (x.key == y.key && x.index < y.index);
}

struct BestPair {
  double d2 = -1.0;
  std::size_t i = kNoIndex;
  std::size_t j = kNoIndex;

  void offer(std::size_t lo, std::size_t hi, double dist2) noexcept {
    if (dist2 > d2 || (dist2 == d2 && (lo < i || (lo == i && hi < j)))) {
      d2 = dist2;
      i = lo;
      j = hi;
    }
  }
};

void require_pairs(std::span<const Point3> points, const char* what) {
  if (points.size() < 2) {
    throw std::invalid_argument(std::string(what) + ": needs at least two points");
  }
}

// Visits every pair whose bound can still reach the running threshold.
// `visit(i, j)` receives original indices; `threshold()` returns the squared
// distance a pair must reach to matter and may only grow over time.
template <class Bound, class Visit, class Threshold>
std::uint64_t sweep(std::vector<Candidate>& cands, Bound bound, Visit&& visit,
                    Threshold&& threshold, const SweepObserver* observer) {
  const auto examined = [&](std::size_t i, std::size_t j) {
    if (observer && observer->examined) observer->examined(i, j);
  };
  const auto skipped = [&](const Candidate& x, const Candidate& y, double thr) {
    if (observer && observer->skipped) observer->skipped(x.index, y.index, bound(x, y), thr);
  };

  const std::size_t n = cands.size();
  const std::size_t m = std::min(n, kSeedSize);
  if (m < n) {
    std::nth_element(cands.begin(), cands.begin() + static_cast<std::ptrdiff_t>(m),
                     cands.end(), key_less);
  }
  std::sort(cands.begin(), cands.begin() + static_cast<std::ptrdiff_t>(m), key_less);

  std::uint64_t pairs = 0;
  for (std::size_t a = 0; a < m; ++a) {
    cands[a].seed = true;
    for (std::size_t b = 0; b < a; ++b) {
      visit(cands[b].index, cands[a].index);
      examined(cands[b].index, cands[a].index);
      ++pairs;
    }
  }

  // No pair involving x can beat bound(x, head), head having the smallest key.
  const Candidate head = cands.front();
  std::vector<Candidate> kept;
  {
    const double thr = threshold();
    kept.reserve(m);
    for (const auto& c : cands) {
      if (bound(c, head) + kBoundSlack >= thr) {
        kept.push_back(c);
      } else if (observer && observer->skipped) {
        for (const auto& other : cands) {
          if (other.index != c.index) skipped(c, other, thr);
        }
      }
    }
  }
  std::sort(kept.begin(), kept.end(), key_less);

  const std::size_t k = kept.size();
  for (std::size_t a = 0; a < k; ++a) {
    double thr = threshold();
    if (a + 1 < k && bound(kept[a], kept[a + 1]) + kBoundSlack < thr) {
      for (std::size_t a2i = a; a2i < k; ++a2i) {
        for (std::size_t b = a2i + 1; b < k; ++b) skipped(kept[a2i], kept[b], thr);
      }
      break;
    }
    for (std::size_t b = a + 1; b < k; ++b) {
      if (kept[a].seed && kept[b].seed) continue;
      thr = threshold();
      if (bound(kept[a], kept[b]) + kBoundSlack < thr) {
        for (std::size_t c = b; c < k; ++c) skipped(kept[a], kept[c], thr);
        break;
      }
      visit(kept[a].index, kept[b].index);
      examined(kept[a].index, kept[b].index);
      ++pairs;
    }
  }
  return pairs;
}

std::vector<Candidate> defect_candidates(std::span<const Point3> points,
                                         const ShapeParam& shape, const char* what) {
  if (!(shape.a() < 1.0)) {
    throw std::invalid_argument(std::string(what) +
                                ": the defect bound needs a < 1; use diameter_radial");
  }
  const double a2 = shape.a() * shape.a();
  std::vector<Candidate> cands(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Point3& p = points[i];
    if (!contains(p, shape)) {
      throw std::invalid_argument(std::string(what) + ": point " + std::to_string(i) +
                                  " lies outside the ellipsoid");
    }
    const double delta = std::clamp(1.0 - (p.x1 * p.x1 + p.x2 * p.x2), 0.0, 1.0);
    cands[i] = {delta, 1.0 - (1.0 - a2) * delta, i, false};
  }
  return cands;
}

DiameterResult finish(const BestPair& best, std::uint64_t pairs, std::size_t n) {
  DiameterResult r;
  r.m_n_squared = best.d2;
  r.m_n = std::sqrt(best.d2);
  r.i = best.i;
  r.j = best.j;
  r.pairs_examined = pairs;
  r.n = n;
  return r;
}

double count_threshold_squared(double t, double scale) {
  // Pairs with scale * deficit <= t have distance >= 2 - t / scale; the
  // relative widening absorbs rounding in that rearrangement.
  const double reach = 2.0 - (t / scale) * (1.0 + 1e-12);
  return reach > 0.0 ? reach * reach : 0.0;
}

void require_nonnegative(std::span<const double> t_grid) {
  for (double t : t_grid) {
    if (!(t >= 0.0)) throw std::invalid_argument("near-diametral count: t must be >= 0");
  }
}

}  // namespace

double near_diametral_scale(std::size_t n) noexcept {
  return std::pow(static_cast<double>(n), 4.0 / 7.0);
}

DiameterResult diameter_bruteforce(std::span<const Point3> points) {
  require_pairs(points, "diameter_bruteforce");
  BestPair best;
  const std::size_t n = points.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d2 = squared_distance(points[i], points[j]);
      if (d2 > best.d2) {
        best.d2 = d2;
        best.i = i;
        best.j = j;
      }
    }
  }
  return finish(best, static_cast<std::uint64_t>(n) * (n - 1) / 2, n);
}

DiameterResult diameter_pruned(std::span<const Point3> points, const ShapeParam& shape,
                               const SweepObserver* observer) {
  require_pairs(points, "diameter_pruned");
  auto cands = defect_candidates(points, shape, "diameter_pruned");
  BestPair best;
  const auto visit = [&](std::size_t i, std::size_t j) {
    const std::size_t lo = std::min(i, j);
    const std::size_t hi = std::max(i, j);
    best.offer(lo, hi, squared_distance(points[lo], points[hi]));
  };
  const auto pairs = sweep(cands, DefectBound{}, visit,
                           [&] { return best.d2; }, observer);
  return finish(best, pairs, points.size());
}

DiameterResult diameter_radial(std::span<const Point3> points,
                               const SweepObserver* observer) {
  require_pairs(points, "diameter_radial");
  std::vector<Candidate> cands(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Point3& p = points[i];
    const double norm = std::sqrt(p.x1 * p.x1 + p.x2 * p.x2 + p.x3 * p.x3);
    cands[i] = {-norm, norm, i, false};
  }
  BestPair best;
  const auto visit = [&](std::size_t i, std::size_t j) {
    const std::size_t lo = std::min(i, j);
    const std::size_t hi = std::max(i, j);
    best.offer(lo, hi, squared_distance(points[lo], points[hi]));
  };
  const auto pairs = sweep(cands, RadialBound{}, visit, [&] { return best.d2; }, observer);
  return finish(best, pairs, points.size());
}

DiameterResult diameter_exact(std::span<const Point3> points, const ShapeParam& shape) {
  return shape.a() < 1.0 ? diameter_pruned(points, shape) : diameter_radial(points);
}

NearDiametralCount count_near_diametral(std::span<const Point3> points, double t,
                                        const ShapeParam& shape,
                                        const SweepObserver* observer) {
  require_pairs(points, "count_near_diametral");
  const double ts[] = {t};
  require_nonnegative(ts);
  auto cands = defect_candidates(points, shape, "count_near_diametral");
  const double scale = near_diametral_scale(points.size());
  const double thr = count_threshold_squared(t, scale);

  NearDiametralCount out;
  out.t = t;
  out.eps = t / scale;
  const auto visit = [&](std::size_t i, std::size_t j) {
    const std::size_t lo = std::min(i, j);
    const std::size_t hi = std::max(i, j);
    const double d2 = squared_distance(points[lo], points[hi]);
    if (scale * deficit_from_squared(d2) <= t) {
      ++out.count;
      out.pairs.emplace_back(lo, hi);
    }
  };
  out.pairs_examined =
      sweep(cands, DefectBound{}, visit, [thr] { return thr; }, observer);
  std::sort(out.pairs.begin(), out.pairs.end());
  return out;
}

NearDiametralCount count_near_diametral_bruteforce(std::span<const Point3> points,
                                                   double t) {
  require_pairs(points, "count_near_diametral_bruteforce");
  const double ts[] = {t};
  require_nonnegative(ts);
  const std::size_t n = points.size();
  const double scale = near_diametral_scale(n);
  NearDiametralCount out;
  out.t = t;
  out.eps = t / scale;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (scale * deficit(points[i], points[j]) <= t) {
        ++out.count;
        out.pairs.emplace_back(i, j);
      }
    }
  }
  out.pairs_examined = static_cast<std::uint64_t>(n) * (n - 1) / 2;
  return out;
}

DiameterSweep diameter_with_counts(std::span<const Point3> points, const ShapeParam& shape,
                                   std::span<const double> t_grid) {
  require_pairs(points, "diameter_with_counts");
  require_nonnegative(t_grid);
  auto cands = defect_candidates(points, shape, "diameter_with_counts");

  DiameterSweep out;
  out.scale = near_diametral_scale(points.size());
  out.counts.assign(t_grid.size(), 0);
  const double t_max = t_grid.empty() ? 0.0 : *std::max_element(t_grid.begin(), t_grid.end());
  const double count_thr = t_grid.empty() ? std::numeric_limits<double>::infinity()
                                          : count_threshold_squared(t_max, out.scale);

  BestPair best;
  const auto visit = [&](std::size_t i, std::size_t j) {
    const std::size_t lo = std::min(i, j);
    const std::size_t hi = std::max(i, j);
    const double d2 = squared_distance(points[lo], points[hi]);
    best.offer(lo, hi, d2);
    const double rescaled = out.scale * deficit_from_squared(d2);
    if (rescaled <= t_max) {
      for (std::size_t k = 0; k < t_grid.size(); ++k) {
        if (rescaled <= t_grid[k]) ++out.counts[k];
      }
    }
  };
  const auto pairs = sweep(cands, DefectBound{}, visit,
                           [&] { return std::min(best.d2, count_thr); }, nullptr);
  out.diameter = finish(best, pairs, points.size());
  return out;
}

}  // namespace diamlaw
