#ifndef DIAMLAW_DIAMETER_HPP
#define DIAMLAW_DIAMETER_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "diamlaw/geometry.hpp"

namespace diamlaw {

/// Largest interpoint distance M_n of a point set and the pair attaining it.
/// Ties are broken towards the lexicographically smallest (i, j), i < j.
struct DiameterResult {
  double m_n = 0.0;
  double m_n_squared = 0.0;
  std::size_t i = 0;
  std::size_t j = 0;
  std::uint64_t pairs_examined = 0;
  std::size_t n = 0;

  /// 2 - m_n, via deficit_from_squared().
  double deficit() const noexcept { return deficit_from_squared(m_n_squared); }
};

/// N_n(t) = #{ i < j : n^{4/7} (2 - |X_i - X_j|) <= t }.
///
/// The predicate is evaluated on the rescaled deficit so that
/// count == 0  <=>  rescaled_deficit(M_n) > t  holds exactly in floating
/// point; eps = t n^{-4/7} is reported for reference.
struct NearDiametralCount {
  double t = 0.0;
  double eps = 0.0;
  std::uint64_t count = 0;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::uint64_t pairs_examined = 0;
};

/// Hooks for auditing the pruned sweep on small inputs.
struct SweepObserver {
  std::function<void(std::size_t i, std::size_t j)> examined;
  /// bound_squared is the sweep bound of the skipped pair (at least its
  /// pair_upper_bound^2), threshold_squared the squared distance a pair had
  /// to reach at skip time.
  std::function<void(std::size_t i, std::size_t j, double bound_squared,
                     double threshold_squared)>
      skipped;
};

/// n^{4/7}, the normalisation of the limit law for 0 < a < 1.
double near_diametral_scale(std::size_t n) noexcept;

DiameterResult diameter_bruteforce(std::span<const Point3> points);

/// Exact diameter.  Points are swept in order of radial defect with the
/// bound 4 - 2(1 - a^2)(delta_i + delta_j) on squared distances, which
/// dominates pair_upper_bound^2 and is monotone in both defects.
/// Requires a < 1 and all points in E (std::invalid_argument otherwise).
DiameterResult diameter_pruned(std::span<const Point3> points, const ShapeParam& shape,
                               const SweepObserver* observer = nullptr);

/// Exact diameter of an arbitrary point set using |p - q| <= |p| + |q|.
/// Used for the unit ball, where the defect bound is flat.
DiameterResult diameter_radial(std::span<const Point3> points,
                               const SweepObserver* observer = nullptr);

/// diameter_pruned for a < 1, diameter_radial for a = 1.
DiameterResult diameter_exact(std::span<const Point3> points, const ShapeParam& shape);

NearDiametralCount count_near_diametral(std::span<const Point3> points, double t,
                                        const ShapeParam& shape,
                                        const SweepObserver* observer = nullptr);

NearDiametralCount count_near_diametral_bruteforce(std::span<const Point3> points,
                                                   double t);

/// One sweep producing M_n and N_n(t) for every t in t_grid.
struct DiameterSweep {
  DiameterResult diameter;
  double scale = 1.0;
  std::vector<std::uint64_t> counts;  // aligned with t_grid
};

DiameterSweep diameter_with_counts(std::span<const Point3> points, const ShapeParam& shape,
                                   std::span<const double> t_grid);

}  // namespace diamlaw

#endif  // DIAMLAW_DIAMETER_HPP
