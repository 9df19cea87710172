#ifndef DIAMLAW_CONSTANTS_HPP
#define DIAMLAW_CONSTANTS_HPP

#include <cstddef>
#include <cstdint>
#include <string_view>

#include "diamlaw/geometry.hpp"
#include "diamlaw/rng.hpp"

// The limit-law constant
//
//   I_a = vol{ (s,s',y,y',tau) in A : G(s,s',y,y',tau) <= 1 },
//   Lambda_a = 9 I_a / (64 pi),   K_a = 2 Lambda_a,
//
// evaluated two independent ways: hit-or-miss Monte Carlo in all five
// variables, and a deterministic 3-d quadrature after integrating s, s' out
// in closed form.

namespace diamlaw {

enum class IntegralMethod { mc5d, reduced3d };

std::string_view to_string(IntegralMethod m) noexcept;

/// Explicit box containing { G <= 1 } within A.
///
/// From (y - y')^2 <= 2(y^2 + y'^2) <= 2(s + s') one gets
/// G >= (1 - a^2)(s + s') / 2, hence s, s' <= S = 2 / (1 - a^2), |y|, |y'| <= sqrt(S),
/// and tau^2 <= 4 + a^2 (y - y')^2 <= 4 + 4 a^2 S.
struct SublevelBox {
  double s_max = 0.0;
  double y_max = 0.0;
  double tau_max = 0.0;

  double volume() const noexcept;
};

SublevelBox sublevel_box(const ShapeParam& shape);

struct ConstantEstimate {
  double value = 0.0;
  double std_error = 0.0;  // MC standard error, or |fine - medium| for quadrature
  IntegralMethod method = IntegralMethod::mc5d;
  double a = 0.0;
  std::uint64_t budget = 0;  // samples, or cells per axis of the finest grid

  // mc5d
  std::uint64_t hits = 0;
  std::uint64_t shell_hits = 0;  // hits within 1e-9 of the box boundary
  std::uint64_t master_seed = 0;

  // reduced3d: grids with cells / 2, cells and refined_cells per axis
  double coarse_value = 0.0;
  double medium_value = 0.0;
  bool converged = true;  // |fine - medium| < |medium - coarse|
};

/// Hit-or-miss estimate of I_a from the box above.  Requires 0 < a <= 0.95.
/// Samples are split in fixed chunks of 2^20, chunk c drawing from
/// stream (master_seed, tagged_stream(constant_mc, c)), so the result does
/// not depend on `workers`.
ConstantEstimate i_a_mc5d(const ShapeParam& shape, std::uint64_t n_samples,
                          std::uint64_t master_seed, unsigned workers = 1);

struct QuadratureSpec {
  std::size_t cells = 400;          // medium grid, per axis
  std::size_t refined_cells = 800;  // fine grid, per axis
};

/// Midpoint-rule value of the reduced integrand over the box.  The
/// estimate is the fine grid; std_error is |fine - medium|.  A coarse grid
/// with cells / 2 per axis decides `converged`.
ConstantEstimate i_a_reduced3d(const ShapeParam& shape, QuadratureSpec grid = {},
                               unsigned workers = 1);

/// (1/2) ((2c - y^2 - y'^2)_+)^2 with c = 1 - tau^2/4 + (a^2/4)(y - y')^2,
/// the (s, s') area of { s >= y^2, s' >= y'^2, G <= 1 }.
double reduced_integrand(double y, double yp, double tau, const ShapeParam& shape) noexcept;

/// Midpoint rule on an N^3 grid over the sublevel box.  Summation is by
/// tau slab with Neumaier compensation, slabs combined in index order.
double reduced3d_midpoint(const ShapeParam& shape, std::size_t cells, unsigned workers = 1);

/// Weibull-type limit law P(Z > t) = exp(-Lambda t^{7/2}).
struct LimitLaw {
  double lambda_a = 0.0;
  double a = 0.0;

  double k_a() const noexcept { return 2.0 * lambda_a; }
  double survival(double t) const;
  double cdf(double t) const { return 1.0 - survival(t); }
  /// Solves survival(t) = p.
  double quantile_survival(double p) const;
  /// t with Lambda t^{7/2} = target_mean.
  double t_for_mean(double target_mean) const;
};

/// Lambda = 9 i_a / (64 pi).  Throws std::invalid_argument for i_a <= 0.
LimitLaw lambda_a(double i_a, double a = 0.0);

double weibull_survival(double t, const LimitLaw& law);

}  // namespace diamlaw

#endif  // DIAMLAW_CONSTANTS_HPP
