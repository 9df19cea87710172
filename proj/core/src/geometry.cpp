#include "diamlaw/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace diamlaw {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Relative widening applied to the localization window so that floating
// rounding in the bisection never cuts off an admissible pair.
constexpr double kWindowInflation = 1e-12;

}  // namespace

ShapeParam::ShapeParam(double a) : a_(a) {
  if (!(a >= 0.0 && a <= 1.0)) {
    throw std::invalid_argument("shape parameter a must lie in [0, 1], got " +
                                std::to_string(a));
  }
}

void ShapeParam::require_interior(const char* what) const {
  if (!(a_ > 0.0 && a_ < 1.0)) {
    throw std::invalid_argument(std::string(what) +
                                ": requires 0 < a < 1, got a = " +
                                std::to_string(a_));
  }
}

bool LocalCoords::in_region() const noexcept {
  return s >= 0.0 && sp >= 0.0 && y * y <= s && yp * yp <= sp;
}

Point3 embed(const EquatorialCoords& c, const ShapeParam& shape) {
  if (!(c.delta >= 0.0 && c.delta <= 1.0)) {
    throw std::invalid_argument("embed: delta outside [0, 1]");
  }
  if (c.w * c.w > c.delta + kContainSlack) {
    throw std::invalid_argument("embed: w^2 > delta, point not in E");
  }
  const double r = std::sqrt(1.0 - c.delta);
  return {r * std::cos(c.theta), r * std::sin(c.theta), shape.a() * c.w};
}

EquatorialCoords extract(const Point3& p, const ShapeParam& shape) {
  if (!contains(p, shape)) {
    throw std::domain_error("extract: point lies outside the ellipsoid");
  }
  EquatorialCoords c;
  const double planar = p.x1 * p.x1 + p.x2 * p.x2;
  c.delta = std::clamp(1.0 - planar, 0.0, 1.0);
  if (p.x1 == 0.0 && p.x2 == 0.0) {
    c.theta = 0.0;
  } else {
    c.theta = std::atan2(p.x2, p.x1);
    if (c.theta < 0.0) c.theta += kTwoPi;
    if (c.theta >= kTwoPi) c.theta -= kTwoPi;
  }
  c.w = shape.a() > 0.0 ? p.x3 / shape.a() : 0.0;
  return c;
}

bool contains(const Point3& p, const ShapeParam& shape) noexcept {
  const double planar = p.x1 * p.x1 + p.x2 * p.x2;
  const double a = shape.a();
  if (a == 0.0) {
    return p.x3 == 0.0 && planar <= 1.0 + kContainSlack;
  }
  return planar + (p.x3 * p.x3) / (a * a) <= 1.0 + kContainSlack;
}

double squared_distance(const Point3& p, const Point3& q) noexcept {
  const double d1 = p.x1 - q.x1;
  const double d2 = p.x2 - q.x2;
  const double d3 = p.x3 - q.x3;
  return d1 * d1 + d2 * d2 + d3 * d3;
}

double deficit_from_squared(double d2) noexcept {
  return (4.0 - d2) / (2.0 + std::sqrt(d2));
}

double deficit(const Point3& p, const Point3& q) noexcept {
  return deficit_from_squared(squared_distance(p, q));
}

double antipodal_gap(double theta, double theta_p) noexcept {
  const double psi = theta_p - theta - std::numbers::pi;
  double r = std::fmod(psi + std::numbers::pi, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r - std::numbers::pi;
}

double local_G(const LocalCoords& c, const ShapeParam& shape) noexcept {
  const double a = shape.a();
  const double dy = c.y - c.yp;
  return 0.5 * (c.s + c.sp) + 0.25 * c.tau * c.tau - 0.25 * a * a * dy * dy;
}

double expansion_ratio(const LocalCoords& direction, double theta, double eps,
                       const ShapeParam& shape) {
  if (!(eps > 0.0)) {
    throw std::invalid_argument("expansion_ratio: eps must be positive");
  }
  const double g = local_G(direction, shape);
  if (g == 0.0) {
    throw std::invalid_argument("expansion_ratio: G(direction) = 0");
  }
  const double root = std::sqrt(eps);
  const Point3 p = embed({theta, eps * direction.s, root * direction.y}, shape);
  const Point3 q = embed({theta + std::numbers::pi + root * direction.tau,
                          eps * direction.sp, root * direction.yp},
                         shape);
  return deficit(p, q) / (eps * g);
}

bool localization_check(const Point3& p, const Point3& q, double eps, double C,
                        const ShapeParam& shape) {
  if (deficit(p, q) > eps) {
    throw std::invalid_argument(
        "localization_check: pair deficit exceeds eps, predicate not applicable");
  }
  const EquatorialCoords cp = extract(p, shape);
  const EquatorialCoords cq = extract(q, shape);
  const double psi = antipodal_gap(cp.theta, cq.theta);
  const double bound = C * eps;
  return cp.delta + cq.delta <= bound && psi * psi <= bound &&
         cp.w * cp.w + cq.w * cq.w <= bound;
}

double pair_upper_bound_squared(double delta_i, double delta_j,
                                const ShapeParam& shape) noexcept {
  const double a = shape.a();
  const double planar = std::sqrt(1.0 - delta_i) + std::sqrt(1.0 - delta_j);
  const double vertical = std::sqrt(delta_i) + std::sqrt(delta_j);
  return planar * planar + a * a * vertical * vertical;
}

double pair_upper_bound(double delta_i, double delta_j, const ShapeParam& shape) {
  if (!(delta_i >= 0.0 && delta_i <= 1.0 && delta_j >= 0.0 && delta_j <= 1.0)) {
    throw std::invalid_argument("pair_upper_bound: defects must lie in [0, 1]");
  }
  return std::sqrt(pair_upper_bound_squared(delta_i, delta_j, shape));
}

double farthest_partner_bound(double delta, const ShapeParam& shape) {
  if (!(shape.a() < 1.0)) {
    throw std::invalid_argument("farthest_partner_bound: requires a < 1");
  }
  if (!(delta >= 0.0 && delta <= 1.0)) {
    throw std::invalid_argument("farthest_partner_bound: delta must lie in [0, 1]");
  }
  const double a2 = shape.a() * shape.a();
  const double r = std::sqrt(1.0 - delta);
  const double s = std::sqrt(delta);
  // Partner defect sin^2(phi).  The stationarity condition
  //   a^2 s = r tan(phi) + (1 - a^2) sin(phi)
  // has an increasing right side, so its root is the unique maximiser.
  const auto excess = [&](double phi) {
    return r * std::tan(phi) + (1.0 - a2) * std::sin(phi) - a2 * s;
  };
  double lo = 0.0;
  double hi = std::numbers::pi / 2;
  if (excess(hi) <= 0.0) {
    lo = hi;
  } else {
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid == lo || mid == hi) break;
      (excess(mid) < 0.0 ? lo : hi) = mid;
    }
  }
  const double phi = lo;
  const double planar = r + std::cos(phi);
  const double vertical = s + std::sin(phi);
  return std::sqrt(planar * planar + a2 * vertical * vertical);
}

double max_radial_defect(double eps, const ShapeParam& shape) {
  if (!(shape.a() < 1.0)) {
    throw std::invalid_argument("max_radial_defect: requires a < 1");
  }
  if (!(eps >= 0.0)) {
    throw std::invalid_argument("max_radial_defect: eps must be nonnegative");
  }
  const double target = 2.0 - eps;
  if (target <= 0.0 || farthest_partner_bound(1.0, shape) >= target) return 1.0;
  double lo = 0.0;
  double hi = 1.0;
  for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (farthest_partner_bound(mid, shape) >= target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return std::min(1.0, hi * (1.0 + kWindowInflation));
}

double max_antipodal_gap(double eps, double max_defect) {
  if (!(eps >= 0.0) || !(max_defect >= 0.0 && max_defect <= 1.0)) {
    throw std::invalid_argument("max_antipodal_gap: bad arguments");
  }
  if (eps >= 2.0 || max_defect >= 1.0) return std::numbers::pi;
  const double one_minus_cos = (4.0 * eps - eps * eps) / (2.0 * (1.0 - max_defect));
  if (one_minus_cos >= 2.0) return std::numbers::pi;
  // 1 - cos(psi) = 2 sin^2(psi / 2); asin keeps precision for small gaps.
  const double psi = 2.0 * std::asin(std::sqrt(0.5 * one_minus_cos));
  return std::min(std::numbers::pi, psi * (1.0 + kWindowInflation));
}

}  // namespace diamlaw
