#ifndef DIAMLAW_GEOMETRY_HPP
#define DIAMLAW_GEOMETRY_HPP

#include <cstddef>

// Geometry of the rotational ellipsoid
//
//   E = { x : x1^2 + x2^2 + x3^2 / a^2 <= 1 },
//
// whose diameter 2 is attained by every antipodal pair on the equatorial
// circle x3 = 0.  Points are also described in equatorial coordinates
// (theta, delta, w):
//
//   x(theta, delta, w) = ( sqrt(1-delta) cos theta,
//                          sqrt(1-delta) sin theta,
//                          a w ),           w^2 <= delta.
//
// delta is the radial defect from the equator and w the rescaled height.

namespace diamlaw {

/// Slack allowed on the quadratic form when testing membership in E.
inline constexpr double kContainSlack = 1e-12;

/// Vertical semi-axis ratio a of E.
///
/// Values in [0, 1] are representable.  The limit-law theory needs
/// 0 < a < 1; the end points are the degenerate diagnostic cases (the flat
/// disk at a = 0, the unit ball at a = 1).
class ShapeParam {
 public:
  explicit ShapeParam(double a);

  double a() const noexcept { return a_; }
  bool degenerate() const noexcept { return a_ == 0.0 || a_ == 1.0; }

  /// Throws std::invalid_argument unless 0 < a < 1.
  void require_interior(const char* what) const;

  friend bool operator==(const ShapeParam&, const ShapeParam&) = default;

 private:
  double a_;
};

struct Point3 {
  double x1 = 0.0;
  double x2 = 0.0;
  double x3 = 0.0;

  friend bool operator==(const Point3&, const Point3&) = default;
};

struct EquatorialCoords {
  double theta = 0.0;  // radians, [0, 2pi) on output of extract()
  double delta = 0.0;  // radial defect, [0, 1]
  double w = 0.0;      // x3 / a, w^2 <= delta
};

/// Rescaled local coordinates (s, s', y, y', tau) around an antipodal pair.
struct LocalCoords {
  double s = 0.0;
  double sp = 0.0;
  double y = 0.0;
  double yp = 0.0;
  double tau = 0.0;

  /// Membership in A = { s, s' >= 0, y^2 <= s, y'^2 <= s' }.
  bool in_region() const noexcept;
};

/// Deficit 2 - |X_i - X_j| of a stored index pair.
struct PairDeficit {
  double value = 2.0;
  std::size_t i = 0;
  std::size_t j = 0;
};

Point3 embed(const EquatorialCoords& c, const ShapeParam& shape);

/// Inverse of embed().  theta is normalised to [0, 2pi) and set to 0 on the
/// vertical axis.  Throws std::domain_error for points outside E.
EquatorialCoords extract(const Point3& p, const ShapeParam& shape);

bool contains(const Point3& p, const ShapeParam& shape) noexcept;

double squared_distance(const Point3& p, const Point3& q) noexcept;

/// 2 - sqrt(d2), evaluated as (4 - d2) / (2 + sqrt(d2)).  The subtraction
/// 4 - d2 is exact for d2 in [2, 8], so nearly diametral pairs lose no
/// precision.  Monotone nonincreasing in d2.
double deficit_from_squared(double d2) noexcept;

double deficit(const Point3& p, const Point3& q) noexcept;

/// The unique psi in [-pi, pi) with theta_p = theta + pi + psi (mod 2pi).
double antipodal_gap(double theta, double theta_p) noexcept;

/// G(s,s',y,y',tau) = (s+s')/2 + tau^2/4 - (a^2/4)(y-y')^2.
double local_G(const LocalCoords& c, const ShapeParam& shape) noexcept;

/// Exact deficit of the pair
///   x(theta, eps s, sqrt(eps) y),  x(theta + pi + sqrt(eps) tau, eps s', sqrt(eps) y')
/// divided by eps * G(direction).  Tends to 1 as eps -> 0.
/// Throws std::invalid_argument when G(direction) == 0 or eps <= 0.
double expansion_ratio(const LocalCoords& direction, double theta, double eps,
                       const ShapeParam& shape);

/// True iff delta + delta' <= C eps, psi^2 <= C eps and w^2 + w'^2 <= C eps.
/// Only meaningful for nearly diametral pairs: throws std::invalid_argument
/// when deficit(p, q) > eps.
bool localization_check(const Point3& p, const Point3& q, double eps, double C,
                        const ShapeParam& shape);

/// Largest distance between any two points of E with radial defects
/// delta_i and delta_j:
///   sqrt( (sqrt(1-di) + sqrt(1-dj))^2 + a^2 (sqrt(di) + sqrt(dj))^2 ).
/// Not monotone off the diagonal: for di > 0 it increases in dj near 0,
/// since a partner slightly off the equator can use the vertical extent.
/// It is bounded by sqrt(4 - 2(1 - a^2)(di + dj)), with equality at di = dj.
double pair_upper_bound(double delta_i, double delta_j, const ShapeParam& shape);
double pair_upper_bound_squared(double delta_i, double delta_j,
                                const ShapeParam& shape) noexcept;

/// max over delta' in [0, 1] of pair_upper_bound(delta, delta'): the farthest
/// any point of E can be from a point with radial defect delta.  Strictly
/// decreasing in delta when a < 1.  Needs a < 1.
double farthest_partner_bound(double delta, const ShapeParam& shape);

/// Largest radial defect D such that some partner point can still be within
/// deficit eps, i.e. the root of farthest_partner_bound(D) = 2 - eps (1 when
/// the whole ellipsoid qualifies).  Needs a < 1.
double max_radial_defect(double eps, const ShapeParam& shape);

/// Largest |psi| compatible with deficit <= eps when both radial defects are
/// at most max_defect.  Follows from
///   |x - y|^2 <= 4 - 2 (1 - D) (1 - cos psi).
double max_antipodal_gap(double eps, double max_defect);

}  // namespace diamlaw

#endif  // DIAMLAW_GEOMETRY_HPP
