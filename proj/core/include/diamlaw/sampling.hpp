#ifndef DIAMLAW_SAMPLING_HPP
#define DIAMLAW_SAMPLING_HPP

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "diamlaw/geometry.hpp"
#include "diamlaw/rng.hpp"

namespace diamlaw {

enum class SampleMethod {
  parameter,          // (theta, delta, w) uniform on the parameter domain
  rejection,          // accept/reject from [-1,1]^2 x [-a,a]
  ball_scaling,       // uniform unit ball, x3 scaled by a
  circle_diagnostic,  // (cos t, sin t, 0)
  disk_diagnostic,    // uniform on the flat unit disk, the a = 0 support
};

std::string_view to_string(SampleMethod m) noexcept;
/// Throws std::invalid_argument for unknown names.
SampleMethod sample_method_from_string(std::string_view name);

struct SampleBatch {
  std::vector<Point3> points;
  ShapeParam shape{0.5};
  SampleMethod method = SampleMethod::parameter;
  RngStream stream;
  std::uint64_t proposals = 0;  // draws consumed by rejection; n otherwise
};

// Single-point draws.  The a = 0 and a = 1 cases are accepted where they make
// sense: every E-sampler allows a = 1 (the unit ball).

/// Delta = U^{2/3} has density (3/2) sqrt(delta), the delta-marginal of the
/// uniform law on { w^2 <= delta }; W is then uniform on [-sqrt(Delta), sqrt(Delta)].
EquatorialCoords draw_parameter_coords(Philox& rng) noexcept;
Point3 draw_parameter(Philox& rng, const ShapeParam& shape) noexcept;
/// Returns the accepted point; `proposals` is incremented per box draw.
Point3 draw_rejection(Philox& rng, const ShapeParam& shape,
                      std::uint64_t& proposals) noexcept;
Point3 draw_ball_scaling(Philox& rng, const ShapeParam& shape) noexcept;
Point3 draw_circle(Philox& rng) noexcept;
Point3 draw_disk(Philox& rng) noexcept;

/// Fills `out` with n points drawn by `method`.  Returns the proposal count.
std::uint64_t fill_points(Philox& rng, SampleMethod method, const ShapeParam& shape,
                          std::size_t n, std::vector<Point3>& out);

SampleBatch sample_parameter(RngStream stream, std::size_t n, const ShapeParam& shape);
SampleBatch sample_rejection(RngStream stream, std::size_t n, const ShapeParam& shape);
SampleBatch sample_ball_scaling(RngStream stream, std::size_t n, const ShapeParam& shape);
SampleBatch sample_circle_diagnostic(RngStream stream, std::size_t n);
SampleBatch sample_disk_diagnostic(RngStream stream, std::size_t n);

/// Dispatches on method; the shape is ignored by the two diagnostic methods.
SampleBatch sample(SampleMethod method, RngStream stream, std::size_t n,
                   const ShapeParam& shape);

/// Exact conditional sampler for nearly diametral pairs.
///
/// Any pair with deficit <= eps has both radial defects <= D = max_radial_defect(eps)
/// and antipodal gap |psi| <= Psi = max_antipodal_gap(eps, D).  Because
/// (theta, delta, w) is uniform on its domain, the pair law restricted to this
/// product window is again uniform, with total mass
///   anchor_mass() * partner_mass() = D^{3/2} * D^{3/2} * Psi / pi.
/// Hit frequencies inside the window times that mass are unbiased estimates
/// of P(deficit <= eps) and related functionals.
class LocalizedPairSampler {
 public:
  LocalizedPairSampler(double eps, const ShapeParam& shape);

  double eps() const noexcept { return eps_; }
  double max_defect() const noexcept { return max_defect_; }
  double max_gap() const noexcept { return max_gap_; }

  /// P(Delta <= D).
  double anchor_mass() const noexcept { return anchor_mass_; }
  /// P(Delta' <= D, |psi| <= Psi) for any fixed anchor angle.
  double partner_mass() const noexcept { return partner_mass_; }
  double window_mass() const noexcept { return anchor_mass_ * partner_mass_; }

  EquatorialCoords draw_anchor(Philox& rng) const noexcept;
  EquatorialCoords draw_partner(Philox& rng, const EquatorialCoords& anchor) const noexcept;

  const ShapeParam& shape() const noexcept { return shape_; }

 private:
  EquatorialCoords draw_defect_and_height(Philox& rng, double theta) const noexcept;

  ShapeParam shape_;
  double eps_;
  double max_defect_;
  double max_gap_;
  double anchor_mass_;
  double partner_mass_;
};

}  // namespace diamlaw

#endif  // DIAMLAW_SAMPLING_HPP
