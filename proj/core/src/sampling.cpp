#include "diamlaw/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace diamlaw {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_e_sampler_shape(const ShapeParam& shape, const char* what) {
  if (!(shape.a() > 0.0)) {
    throw std::invalid_argument(std::string(what) +
                                ": a = 0 has zero volume; use the disk or circle diagnostic");
  }
}

}  // namespace

std::string_view to_string(SampleMethod m) noexcept {
  switch (m) {
    case SampleMethod::parameter: return "parameter";
    case SampleMethod::rejection: return "rejection";
    case SampleMethod::ball_scaling: return "ball-scaling";
    case SampleMethod::circle_diagnostic: return "circle-diagnostic";
    case SampleMethod::disk_diagnostic: return "disk-diagnostic";
  }
  return "unknown";
}

SampleMethod sample_method_from_string(std::string_view name) {
  for (auto m : {SampleMethod::parameter, SampleMethod::rejection,
                 SampleMethod::ball_scaling, SampleMethod::circle_diagnostic,
                 SampleMethod::disk_diagnostic}) {
    if (to_string(m) == name) return m;
  }
  throw std::invalid_argument("unknown sampling method '" + std::string(name) + "'");
}

EquatorialCoords draw_parameter_coords(Philox& rng) noexcept {
  EquatorialCoords c;
  c.theta = kTwoPi * rng.uniform();
  const double u = rng.uniform();
  const double cube_root = std::cbrt(u);
  c.delta = cube_root * cube_root;
  c.w = std::sqrt(c.delta) * (2.0 * rng.uniform() - 1.0);
  return c;
}

Point3 draw_parameter(Philox& rng, const ShapeParam& shape) noexcept {
  const EquatorialCoords c = draw_parameter_coords(rng);
  const double r = std::sqrt(1.0 - c.delta);
  return {r * std::cos(c.theta), r * std::sin(c.theta), shape.a() * c.w};
}

Point3 draw_rejection(Philox& rng, const ShapeParam& shape,
                      std::uint64_t& proposals) noexcept {
  for (;;) {
    ++proposals;
    const double x = 2.0 * rng.uniform() - 1.0;
    const double y = 2.0 * rng.uniform() - 1.0;
    const double z = 2.0 * rng.uniform() - 1.0;
    if (x * x + y * y + z * z <= 1.0) return {x, y, shape.a() * z};
  }
}

Point3 draw_ball_scaling(Philox& rng, const ShapeParam& shape) noexcept {
  // Archimedes: the height of a uniform direction is uniform on [-1, 1].
  const double z = 2.0 * rng.uniform() - 1.0;
  const double phi = kTwoPi * rng.uniform();
  const double radius = std::cbrt(rng.uniform());
  const double planar = radius * std::sqrt(std::max(0.0, 1.0 - z * z));
  return {planar * std::cos(phi), planar * std::sin(phi), shape.a() * radius * z};
}

Point3 draw_circle(Philox& rng) noexcept {
  const double t = kTwoPi * rng.uniform();
  return {std::cos(t), std::sin(t), 0.0};
}

Point3 draw_disk(Philox& rng) noexcept {
  const double t = kTwoPi * rng.uniform();
  const double r = std::sqrt(rng.uniform());
  return {r * std::cos(t), r * std::sin(t), 0.0};
}

std::uint64_t fill_points(Philox& rng, SampleMethod method, const ShapeParam& shape,
                          std::size_t n, std::vector<Point3>& out) {
  out.resize(n);
  std::uint64_t proposals = 0;
  switch (method) {
    case SampleMethod::parameter:
      require_e_sampler_shape(shape, "sample_parameter");
      for (auto& p : out) p = draw_parameter(rng, shape);
      proposals = n;
      break;
    case SampleMethod::rejection:
      require_e_sampler_shape(shape, "sample_rejection");
      for (auto& p : out) p = draw_rejection(rng, shape, proposals);
      break;
    case SampleMethod::ball_scaling:
      require_e_sampler_shape(shape, "sample_ball_scaling");
      for (auto& p : out) p = draw_ball_scaling(rng, shape);
      proposals = n;
      break;
    case SampleMethod::circle_diagnostic:
      for (auto& p : out) p = draw_circle(rng);
      proposals = n;
      break;
    case SampleMethod::disk_diagnostic:
      for (auto& p : out) p = draw_disk(rng);
      proposals = n;
      break;
  }
  return proposals;
}

SampleBatch sample(SampleMethod method, RngStream stream, std::size_t n,
                   const ShapeParam& shape) {
  SampleBatch batch;
  batch.method = method;
  batch.stream = stream;
  const bool flat = method == SampleMethod::circle_diagnostic ||
                    method == SampleMethod::disk_diagnostic;
  batch.shape = flat ? ShapeParam(0.0) : shape;
  Philox rng(stream);
  batch.proposals = fill_points(rng, method, batch.shape, n, batch.points);
  return batch;
}

SampleBatch sample_parameter(RngStream stream, std::size_t n, const ShapeParam& shape) {
  return sample(SampleMethod::parameter, stream, n, shape);
}

SampleBatch sample_rejection(RngStream stream, std::size_t n, const ShapeParam& shape) {
  return sample(SampleMethod::rejection, stream, n, shape);
}

SampleBatch sample_ball_scaling(RngStream stream, std::size_t n, const ShapeParam& shape) {
  return sample(SampleMethod::ball_scaling, stream, n, shape);
}

SampleBatch sample_circle_diagnostic(RngStream stream, std::size_t n) {
  return sample(SampleMethod::circle_diagnostic, stream, n, ShapeParam(0.0));
}

SampleBatch sample_disk_diagnostic(RngStream stream, std::size_t n) {
  return sample(SampleMethod::disk_diagnostic, stream, n, ShapeParam(0.0));
}

LocalizedPairSampler::LocalizedPairSampler(double eps, const ShapeParam& shape)
    : shape_(shape), eps_(eps) {
  shape.require_interior("LocalizedPairSampler");
  if (!(eps > 0.0)) {
    throw std::invalid_argument("LocalizedPairSampler: eps must be positive");
  }
  max_defect_ = max_radial_defect(eps, shape);
  max_gap_ = max_antipodal_gap(eps, max_defect_);
  anchor_mass_ = max_defect_ * std::sqrt(max_defect_);
  partner_mass_ = anchor_mass_ * (max_gap_ / std::numbers::pi);
}

EquatorialCoords LocalizedPairSampler::draw_defect_and_height(Philox& rng,
                                                              double theta) const noexcept {
  // Conditional on Delta <= D the law of Delta / D is again U^{2/3}.
  EquatorialCoords c;
  c.theta = theta;
  const double cube_root = std::cbrt(rng.uniform());
  c.delta = max_defect_ * cube_root * cube_root;
  c.w = std::sqrt(c.delta) * (2.0 * rng.uniform() - 1.0);
  return c;
}

EquatorialCoords LocalizedPairSampler::draw_anchor(Philox& rng) const noexcept {
  const double theta = kTwoPi * rng.uniform();
  return draw_defect_and_height(rng, theta);
}

EquatorialCoords LocalizedPairSampler::draw_partner(
    Philox& rng, const EquatorialCoords& anchor) const noexcept {
  const double psi = max_gap_ * (2.0 * rng.uniform() - 1.0);
  return draw_defect_and_height(rng, anchor.theta + std::numbers::pi + psi);
}

}  // namespace diamlaw
