#ifndef DIAMLAW_TOLERANCES_HPP
#define DIAMLAW_TOLERANCES_HPP

// Finite-n acceptance tolerances.  The limit theorems carry no rates, so
// these are engineering calibrations, not consequences of the theory.

namespace diamlaw {

struct AcceptanceTolerances {
  // samplers
  double acceptance_rate = 0.002;
  double second_moment = 0.002;
  double sampler_ks = 0.002;

  // constants: |mc - quadrature| <= sigmas * sqrt(se_mc^2 + se_quad^2)
  double constant_sigmas = 3.0;

  // two-point tail
  double tail_slope = 3.5;
  double tail_slope_tol = 0.15;
  double tail_level_rel = 0.15;

  // overlap
  double overlap_slope_min = 5.0;
  double overlap_slope_max = 6.0;

  // Poisson approximation at lambda(t) = 1
  double poisson_mean_rel = 0.10;
  double poisson_dispersion_min = 0.85;
  double poisson_dispersion_max = 1.15;
  double poisson_zero_abs = 0.03;

  // limit law
  double limit_ks = 0.08;
  double ks_coherence = 0.02;

  // exponents
  double exponent_tol = 0.05;

  // Chen-Stein spread over one decade of n
  double chen_stein_spread = 2.0;
};

}  // namespace diamlaw

#endif  // DIAMLAW_TOLERANCES_HPP
