#pragma once

// Crank-Nicolson propagator for i d_t psi + d_xx psi - V psi = 0 on the
// moving interval (0, l(t)).
//
// With sigma = x / l(t) and chi = sqrt(l) psi the equation becomes
//   d_t chi = (l'/l) (sigma d_sigma + 1/2) chi + (i / l^2) d_sigma^2 chi - i V chi
// on the fixed unit interval with Dirichlet zeros. The advection operator is
// discretized in its skew-symmetric centered form, so each step is the
// Cayley transform of a skew-Hermitian tridiagonal matrix and the discrete
// L2 norm is conserved up to round-off.

#include "mbw/core_types.hpp"
#include "mbw/families.hpp"

namespace mbw::pde {

struct PropagationConfig {
  FamilyId family;
  int n_space = 2000;  // grid points including both walls
  double dt = 1e-4;
  double t_start = 0.25;
  double t_end = 1.0;

  /// n_space >= 64, t_start <= t_end, and dt <= (t_end - t_start) / 100 for non-empty runs.
  void validate(const WellConfig& cfg) const;
};

struct Propagation {
  SampledField field;
  int steps;
  double norm_start;
  double norm_end;

  double norm_drift() const { return std::abs(norm_end - norm_start) / norm_start; }
};

/// Samples `state` on n_points uniform points of [0, l(t)].
SampledField sample(const WaveFunction& state, double t, int n_points, const WellConfig& cfg);

/// Trapezoid-weighted discrete norm sqrt(sum w_i |a_i|^2).
double l2_norm(const SampledField& a);

/// sqrt(sum w_i |a_i - b_i|^2); GridMismatch unless the grids coincide.
double l2_distance(const SampledField& a, const SampledField& b);

/// Propagates `initial` (sampled on [0, l(t_start)] with n_space points and
/// zero endpoints) to t_end. The step is shrunk so that an integer number of
/// steps covers the span. Throws UnstableRun if an amplitude exceeds 1e3 times
/// the initial maximum or a step matrix loses diagonal dominance.
Propagation propagate(const SampledField& initial, const PropagationConfig& pc, const WellConfig& cfg);

}  // namespace mbw::pde
