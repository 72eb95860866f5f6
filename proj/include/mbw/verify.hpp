#pragma once

// Verification engine: finite-difference TDSE residuals, quadrature norms and
// overlaps over the moving interval (in the physical x variable), energy
// expectations and step-refinement studies.

#include <functional>
#include <span>
#include <vector>

#include "mbw/core_types.hpp"
#include "mbw/numerics.hpp"

namespace mbw::verify {

struct ResidualSample {
  Complex residual;       // i d_t psi + d_xx psi - V psi
  double time_term;       // |i d_t psi|
  double space_term;      // |d_xx psi|
  double potential_term;  // |V psi|

  double scale() const;
};

/// Time: 4th-order 5-point; space: 6th-order 7-point. The point must stay
/// 3 hx inside the well at every sampled time t + j ht, |j| <= 2, otherwise
/// StencilOutOfDomain.
ResidualSample tdse_residual(const WaveFunction& psi, const PotentialFunction& v, double x, double t,
                             double hx, double ht, const WellConfig& cfg);

/// Same, with a caller-chosen spatial stencil (used for order controls).
ResidualSample tdse_residual(const WaveFunction& psi, const PotentialFunction& v, double x, double t,
                             double hx, double ht, const WellConfig& cfg,
                             const numerics::Stencil& space, const numerics::Stencil& time);

double norm(const WaveFunction& psi, double t, const WellConfig& cfg, numerics::CompositeRule rule = {});

Complex overlap(const WaveFunction& psi1, const WaveFunction& psi2, double t, const WellConfig& cfg,
                numerics::CompositeRule rule = {});

struct NormStudy {
  std::vector<int> panels;
  std::vector<double> values;
  bool converged;
};

/// Norms with panels doubling from `start_panels`; converged when the last two
/// values agree to `rel_tol`.
NormStudy norm_refinement(const WaveFunction& psi, double t, const WellConfig& cfg, int levels = 5,
                          int start_panels = 16, double rel_tol = 1e-8);

struct EnergyOptions {
  numerics::CompositeRule rule{};
  double wall_margin = 1e-3;  // fraction of l(t)
};

/// Re int conj(psi) (-d_xx psi) dx. d_xx is 6th-order with step margin/3 on
/// [margin, l - margin]; the two wall strips are closed by cubic
/// extrapolation through the integrand's wall limit 0.
double energy_expectation(const WaveFunction& psi, double t, const WellConfig& cfg,
                          const EnergyOptions& opt = {});

/// Observed order: least-squares slope of log(residual) vs log(step).
/// `steps` must hold >= 3 entries, each half the previous. Each residual must
/// drop by at least 10% per halving, otherwise NonMonotoneResiduals.
double convergence_study(const std::function<double(double)>& residual, std::span<const double> steps);

/// Same, for precomputed residuals.
double observed_order(std::span<const double> steps, std::span<const double> residuals);

inline constexpr double kMonotoneFactor = 0.9;

}  // namespace mbw::verify
