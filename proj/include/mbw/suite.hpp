#pragma once

// The verification suite: every closed form checked against the numeric
// machinery (quadrature, finite-difference residuals, numeric intertwiners).
// Shared by the `verify` command and the acceptance tests.

#include <span>
#include <vector>

#include "mbw/core_types.hpp"
#include "mbw/families.hpp"
#include "mbw/report.hpp"

namespace mbw::suite {

/// Step fractions s for residual studies: hx = s l(t), ht = s l(t)^2 / pi^2.
inline constexpr double kResidualSteps[] = {1e-2, 5e-3, 2.5e-3};
inline constexpr double kResidualProbes[] = {0.1, 0.25, 0.4, 0.55, 0.7, 0.85};
inline constexpr double kMinOrder = 4.0;
/// The 4th-order time stencil's observed slope approaches 4 from below, so
/// the suite accepts anything at or above this; a wrong formula gives ~0 or
/// NonMonotoneResiduals.
inline constexpr double kSuiteMinOrder = 3.9;
inline constexpr double kMaxRelativeResidual = 1e-5;

inline constexpr double kNormTolerance = 1e-10;
inline constexpr double kOverlapTolerance = 1e-10;
inline constexpr double kEnergyTolerance = 1e-8;
inline constexpr double kPotentialOracleTolerance = 1e-6;
inline constexpr double kStateOracleTolerance = 1e-8;

/// Interior comparison grid: 2001 points on [0.01 l, 0.99 l].
inline constexpr int kOracleGridPoints = 2001;
inline constexpr double kOracleWallMargin = 1e-2;
/// Half-width (fraction of l) of the band excluded around nodes of the seed
/// phi_m when the numeric chain L2 L1 passes through the singular chi.
inline constexpr double kNodeBand = 5e-2;

inline constexpr double kFigureTimes[] = {0.25, 0.5, 0.75, 1.0};

struct ResidualStudy {
  std::vector<double> residuals;  // max over probes, per step
  std::vector<double> scales;     // max over probes of the largest TDSE term
  double order;                   // NaN if the residuals did not decrease
  double finest_relative;
  std::string failure;            // non-empty when the order could not be measured
};

ResidualStudy residual_study(const WaveFunction& psi, const PotentialFunction& v, double t, const WellConfig& cfg,
                             std::span<const double> steps = kResidualSteps,
                             std::span<const double> probes = kResidualProbes);

std::vector<double> oracle_grid(double t, const WellConfig& cfg);

/// max over the grid of |V1 - (V0 - d_xx ln|phi_1|^2)| / V1.
double v1_oracle_error(double t, const WellConfig& cfg);
/// max |chi_n - L1 phi_n| / max |chi_n|, with u = phi_1.
double chi_oracle_error(int n, double t, const WellConfig& cfg);
/// max |V2 - V2_numeric| / max(|V2|, (pi/l)^2).
double v2_oracle_error(const ConfluentConfig& cc, double t, const WellConfig& cfg);
/// max |xi_n - L2 L1 phi_n| / max |xi_n|, with u = phi_m, away from nodes of phi_m.
double xi_oracle_error(int n, const ConfluentConfig& cc, double t, const WellConfig& cfg,
                       XiCoefficient coefficient = XiCoefficient::Corrected);

/// chi_n with the n cos(n pi x / l) coefficient scaled by (1 + eps); a
/// deliberately broken state for negative controls.
Complex perturbed_chi(int n, double x, double t, const WellConfig& cfg, double eps);

struct SuiteOptions {
  WellConfig cfg{};
  bool box = true;
  bool poschl_teller = true;
  std::vector<ConfluentConfig> confluent{ConfluentConfig(2, 0.4), ConfluentConfig(2, -1.0), ConfluentConfig(2, 0.0)};
  bool negative_controls = false;
  std::vector<double> times{0.25, 0.5, 0.75, 1.0};
};

std::vector<verify::VerificationReport> run(const SuiteOptions& opt);

}  // namespace mbw::suite
