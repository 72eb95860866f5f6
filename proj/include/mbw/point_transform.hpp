#pragma once

// Point transformation from the static box to the moving square well.
//
// The gauge pair (A, B) is the closed-form solution of
//   dA/dt - 4 A^2 = 0,   dB/dt - 4 A B = 0,
// i.e. A = -1/(4t + c1), B = c2/(4t + c1). Every indefinite time integral
// that the general transformation needs is replaced by its explicit
// antiderivative, with integration constants chosen so that
//   y(x, t) = (2x - c2) / (2 (4t + c1)).

#include "mbw/core_types.hpp"

namespace mbw {

double gauge_A(double t, double c1);
double gauge_B(double t, double c1, double c2);

/// The solved gauge pair for a given configuration plus the antiderivatives
/// used to lift static-box states.
class GaugePair {
 public:
  explicit GaugePair(const WellConfig& cfg) : cfg_(cfg) {}

  double A(double t) const;
  double B(double t) const;

  /// int A dt = -ln|4t + c1| / 4
  double integral_A(double t) const;
  /// int exp(8 int A) dt = -1 / (4 (4t + c1))
  double integral_exp8A(double t) const;
  /// int B^2 dt = -c2^2 / (4 (4t + c1))
  double integral_B2(double t) const;

  const WellConfig& config() const noexcept { return cfg_; }

 private:
  WellConfig cfg_;
};

/// y(x, t): moving-well coordinate to static-box coordinate.
double map_to_static(double x, double t, const WellConfig& cfg);

/// psi_n(y(x,t)) times the gauge factor; total in x (zero outside the well).
Complex lift_wavefunction(int n, double x, double t, const WellConfig& cfg);

/// |[dA/dt - 4A^2] x^2 + [dB/dt - 4AB] x| with central differences (h = 1e-5)
/// for the time derivatives. Zero up to truncation when V0 = 0 inside the well.
double transformed_potential_residual(double x, double t, const WellConfig& cfg);

}  // namespace mbw
