#pragma once

// Numeric time-dependent SUSY: first-order intertwiners built from an
// arbitrary transformation function u (a solution of the seed equation),
// partner potentials, missing states and the confluent second step.
//
// Nothing here knows the closed forms of the families module; all derivatives
// are taken by finite differences with steps proportional to l(t), and the
// confluent integral by adaptive Gauss-Legendre. That makes this module the
// independent oracle for the printed solutions.

#include <functional>
#include <string>

#include "mbw/core_types.hpp"

namespace mbw::susy {

/// |u| below this is treated as a node: log-derivatives are unreliable there.
inline constexpr double kNodeThreshold = 1e-10;
/// omega + int |u|^2 below this is treated as a regularity failure.
inline constexpr double kRegularityThreshold = 1e-10;

struct TransformationFunction {
  WaveFunction u;
  WellConfig cfg;
  std::string label;

  Complex operator()(double x, double t) const { return u(x, t); }
  /// Right end of the domain (0, l(t)).
  double domain_end(double t) const { return wall_position(t, cfg); }
};

/// Finite-difference steps, as fractions of l(t).
struct StepConfig {
  double first = 1e-4;   // 6th-order first derivatives in the intertwiners
  double second = 1e-4;  // 4th-order second derivatives in the potentials
};

using TimeFunction = std::function<double(double t)>;

struct IntertwinerL1 {
  TimeFunction a1;
  TransformationFunction u;
};

struct A1Options {
  int simpson_intervals = 2048;
  double spread_tolerance = 1e-6;
  /// Step of the phase second derivative, as a fraction of l(t).
  double step = 1e-3;
};

/// exp{2 int_{t_ref}^{t} Im[d_xx ln u] dt'}. Im[d_xx ln u] is sampled at three
/// interior probes (auto-shifted off nodes); their spread must stay below the
/// tolerance, otherwise RealityViolation.
double a1_magnitude(const TransformationFunction& u, double t, double t_ref, const A1Options& opt = {});

/// L1 with A1 obtained numerically from the reality condition, normalized at t_ref.
IntertwinerL1 make_l1(const TransformationFunction& u, double t_ref, const A1Options& opt = {});

/// A1 (-d_x psi + (u_x / u) psi).
Complex apply_L1(const IntertwinerL1& l1, const WaveFunction& psi, double x, double t,
                 const StepConfig& steps = {});

/// V0 - d_xx ln |u|^2.
double partner_potential(const PotentialFunction& v0, const TransformationFunction& u, double x,
                         double t, const StepConfig& steps = {});

/// 1 / (A1 conj(u)).
Complex missing_state_1susy(const TransformationFunction& u, const TimeFunction& a1, double x,
                            double t);

/// omega + int_0^x |u(s,t)|^2 ds, adaptive Gauss-Legendre to 1e-12 absolute.
double confluent_weight(const TransformationFunction& u, double omega, double x, double t);

/// (omega + int_0^x |u|^2 ds) / (A1 conj(u)).
Complex confluent_v(const TransformationFunction& u, const ConfluentConfig& cc, const TimeFunction& a1,
                    double x, double t);

/// V0 - 2 d_xx ln(omega + int_0^x |u|^2 ds). The first derivative uses
/// d_x int_0^x |u|^2 = |u(x)|^2; only the second is a finite difference.
double confluent_potential(const PotentialFunction& v0, const TransformationFunction& u,
                           const ConfluentConfig& cc, double x, double t,
                           const StepConfig& steps = {});

struct IntertwinerL2 {
  TimeFunction a2;
  TransformationFunction u;
  ConfluentConfig cc;
  TimeFunction a1;

  Complex v(double x, double t) const { return confluent_v(u, cc, a1, x, t); }
};

/// Confluent second intertwiner, with A2 = A1.
IntertwinerL2 make_l2(const IntertwinerL1& l1, const ConfluentConfig& cc);

/// A2 (-d_x chi + (v_x / v) chi), using v_x / v = |u|^2 / w - conj(u_x / u).
Complex apply_L2(const IntertwinerL2& l2, const WaveFunction& chi, double x, double t,
                 const StepConfig& steps = {});

/// 1 / (A2 conj(v)) = u / (omega + int_0^x |u|^2 ds).
Complex missing_state_confluent(const TransformationFunction& u, const ConfluentConfig& cc, double x,
                                double t);

struct RealityOptions {
  int probes = 9;
  double step = 1e-2;  // fraction of l(t)
};

/// max over interior probes of |d_x^3 ln(u / conj u)| = 2 |d_x^3 arg u|.
double reality_check(const TransformationFunction& u, double t, const RealityOptions& opt = {});

/// Scans omega + int_0^x |u|^2 on a grid over (0, l) and throws
/// RegularityViolation on a sign change or a value below threshold.
void check_confluent_regularity_numeric(const TransformationFunction& u, double omega, double t,
                                        int samples = 400);

}  // namespace mbw::susy
