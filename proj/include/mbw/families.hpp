#pragma once

// Closed-form potentials and solutions of the three moving-barrier systems,
// all built on c1 = 1, c2 = 0 (fixed wall at 0, moving wall at l(t) = L(4t+1)):
//
//   MovingBox           V0 = 0 inside,           phi_n,  n >= 1
//   MovingPoschlTeller  V1 = 2 (pi/l)^2 csc^2,   chi_n,  n >= 2
//   MovingConfluent     V2(m, omega),            xi_n (n != m) and xi_eps
//
// chi_n and xi_n are not unit-normalized; callers divide by a numeric norm.

#include <optional>
#include <string>

#include "mbw/core_types.hpp"

namespace mbw {

enum class FamilyKind { MovingBox, MovingPoschlTeller, MovingConfluent };

struct FamilyId {
  FamilyKind kind = FamilyKind::MovingBox;
  std::optional<ConfluentConfig> confluent;

  static FamilyId box() { return {FamilyKind::MovingBox, std::nullopt}; }
  static FamilyId poschl_teller() { return {FamilyKind::MovingPoschlTeller, std::nullopt}; }
  static FamilyId confluent_family(ConfluentConfig cc) { return {FamilyKind::MovingConfluent, cc}; }

  const ConfluentConfig& confluent_config() const;
  std::string name() const;
};

/// Level n, or the family's missing state.
struct StateSelector {
  int n = 1;
  bool missing = false;

  static StateSelector level(int n) { return {n, false}; }
  static StateSelector missing_state() { return {0, true}; }
  std::string label() const;
};

/// Coefficient of the cot(n pi x/l) sin^2(m pi x/l) term in xi_n.
enum class XiCoefficient {
  /// 4 m n, the value L2 L1 phi_n actually produces.
  Corrected,
  /// 4 m n l, as the formula is usually printed; only agrees with L2 L1 phi_n when l = 1.
  AsPrinted,
};

ExtendedReal potential_V0(double x, double t, const WellConfig& cfg);
ExtendedReal potential_V1(double x, double t, const WellConfig& cfg);
/// Throws RegularityViolation when omega lies in (-1, 0).
ExtendedReal potential_V2(double x, double t, const WellConfig& cfg, const ConfluentConfig& cc);

Complex phi_n(int n, double x, double t, const WellConfig& cfg);
Complex chi_n(int n, double x, double t, const WellConfig& cfg);
Complex xi_n(int n, double x, double t, const WellConfig& cfg, const ConfluentConfig& cc,
             XiCoefficient coefficient = XiCoefficient::Corrected);
/// Missing state of the confluent step. At the wall where omega + int |u|^2
/// vanishes (x = 0 for omega = 0, x = l for omega = -1) throws NonNormalizable.
Complex xi_missing(double x, double t, const WellConfig& cfg, const ConfluentConfig& cc);

/// 1-SUSY missing state 1/(A1 conj(phi_1)). Diverges at both walls; only a diagnostic.
Complex chi_missing(double x, double t, const WellConfig& cfg);

/// (n pi / l)^2: the expectation of -d_xx in the frame comoving with the
/// chirp exp(i L x^2 / l).
double energy_expectation_phi(int n, double t, const WellConfig& cfg);

/// int conj(phi_n) (-d_xx phi_n) dx = (n pi / l)^2 + 4 L^2 (1/3 - 1/(2 n^2 pi^2)).
/// The second term is the kinetic energy carried by the chirp phase.
double kinetic_expectation_phi(int n, double t, const WellConfig& cfg);

/// Throws RegularityViolation when omega + int_0^x |phi_m|^2 ds has a root in (0, l).
void check_confluent_regularity(const ConfluentConfig& cc);

/// Dispatch helpers used by the propagator, the verification suite and the CLI.
ExtendedReal family_potential(const FamilyId& family, double x, double t, const WellConfig& cfg);
Complex family_state(const FamilyId& family, StateSelector sel, double x, double t,
                     const WellConfig& cfg);
/// Throws InvalidQuantumNumber / SeedCollision / NonNormalizable for bad combinations.
void validate_selector(const FamilyId& family, StateSelector sel);

}  // namespace mbw
