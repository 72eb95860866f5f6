#include "mbw/families.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "mbw/numerics.hpp"

namespace mbw {

namespace {

using std::numbers::pi;

double well_length(double t, const WellConfig& cfg) {
  if (!cfg.is_default_gauge()) {
    throw Error(ErrorKind::InvalidConfig, "moving-well families are defined for c1 = 1, c2 = 0");
  }
  if (cfg.branch() != Branch::Expanding) {
    throw Error(ErrorKind::InvalidConfig, "moving-well families are defined on the expanding branch");
  }
  return wall_position(t, cfg);
}

void require_in_well(double x, double ell) {
  if (!(x >= 0.0 && x <= ell)) {
    std::ostringstream os;
    os << "x = " << x << " is outside the well [0, " << ell << "]";
    throw Error(ErrorKind::OutsideWell, os.str());
  }
}

bool strictly_inside(double x, double ell) { return x > 0.0 && x < ell; }

// exp{i (L/l) [x^2 + (n pi / (2L))^2]}
Complex chirp(int n, double x, double ell, double length) {
  const double k = n * pi / (2.0 * length);
  return std::polar(1.0, (length / ell) * (x * x + k * k));
}

// cot(a) sin(n a) - n cos(n a), with sin(n a)/sin(a) = U_{n-1}(cos a).
double chi_bracket(int n, double a) {
  const double c = std::cos(a);
  double u_prev = 1.0;  // U_0
  double u = 2.0 * c;   // U_1
  if (n == 1) u = u_prev;
  for (int k = 2; k < n; ++k) {
    const double next = 2.0 * c * u - u_prev;
    u_prev = u;
    u = next;
  }
  return c * u - n * std::cos(n * a);
}

// (2 m pi / l)(x + omega l) - sin(2 m pi x / l), expanded around whichever wall is closer.
double confluent_denominator(double x, double ell, int m, double omega) {
  const double two_m_pi = 2.0 * m * pi;
  if (x <= 0.5 * ell) return numerics::x_minus_sin(two_m_pi * x / ell) + two_m_pi * omega;
  return numerics::x_minus_sin(two_m_pi * (x - ell) / ell) + two_m_pi * (omega + 1.0);
}

void check_level(int n, int min_n) {
  if (n < min_n) {
    std::ostringstream os;
    os << "quantum number " << n << " must be >= " << min_n;
    throw Error(ErrorKind::InvalidQuantumNumber, os.str());
  }
}

}  // namespace

const ConfluentConfig& FamilyId::confluent_config() const {
  if (!confluent) throw Error(ErrorKind::InvalidConfig, "family carries no confluent configuration");
  return *confluent;
}

std::string FamilyId::name() const {
  switch (kind) {
    case FamilyKind::MovingBox: return "box";
    case FamilyKind::MovingPoschlTeller: return "pt";
    case FamilyKind::MovingConfluent: return "confluent";
  }
  return "unknown";
}

std::string StateSelector::label() const { return missing ? "eps" : std::to_string(n); }

void check_confluent_regularity(const ConfluentConfig& cc) {
  // omega + int_0^x |phi_m|^2 ds increases monotonically from omega to omega + 1.
  if (cc.omega() > -1.0 && cc.omega() < 0.0) {
    std::ostringstream os;
    os << "omega = " << cc.omega() << " makes omega + int_0^x |u|^2 ds vanish inside the well";
    throw Error(ErrorKind::RegularityViolation, os.str());
  }
}

ExtendedReal potential_V0(double x, double t, const WellConfig& cfg) {
  const double ell = well_length(t, cfg);
  return strictly_inside(x, ell) ? ExtendedReal::finite(0.0) : ExtendedReal::infinite();
}

ExtendedReal potential_V1(double x, double t, const WellConfig& cfg) {
  const double ell = well_length(t, cfg);
  if (!strictly_inside(x, ell)) return ExtendedReal::infinite();
  const double k = pi / ell;
  const double s = std::sin(k * x);
  return ExtendedReal::finite(2.0 * k * k / (s * s));
}

ExtendedReal potential_V2(double x, double t, const WellConfig& cfg, const ConfluentConfig& cc) {
  const double ell = well_length(t, cfg);
  check_confluent_regularity(cc);
  if (!strictly_inside(x, ell)) return ExtendedReal::infinite();
  const int m = cc.m();
  const double omega = cc.omega();
  const double k = m * pi / ell;
  // s [s - (m pi / l) cos(m pi x / l)(x + omega l)], written with sin z - z cos z.
  double product;
  if (x <= 0.5 * ell) {
    const double a = k * x;
    product = std::sin(a) * (numerics::sin_minus_x_cos(a) - m * pi * omega * std::cos(a));
  } else {
    const double a = k * (x - ell);
    product = std::sin(a) * (numerics::sin_minus_x_cos(a) - m * pi * (omega + 1.0) * std::cos(a));
  }
  const double d = confluent_denominator(x, ell, m, omega);
  return ExtendedReal::finite(32.0 * k * k * product / (d * d));
}

Complex phi_n(int n, double x, double t, const WellConfig& cfg) {
  check_level(n, 1);
  const double ell = well_length(t, cfg);
  require_in_well(x, ell);
  if (!strictly_inside(x, ell)) return {0.0, 0.0};
  return std::sqrt(2.0 / ell) * std::sin(n * pi * x / ell) * chirp(n, x, ell, cfg.length());
}

Complex chi_n(int n, double x, double t, const WellConfig& cfg) {
  check_level(n, 2);
  const double ell = well_length(t, cfg);
  require_in_well(x, ell);
  if (!strictly_inside(x, ell)) return {0.0, 0.0};
  const double amplitude = (pi / cfg.length()) * std::sqrt(2.0 / ell) * chi_bracket(n, pi * x / ell);
  return amplitude * chirp(n, x, ell, cfg.length());
}

Complex xi_n(int n, double x, double t, const WellConfig& cfg, const ConfluentConfig& cc,
             XiCoefficient coefficient) {
  check_level(n, 1);
  const int m = cc.m();
  if (n == m) throw Error(ErrorKind::SeedCollision, "xi_n needs n != m; use xi_missing for n = m");
  const double ell = well_length(t, cfg);
  check_confluent_regularity(cc);
  require_in_well(x, ell);
  if (!strictly_inside(x, ell)) return {0.0, 0.0};

  const double omega = cc.omega();
  const double alpha = pi * x / ell;
  const double sn = std::sin(n * alpha);
  const double cn = std::cos(n * alpha);
  const double sm = std::sin(m * alpha);
  const double mm = static_cast<double>(m) * m;
  const double nn = static_cast<double>(n) * n;
  const double cross = 4.0 * m * n * (coefficient == XiCoefficient::AsPrinted ? ell : 1.0);
  const double numerator =
      sn * ((mm + nn) * std::sin(2.0 * m * alpha) + (mm - nn) * (2.0 * m * pi / ell) * (x + omega * ell)) -
      cross * sm * sm * cn;
  const double d = confluent_denominator(x, ell, m, omega);
  const double k = pi / cfg.length();
  return k * k * std::sqrt(2.0 / ell) * (numerator / d) * chirp(n, x, ell, cfg.length());
}

Complex xi_missing(double x, double t, const WellConfig& cfg, const ConfluentConfig& cc) {
  const int m = cc.m();
  const double ell = well_length(t, cfg);
  check_confluent_regularity(cc);
  require_in_well(x, ell);
  const double omega = cc.omega();
  if ((x == 0.0 && omega == 0.0) || (x == ell && omega == -1.0)) {
    throw Error(ErrorKind::NonNormalizable, "xi_eps diverges at this wall for omega in {-1, 0}");
  }
  if (!strictly_inside(x, ell)) return {0.0, 0.0};
  const double d = confluent_denominator(x, ell, m, omega);
  return std::sqrt(2.0 / ell) * std::sin(m * pi * x / ell) * (2.0 * m * pi / d) *
         chirp(m, x, ell, cfg.length());
}

Complex chi_missing(double x, double t, const WellConfig& cfg) {
  const double ell = well_length(t, cfg);
  require_in_well(x, ell);
  if (!strictly_inside(x, ell)) {
    throw Error(ErrorKind::NonNormalizable, "chi_eps diverges at both walls");
  }
  const double a1 = ell / cfg.length();
  return 1.0 / (a1 * std::conj(phi_n(1, x, t, cfg)));
}

double energy_expectation_phi(int n, double t, const WellConfig& cfg) {
  check_level(n, 1);
  const double k = n * pi / well_length(t, cfg);
  return k * k;
}

double kinetic_expectation_phi(int n, double t, const WellConfig& cfg) {
  const double comoving = energy_expectation_phi(n, t, cfg);
  const double length = cfg.length();
  return comoving + 4.0 * length * length * (1.0 / 3.0 - 1.0 / (2.0 * n * n * pi * pi));
}

ExtendedReal family_potential(const FamilyId& family, double x, double t, const WellConfig& cfg) {
  switch (family.kind) {
    case FamilyKind::MovingBox: return potential_V0(x, t, cfg);
    case FamilyKind::MovingPoschlTeller: return potential_V1(x, t, cfg);
    case FamilyKind::MovingConfluent: return potential_V2(x, t, cfg, family.confluent_config());
  }
  throw Error(ErrorKind::InvalidConfig, "unknown family");
}

void validate_selector(const FamilyId& family, StateSelector sel) {
  switch (family.kind) {
    case FamilyKind::MovingBox:
      if (sel.missing) throw Error(ErrorKind::InvalidQuantumNumber, "the moving box has no missing state");
      check_level(sel.n, 1);
      return;
    case FamilyKind::MovingPoschlTeller:
      if (sel.missing) {
        throw Error(ErrorKind::NonNormalizable, "the Poschl-Teller family has no square-integrable missing state");
      }
      check_level(sel.n, 2);
      return;
    case FamilyKind::MovingConfluent: {
      const auto& cc = family.confluent_config();
      check_confluent_regularity(cc);
      if (sel.missing) {
        if (!cc.missing_state_normalizable()) {
          throw Error(ErrorKind::NonNormalizable, "xi_eps is not square integrable for omega in {-1, 0}");
        }
        return;
      }
      check_level(sel.n, 1);
      if (sel.n == cc.m()) throw Error(ErrorKind::SeedCollision, "n = m selects the missing state; use eps");
      return;
    }
  }
}

Complex family_state(const FamilyId& family, StateSelector sel, double x, double t,
                     const WellConfig& cfg) {
  switch (family.kind) {
    case FamilyKind::MovingBox: return phi_n(sel.n, x, t, cfg);
    case FamilyKind::MovingPoschlTeller:
      return sel.missing ? chi_missing(x, t, cfg) : chi_n(sel.n, x, t, cfg);
    case FamilyKind::MovingConfluent:
      return sel.missing ? xi_missing(x, t, cfg, family.confluent_config())
                         : xi_n(sel.n, x, t, cfg, family.confluent_config());
  }
  throw Error(ErrorKind::InvalidConfig, "unknown family");
}

}  // namespace mbw
