#pragma once

// Shared domain types for the moving-barrier well library.
//
// Units throughout: hbar = 1, particle mass = 1/2, so the time-dependent
// Schrodinger equation reads  i d_t psi + d_xx psi - V psi = 0.

#include <complex>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mbw {

using Complex = std::complex<double>;

enum class ErrorKind {
  InvalidConfig,
  SingularTime,
  InadmissibleTime,
  InvalidQuantumNumber,
  OutsideWell,
  RegularityViolation,
  SeedCollision,
  NonNormalizable,
  NearNode,
  RealityViolation,
  StencilOutOfDomain,
  NonMonotoneResiduals,
  UnstableRun,
  GridMismatch,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Either a finite real or +infinity. Potentials use it for the hard walls.
class ExtendedReal {
 public:
  static ExtendedReal finite(double v);
  static ExtendedReal infinite() { return ExtendedReal{}; }

  bool is_finite() const noexcept { return finite_; }
  /// Throws OutsideWell when called on Infinite.
  double value() const;

  friend bool operator==(const ExtendedReal& a, const ExtendedReal& b) {
    return a.finite_ == b.finite_ && (!a.finite_ || a.value_ == b.value_);
  }

 private:
  ExtendedReal() = default;
  bool finite_ = false;
  double value_ = 0.0;
};

enum class Branch { Expanding, Contracting };

/// Half-width of the rejected band around the singular time t0 = -c1/4.
inline constexpr double kSingularTimeGuard = 1e-9;

/// Static box length L plus the point-transform constants c1, c2.
class WellConfig {
 public:
  /// L = 1, c1 = 1, c2 = 0, expanding.
  WellConfig() = default;
  WellConfig(double length, double c1, double c2, Branch branch = Branch::Expanding);

  static WellConfig with_length(double length) { return WellConfig(length, 1.0, 0.0); }

  double length() const noexcept { return length_; }
  double c1() const noexcept { return c1_; }
  double c2() const noexcept { return c2_; }
  Branch branch() const noexcept { return branch_; }

  double singular_time() const noexcept { return -c1_ / 4.0; }
  /// True for c1 = 1, c2 = 0, the constants the SUSY families are built on.
  bool is_default_gauge() const noexcept { return c1_ == 1.0 && c2_ == 0.0; }

  /// Throws SingularTime inside the guard band, InadmissibleTime on the wrong branch.
  void check_time(double t) const;

 private:
  double length_ = 1.0;
  double c1_ = 1.0;
  double c2_ = 0.0;
  Branch branch_ = Branch::Expanding;
};

/// Seed index m and deformation parameter omega of the confluent family.
/// The lower quadrature limit x0 is always 0.
class ConfluentConfig {
 public:
  ConfluentConfig(int m, double omega);

  int m() const noexcept { return m_; }
  double omega() const noexcept { return omega_; }
  double x0() const noexcept { return 0.0; }

  /// omega <= -1 or omega >= 0: the regularity function never vanishes inside the well.
  bool admissible() const noexcept { return omega_ <= -1.0 || omega_ >= 0.0; }
  bool missing_state_normalizable() const noexcept { return omega_ != -1.0 && omega_ != 0.0; }

 private:
  int m_;
  double omega_;
};

struct SpaceTimePoint {
  double x;
  double t;
};

/// A complex field on a uniform grid at a fixed time; endpoints included.
class SampledField {
 public:
  SampledField(double t, double x_min, double x_max, std::vector<Complex> values);

  double t() const noexcept { return t_; }
  double x_min() const noexcept { return x_min_; }
  double x_max() const noexcept { return x_max_; }
  std::size_t n_points() const noexcept { return values_.size(); }
  double spacing() const noexcept { return (x_max_ - x_min_) / static_cast<double>(values_.size() - 1); }
  double x_at(std::size_t i) const noexcept { return x_min_ + spacing() * static_cast<double>(i); }

  const std::vector<Complex>& values() const noexcept { return values_; }
  std::vector<Complex>& values() noexcept { return values_; }
  const Complex& operator[](std::size_t i) const { return values_[i]; }

 private:
  double t_;
  double x_min_;
  double x_max_;
  std::vector<Complex> values_;
};

using WaveFunction = std::function<Complex(double x, double t)>;
using PotentialFunction = std::function<ExtendedReal(double x, double t)>;

/// Moving wall l(t) = 4 L t + c1 L + c2/2. On the contracting branch with c2 = 0
/// this is negative: the moving wall sits to the left of the fixed one.
double wall_position(double t, const WellConfig& cfg);

double fixed_wall_position(const WellConfig& cfg);

}  // namespace mbw
