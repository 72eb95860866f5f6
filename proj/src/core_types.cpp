#include "mbw/core_types.hpp"

#include <cmath>
#include <sstream>

namespace mbw {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidConfig: return "InvalidConfig";
    case ErrorKind::SingularTime: return "SingularTime";
    case ErrorKind::InadmissibleTime: return "InadmissibleTime";
    case ErrorKind::InvalidQuantumNumber: return "InvalidQuantumNumber";
    case ErrorKind::OutsideWell: return "OutsideWell";
    case ErrorKind::RegularityViolation: return "RegularityViolation";
    case ErrorKind::SeedCollision: return "SeedCollision";
    case ErrorKind::NonNormalizable: return "NonNormalizable";
    case ErrorKind::NearNode: return "NearNode";
    case ErrorKind::RealityViolation: return "RealityViolation";
    case ErrorKind::StencilOutOfDomain: return "StencilOutOfDomain";
    case ErrorKind::NonMonotoneResiduals: return "NonMonotoneResiduals";
    case ErrorKind::UnstableRun: return "UnstableRun";
    case ErrorKind::GridMismatch: return "GridMismatch";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

ExtendedReal ExtendedReal::finite(double v) {
  if (!std::isfinite(v)) {
    throw Error(ErrorKind::InvalidConfig, "ExtendedReal::finite given a non-finite value");
  }
  ExtendedReal r;
  r.finite_ = true;
  r.value_ = v;
  return r;
}

double ExtendedReal::value() const {
  if (!finite_) throw Error(ErrorKind::OutsideWell, "potential is infinite at this point");
  return value_;
}

WellConfig::WellConfig(double length, double c1, double c2, Branch branch)
    : length_(length), c1_(c1), c2_(c2), branch_(branch) {
  if (!(length > 0.0) || !std::isfinite(length)) {
    throw Error(ErrorKind::InvalidConfig, "box length must be positive and finite");
  }
  if (!std::isfinite(c1) || !std::isfinite(c2)) {
    throw Error(ErrorKind::InvalidConfig, "c1 and c2 must be finite");
  }
}

void WellConfig::check_time(double t) const {
  if (!std::isfinite(t)) throw Error(ErrorKind::InadmissibleTime, "time is not finite");
  const double t0 = singular_time();
  if (std::abs(t - t0) <= kSingularTimeGuard) {
    std::ostringstream os;
    os << "t = " << t << " is within the guard band of the singular time " << t0;
    throw Error(ErrorKind::SingularTime, os.str());
  }
  const bool after = t > t0;
  if ((branch_ == Branch::Expanding) != after) {
    std::ostringstream os;
    os << "t = " << t << " lies on the wrong side of t0 = " << t0 << " for the "
       << (branch_ == Branch::Expanding ? "expanding" : "contracting") << " branch";
    throw Error(ErrorKind::InadmissibleTime, os.str());
  }
}

ConfluentConfig::ConfluentConfig(int m, double omega) : m_(m), omega_(omega) {
  if (m < 1) throw Error(ErrorKind::InvalidQuantumNumber, "seed index m must be >= 1");
  if (!std::isfinite(omega)) throw Error(ErrorKind::InvalidConfig, "omega must be finite");
}

SampledField::SampledField(double t, double x_min, double x_max, std::vector<Complex> values)
    : t_(t), x_min_(x_min), x_max_(x_max), values_(std::move(values)) {
  if (!(x_min < x_max)) throw Error(ErrorKind::GridMismatch, "SampledField needs x_min < x_max");
  if (values_.size() < 2) throw Error(ErrorKind::GridMismatch, "SampledField needs at least two points");
}

double wall_position(double t, const WellConfig& cfg) {
  cfg.check_time(t);
  return 4.0 * cfg.length() * t + cfg.c1() * cfg.length() + cfg.c2() / 2.0;
}

double fixed_wall_position(const WellConfig& cfg) { return cfg.c2() / 2.0; }

}  // namespace mbw
