#include "mbw/static_box.hpp"

#include <cmath>
#include <numbers>

#include "mbw/core_types.hpp"

namespace mbw {

namespace {

void check_box(int n, double length) {
  if (n < 1) throw Error(ErrorKind::InvalidQuantumNumber, "box quantum number must be >= 1");
  if (!(length > 0.0)) throw Error(ErrorKind::InvalidConfig, "box length must be positive");
}

}  // namespace

double psi_static(int n, double y, double length) {
  check_box(n, length);
  if (y <= 0.0 || y >= length) return 0.0;
  return std::sqrt(2.0 / length) * std::sin(n * std::numbers::pi * y / length);
}

double energy_static(int n, double length) {
  check_box(n, length);
  const double k = n * std::numbers::pi / length;
  return k * k;
}

}  // namespace mbw
