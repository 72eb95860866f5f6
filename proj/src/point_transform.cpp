#include "mbw/point_transform.hpp"

#include <cmath>

#include "mbw/static_box.hpp"

namespace mbw {

namespace {

constexpr double kGaugeStep = 1e-5;

double gauge_denominator(double t, double c1) {
  const double d = 4.0 * t + c1;
  if (std::abs(d) <= 4.0 * kSingularTimeGuard) {
    throw Error(ErrorKind::SingularTime, "4t + c1 vanishes");
  }
  return d;
}

}  // namespace

double gauge_A(double t, double c1) { return -1.0 / gauge_denominator(t, c1); }

double gauge_B(double t, double c1, double c2) { return c2 / gauge_denominator(t, c1); }

double GaugePair::A(double t) const { return gauge_A(t, cfg_.c1()); }

double GaugePair::B(double t) const { return gauge_B(t, cfg_.c1(), cfg_.c2()); }

double GaugePair::integral_A(double t) const {
  return -0.25 * std::log(std::abs(gauge_denominator(t, cfg_.c1())));
}

double GaugePair::integral_exp8A(double t) const {
  return -1.0 / (4.0 * gauge_denominator(t, cfg_.c1()));
}

double GaugePair::integral_B2(double t) const {
  return -cfg_.c2() * cfg_.c2() / (4.0 * gauge_denominator(t, cfg_.c1()));
}

double map_to_static(double x, double t, const WellConfig& cfg) {
  cfg.check_time(t);
  const GaugePair g(cfg);
  // x exp(4 int A) + 2 int B exp(4 int A) dt, the latter being -c2 / (2(4t + c1)).
  const double scale = std::exp(4.0 * g.integral_A(t));
  const double sign = (4.0 * t + cfg.c1()) > 0.0 ? 1.0 : -1.0;
  return sign * x * scale - cfg.c2() / (2.0 * (4.0 * t + cfg.c1()));
}

Complex lift_wavefunction(int n, double x, double t, const WellConfig& cfg) {
  if (n < 1) throw Error(ErrorKind::InvalidQuantumNumber, "n must be >= 1");
  cfg.check_time(t);
  const GaugePair g(cfg);
  const double y = map_to_static(x, t, cfg);
  const double psi = psi_static(n, y, cfg.length());
  if (psi == 0.0) return {0.0, 0.0};
  const double energy = energy_static(n, cfg.length());
  // exp{-i [A x^2 + B x + E int e^{8 int A} + int (2iA + B^2)]}
  const double phase =
      -(g.A(t) * x * x + g.B(t) * x + energy * g.integral_exp8A(t) + g.integral_B2(t));
  const double amplitude = psi * std::exp(2.0 * g.integral_A(t));
  return std::polar(amplitude, phase);
}

double transformed_potential_residual(double x, double t, const WellConfig& cfg) {
  cfg.check_time(t);
  const GaugePair g(cfg);
  const double h = kGaugeStep;
  const double dA = (g.A(t + h) - g.A(t - h)) / (2.0 * h);
  const double dB = (g.B(t + h) - g.B(t - h)) / (2.0 * h);
  const double a = g.A(t);
  const double b = g.B(t);
  return std::abs((dA - 4.0 * a * a) * x * x + (dB - 4.0 * a * b) * x);
}

}  // namespace mbw
