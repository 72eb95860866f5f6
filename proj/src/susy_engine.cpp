#include "mbw/susy_engine.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>
#include <vector>

#include "mbw/numerics.hpp"

namespace mbw::susy {

namespace {

using numerics::differentiate;

void require_stencil_inside(double x, double h, int radius, double ell) {
  if (x - radius * h < 0.0 || x + radius * h > ell) {
    std::ostringstream os;
    os << "stencil around x = " << x << " (h = " << h << ", radius " << radius
       << ") leaves the well [0, " << ell << "]";
    throw Error(ErrorKind::StencilOutOfDomain, os.str());
  }
}

Complex checked_value(const TransformationFunction& u, double x, double t) {
  const Complex value = u(x, t);
  if (std::abs(value) < kNodeThreshold) {
    std::ostringstream os;
    os << "|u| < " << kNodeThreshold << " at x = " << x << " (" << u.label << ")";
    throw Error(ErrorKind::NearNode, os.str());
  }
  return value;
}

// Unwrapped arg u(x + j h) - arg u(x) for j = -radius..radius. Empty when the
// stencil touches a node or straddles a sign change.
std::optional<std::vector<double>> relative_phases(const TransformationFunction& u, double x, double t,
                                                   double h, int radius) {
  std::vector<Complex> values;
  values.reserve(static_cast<std::size_t>(2 * radius + 1));
  for (int j = -radius; j <= radius; ++j) {
    const Complex v = u(x + j * h, t);
    if (std::abs(v) < kNodeThreshold) return std::nullopt;
    values.push_back(v);
  }
  std::vector<double> phases(values.size(), 0.0);
  const auto centre = static_cast<std::size_t>(radius);
  for (std::size_t j = centre + 1; j < values.size(); ++j) {
    const double step = std::arg(values[j] / values[j - 1]);
    if (std::abs(step) > std::numbers::pi / 2) return std::nullopt;
    phases[j] = phases[j - 1] + step;
  }
  for (std::size_t j = centre; j-- > 0;) {
    const double step = std::arg(values[j] / values[j + 1]);
    if (std::abs(step) > std::numbers::pi / 2) return std::nullopt;
    phases[j] = phases[j + 1] + step;
  }
  return phases;
}

double apply_to_samples(const std::vector<double>& samples, double h, const numerics::Stencil& s) {
  double acc = 0.0;
  for (std::size_t j = 0; j < samples.size(); ++j) acc += s.coefficients[j] * samples[j];
  return acc / std::pow(h, s.derivative);
}

// Derivative of arg u at a probe, shifting the probe off nodes when needed.
double phase_derivative(const TransformationFunction& u, double fraction, double t, double step_fraction,
                        const numerics::Stencil& stencil) {
  const double ell = u.domain_end(t);
  const double h = step_fraction * ell;
  const int r = stencil.radius();
  for (int attempt = 0; attempt < 40; ++attempt) {
    double f = fraction + 0.0137 * attempt;
    if (f >= 0.97) f -= 0.94;
    const double x = f * ell;
    if (x - r * h <= 0.0 || x + r * h >= ell) continue;
    if (auto phases = relative_phases(u, x, t, h, r)) return apply_to_samples(*phases, h, stencil);
  }
  throw Error(ErrorKind::NearNode, "could not place a phase probe away from the nodes of " + u.label);
}

// omega + int_0^{x + j h} |u|^2 for j = -radius..radius, reusing the centre integral.
std::vector<double> confluent_weights_on_stencil(const TransformationFunction& u, double omega, double x,
                                                 double t, double h, int radius) {
  const auto density = [&](double s) { return std::norm(u(s, t)); };
  const double centre = confluent_weight(u, omega, x, t);
  std::vector<double> w;
  w.reserve(static_cast<std::size_t>(2 * radius + 1));
  for (int j = -radius; j <= radius; ++j) {
    w.push_back(j == 0 ? centre : centre + numerics::integrate_adaptive(density, x, x + j * h, 1e-14));
  }
  return w;
}

}  // namespace

double a1_magnitude(const TransformationFunction& u, double t, double t_ref, const A1Options& opt) {
  u.cfg.check_time(t);
  u.cfg.check_time(t_ref);
  if (t == t_ref) return 1.0;
  constexpr std::array<double, 3> probes{0.5, 0.381966011250105, 0.618033988749895};
  const auto im_second_log_derivative = [&](double tp) {
    std::array<double, 3> values{};
    for (std::size_t i = 0; i < probes.size(); ++i) {
      values[i] = phase_derivative(u, probes[i], tp, opt.step, numerics::second_o6);
    }
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    if (*hi - *lo > opt.spread_tolerance) {
      std::ostringstream os;
      os << "Im[d_xx ln u] depends on x at t = " << tp << " (spread " << (*hi - *lo) << ")";
      throw Error(ErrorKind::RealityViolation, os.str());
    }
    return values[0];
  };
  const double integral = numerics::integrate_simpson(im_second_log_derivative, t_ref, t, opt.simpson_intervals);
  return std::exp(2.0 * integral);
}

IntertwinerL1 make_l1(const TransformationFunction& u, double t_ref, const A1Options& opt) {
  return IntertwinerL1{[u, t_ref, opt](double t) { return a1_magnitude(u, t, t_ref, opt); }, u};
}

Complex apply_L1(const IntertwinerL1& l1, const WaveFunction& psi, double x, double t,
                 const StepConfig& steps) {
  const double ell = l1.u.domain_end(t);
  const double h = steps.first * ell;
  require_stencil_inside(x, h, numerics::first_o6.radius(), ell);
  const Complex u0 = checked_value(l1.u, x, t);
  const Complex ux = differentiate([&](double s) { return l1.u(s, t); }, x, h, numerics::first_o6);
  const Complex dpsi = differentiate([&](double s) { return psi(s, t); }, x, h, numerics::first_o6);
  return l1.a1(t) * (-dpsi + (ux / u0) * psi(x, t));
}

double partner_potential(const PotentialFunction& v0, const TransformationFunction& u, double x, double t,
                         const StepConfig& steps) {
  const double ell = u.domain_end(t);
  const double h = steps.second * ell;
  require_stencil_inside(x, h, numerics::second_o4.radius(), ell);
  const auto log_density = [&](double s) { return std::log(std::norm(checked_value(u, s, t))); };
  return v0(x, t).value() - differentiate(log_density, x, h, numerics::second_o4);
}

Complex missing_state_1susy(const TransformationFunction& u, const TimeFunction& a1, double x, double t) {
  return 1.0 / (a1(t) * std::conj(checked_value(u, x, t)));
}

double confluent_weight(const TransformationFunction& u, double omega, double x, double t) {
  const auto density = [&](double s) { return std::norm(u(s, t)); };
  return omega + numerics::integrate_adaptive(density, 0.0, x, 1e-12);
}

Complex confluent_v(const TransformationFunction& u, const ConfluentConfig& cc, const TimeFunction& a1,
                    double x, double t) {
  const double w = confluent_weight(u, cc.omega(), x, t);
  const Complex u0 = u(x, t);
  if (std::abs(u0) < kNodeThreshold) {
    std::ostringstream os;
    os << "v has a pole at the node x = " << x << " of " << u.label;
    throw Error(ErrorKind::NearNode, os.str());
  }
  return w / (a1(t) * std::conj(u0));
}

double confluent_potential(const PotentialFunction& v0, const TransformationFunction& u,
                           const ConfluentConfig& cc, double x, double t, const StepConfig& steps) {
  const double ell = u.domain_end(t);
  const double h = steps.second * ell;
  const int r = numerics::first_o4.radius();
  require_stencil_inside(x, h, r, ell);
  const auto w = confluent_weights_on_stencil(u, cc.omega(), x, t, h, r);
  std::vector<double> g;
  g.reserve(w.size());
  for (int j = -r; j <= r; ++j) {
    const double wj = w[static_cast<std::size_t>(j + r)];
    if (std::abs(wj) < kRegularityThreshold) {
      std::ostringstream os;
      os << "omega + int_0^x |u|^2 vanishes near x = " << x + j * h;
      throw Error(ErrorKind::RegularityViolation, os.str());
    }
    g.push_back(std::norm(u(x + j * h, t)) / wj);
  }
  return v0(x, t).value() - 2.0 * apply_to_samples(g, h, numerics::first_o4);
}

IntertwinerL2 make_l2(const IntertwinerL1& l1, const ConfluentConfig& cc) {
  return IntertwinerL2{l1.a1, l1.u, cc, l1.a1};
}

Complex apply_L2(const IntertwinerL2& l2, const WaveFunction& chi, double x, double t,
                 const StepConfig& steps) {
  const double ell = l2.u.domain_end(t);
  const double h = steps.first * ell;
  require_stencil_inside(x, h, numerics::first_o6.radius(), ell);
  // v = w / (A1 conj u) has poles at the nodes of u, so differencing v loses
  // accuracy nearby. With w_x = |u|^2: v_x / v = |u|^2 / w - conj(u_x / u).
  const double w = confluent_weight(l2.u, l2.cc.omega(), x, t);
  if (std::abs(w) < kRegularityThreshold) {
    throw Error(ErrorKind::RegularityViolation, "omega + int_0^x |u|^2 vanishes at the evaluation point");
  }
  const Complex u0 = checked_value(l2.u, x, t);
  const Complex ux = differentiate([&](double s) { return l2.u(s, t); }, x, h, numerics::first_o6);
  const Complex log_vx = std::norm(u0) / w - std::conj(ux / u0);
  const Complex dchi = differentiate([&](double s) { return chi(s, t); }, x, h, numerics::first_o6);
  return l2.a2(t) * (-dchi + log_vx * chi(x, t));
}

Complex missing_state_confluent(const TransformationFunction& u, const ConfluentConfig& cc, double x,
                                double t) {
  const double w = confluent_weight(u, cc.omega(), x, t);
  if (std::abs(w) < kRegularityThreshold) {
    throw Error(ErrorKind::RegularityViolation, "omega + int_0^x |u|^2 vanishes at the evaluation point");
  }
  return u(x, t) / w;
}

double reality_check(const TransformationFunction& u, double t, const RealityOptions& opt) {
  u.cfg.check_time(t);
  double worst = 0.0;
  for (int i = 0; i < opt.probes; ++i) {
    const double fraction = (i + 0.5) / opt.probes;
    const double d3 = phase_derivative(u, fraction, t, opt.step, numerics::third_o4);
    worst = std::max(worst, 2.0 * std::abs(d3));
  }
  return worst;
}

void check_confluent_regularity_numeric(const TransformationFunction& u, double omega, double t, int samples) {
  const double ell = u.domain_end(t);
  const auto density = [&](double s) { return std::norm(u(s, t)); };
  double w = omega;
  double x_prev = 0.0;
  for (int i = 1; i < samples; ++i) {
    const double x = ell * i / samples;
    const double next = w + numerics::integrate_adaptive(density, x_prev, x, 1e-14);
    const bool sign_change = w != 0.0 && (next > 0.0) != (w > 0.0);
    if (std::abs(next) < kRegularityThreshold || sign_change) {
      std::ostringstream os;
      os << "omega + int_0^x |u|^2 changes sign or vanishes near x = " << x << " for omega = " << omega;
      throw Error(ErrorKind::RegularityViolation, os.str());
    }
    w = next;
    x_prev = x;
  }
}

}  // namespace mbw::susy
