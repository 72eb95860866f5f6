#include "mbw/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace mbw::verify {

namespace {

struct Interval {
  double lo;
  double hi;
};

Interval well_interval(double t, const WellConfig& cfg) {
  const double moving = wall_position(t, cfg);
  const double fixed = fixed_wall_position(cfg);
  return {std::min(moving, fixed), std::max(moving, fixed)};
}

}  // namespace

double ResidualSample::scale() const { return std::max({time_term, space_term, potential_term}); }

ResidualSample tdse_residual(const WaveFunction& psi, const PotentialFunction& v, double x, double t,
                             double hx, double ht, const WellConfig& cfg) {
  return tdse_residual(psi, v, x, t, hx, ht, cfg, numerics::second_o6, numerics::first_o4);
}

ResidualSample tdse_residual(const WaveFunction& psi, const PotentialFunction& v, double x, double t,
                             double hx, double ht, const WellConfig& cfg, const numerics::Stencil& space,
                             const numerics::Stencil& time) {
  const int rt = time.radius();
  for (int j = -rt; j <= rt; ++j) {
    const Interval well = well_interval(t + j * ht, cfg);
    if (!(x > well.lo && x < well.hi)) {
      std::ostringstream os;
      os << "x = " << x << " leaves the well at sampled time " << t + j * ht;
      throw Error(ErrorKind::StencilOutOfDomain, os.str());
    }
  }
  const Interval now = well_interval(t, cfg);
  const int rx = space.radius();
  if (x - rx * hx < now.lo || x + rx * hx > now.hi) {
    std::ostringstream os;
    os << "spatial stencil around x = " << x << " with hx = " << hx << " leaves the well";
    throw Error(ErrorKind::StencilOutOfDomain, os.str());
  }

  const Complex value = psi(x, t);
  const Complex dt = numerics::differentiate([&](double s) { return psi(x, s); }, t, ht, time);
  const Complex dxx = numerics::differentiate([&](double s) { return psi(s, t); }, x, hx, space);
  const Complex vpsi = v(x, t).value() * value;
  const Complex i_dt = Complex(0.0, 1.0) * dt;
  return ResidualSample{i_dt + dxx - vpsi, std::abs(i_dt), std::abs(dxx), std::abs(vpsi)};
}

double norm(const WaveFunction& psi, double t, const WellConfig& cfg, numerics::CompositeRule rule) {
  const Interval well = well_interval(t, cfg);
  return numerics::integrate_composite([&](double x) { return std::norm(psi(x, t)); }, well.lo, well.hi, rule);
}

Complex overlap(const WaveFunction& psi1, const WaveFunction& psi2, double t, const WellConfig& cfg,
                numerics::CompositeRule rule) {
  const Interval well = well_interval(t, cfg);
  return numerics::integrate_composite([&](double x) { return std::conj(psi1(x, t)) * psi2(x, t); }, well.lo,
                                       well.hi, rule);
}

NormStudy norm_refinement(const WaveFunction& psi, double t, const WellConfig& cfg, int levels,
                          int start_panels, double rel_tol) {
  NormStudy study{{}, {}, false};
  int panels = start_panels;
  for (int level = 0; level < levels; ++level, panels *= 2) {
    study.panels.push_back(panels);
    study.values.push_back(norm(psi, t, cfg, numerics::CompositeRule{panels, 10}));
  }
  const std::size_t n = study.values.size();
  if (n >= 2) {
    const double last = study.values[n - 1];
    const double prev = study.values[n - 2];
    study.converged = std::isfinite(last) && std::abs(last - prev) <= rel_tol * std::abs(last);
  }
  return study;
}

double energy_expectation(const WaveFunction& psi, double t, const WellConfig& cfg, const EnergyOptions& opt) {
  const Interval well = well_interval(t, cfg);
  const double delta = opt.wall_margin * (well.hi - well.lo);
  const double h = delta / 3.0;
  const auto integrand = [&](double x) {
    const Complex dxx = numerics::differentiate([&](double s) { return psi(s, t); }, x, h, numerics::second_o6);
    return std::real(std::conj(psi(x, t)) * (-dxx));
  };
  const double bulk = numerics::integrate_composite(integrand, well.lo + delta, well.hi - delta, opt.rule);
  // Cubic through (0, 0), (d, f1), (2d, f2), (3d, f3), integrated over [0, d].
  const auto strip = [&](double wall, double direction) {
    const double f1 = integrand(wall + direction * delta);
    const double f2 = integrand(wall + direction * 2.0 * delta);
    const double f3 = integrand(wall + direction * 3.0 * delta);
    return delta * (19.0 * f1 - 5.0 * f2 + f3) / 24.0;
  };
  return bulk + strip(well.lo, 1.0) + strip(well.hi, -1.0);
}

double observed_order(std::span<const double> steps, std::span<const double> residuals) {
  if (steps.size() < 3 || steps.size() != residuals.size()) {
    throw Error(ErrorKind::InvalidConfig, "convergence study needs at least three steps and matching residuals");
  }
  for (std::size_t i = 1; i < steps.size(); ++i) {
    if (std::abs(steps[i] / steps[i - 1] - 0.5) > 1e-9) {
      throw Error(ErrorKind::InvalidConfig, "convergence study steps must halve");
    }
  }
  for (std::size_t i = 0; i < residuals.size(); ++i) {
    if (!(residuals[i] > 0.0) || !std::isfinite(residuals[i])) {
      throw Error(ErrorKind::NonMonotoneResiduals, "residuals must be positive and finite");
    }
    if (i > 0 && residuals[i] > kMonotoneFactor * residuals[i - 1]) {
      std::ostringstream os;
      os << "residual " << residuals[i] << " at step " << steps[i] << " did not drop below "
         << kMonotoneFactor << " x " << residuals[i - 1];
      throw Error(ErrorKind::NonMonotoneResiduals, os.str());
    }
  }
  return numerics::log_log_slope(steps, residuals);
}

double convergence_study(const std::function<double(double)>& residual, std::span<const double> steps) {
  std::vector<double> values;
  values.reserve(steps.size());
  for (double h : steps) values.push_back(residual(h));
  return observed_order(steps, values);
}

}  // namespace mbw::verify
