#include "mbw/oracle_pde.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

namespace mbw::pde {

namespace {

struct Tridiagonal {
  std::vector<Complex> sub, diag, super;
  explicit Tridiagonal(std::size_t n) : sub(n), diag(n), super(n) {}
};

// Thomas algorithm without pivoting; overwrites rhs with the solution.
void solve_in_place(const Tridiagonal& a, std::vector<Complex>& rhs, std::vector<Complex>& scratch) {
  const std::size_t n = rhs.size();
  scratch.resize(n);
  Complex denom = a.diag[0];
  scratch[0] = a.super[0] / denom;
  rhs[0] /= denom;
  for (std::size_t i = 1; i < n; ++i) {
    denom = a.diag[i] - a.sub[i] * scratch[i - 1];
    scratch[i] = a.super[i] / denom;
    rhs[i] = (rhs[i] - a.sub[i] * rhs[i - 1]) / denom;
  }
  for (std::size_t i = n - 1; i-- > 0;) rhs[i] -= scratch[i] * rhs[i + 1];
}

}  // namespace

void PropagationConfig::validate(const WellConfig& cfg) const {
  if (n_space < 64) throw Error(ErrorKind::InvalidConfig, "n_space must be >= 64");
  if (!(dt > 0.0)) throw Error(ErrorKind::InvalidConfig, "dt must be positive");
  cfg.check_time(t_start);
  cfg.check_time(t_end);
  if (t_end < t_start) throw Error(ErrorKind::InvalidConfig, "t_end must not precede t_start");
  if (t_end > t_start && dt > (t_end - t_start) / 100.0) {
    throw Error(ErrorKind::InvalidConfig, "dt must be at most (t_end - t_start) / 100");
  }
  if (family.kind == FamilyKind::MovingConfluent) check_confluent_regularity(family.confluent_config());
}

SampledField sample(const WaveFunction& state, double t, int n_points, const WellConfig& cfg) {
  const double lo = fixed_wall_position(cfg);
  const double hi = wall_position(t, cfg);
  std::vector<Complex> values(static_cast<std::size_t>(n_points));
  const double h = (hi - lo) / (n_points - 1);
  for (int i = 0; i < n_points; ++i) {
    const double x = (i == n_points - 1) ? hi : lo + i * h;
    values[static_cast<std::size_t>(i)] = state(x, t);
  }
  return SampledField(t, lo, hi, std::move(values));
}

double l2_norm(const SampledField& a) {
  const std::size_t n = a.n_points();
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double w = (i == 0 || i == n - 1) ? 0.5 : 1.0;
    sum += w * std::norm(a[i]);
  }
  return std::sqrt(sum * a.spacing());
}

double l2_distance(const SampledField& a, const SampledField& b) {
  if (a.n_points() != b.n_points() || a.x_min() != b.x_min() || a.x_max() != b.x_max()) {
    throw Error(ErrorKind::GridMismatch, "l2_distance needs identical grids");
  }
  const std::size_t n = a.n_points();
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double w = (i == 0 || i == n - 1) ? 0.5 : 1.0;
    sum += w * std::norm(a[i] - b[i]);
  }
  return std::sqrt(sum * a.spacing());
}

Propagation propagate(const SampledField& initial, const PropagationConfig& pc, const WellConfig& cfg) {
  pc.validate(cfg);
  const auto n = static_cast<std::size_t>(pc.n_space);
  if (initial.n_points() != n) throw Error(ErrorKind::GridMismatch, "initial field must have n_space points");
  const double ell0 = wall_position(pc.t_start, cfg);
  if (initial.x_min() != fixed_wall_position(cfg) || std::abs(initial.x_max() - ell0) > 1e-12 * ell0) {
    throw Error(ErrorKind::GridMismatch, "initial field must span the well at t_start");
  }
  if (initial.t() != pc.t_start) throw Error(ErrorKind::GridMismatch, "initial field is not sampled at t_start");
  double initial_max = 0.0;
  for (const auto& v : initial.values()) initial_max = std::max(initial_max, std::abs(v));
  if (std::abs(initial[0]) > 1e-12 * initial_max || std::abs(initial[n - 1]) > 1e-12 * initial_max) {
    throw Error(ErrorKind::InvalidConfig, "initial field must vanish at the walls");
  }

  const double norm_start = l2_norm(initial);
  if (pc.t_end == pc.t_start) return Propagation{initial, 0, norm_start, norm_start};

  const int steps = static_cast<int>(std::ceil((pc.t_end - pc.t_start) / pc.dt - 1e-9));
  const double dt = (pc.t_end - pc.t_start) / steps;
  const std::size_t m = n - 2;  // interior unknowns
  const double hs = 1.0 / static_cast<double>(n - 1);
  const double wall_speed = 4.0 * cfg.length();
  const Complex i1(0.0, 1.0);

  std::vector<Complex> chi(m), rhs(m), scratch(m);
  for (std::size_t j = 0; j < m; ++j) chi[j] = std::sqrt(ell0) * initial[j + 1];

  Tridiagonal lhs(m);
  std::vector<Complex> rsub(m), rdiag(m), rsuper(m);
  for (int step = 0; step < steps; ++step) {
    const double t = pc.t_start + step * dt;
    const double t_half = t + 0.5 * dt;
    const double ell = wall_position(t_half, cfg);
    const double advect = wall_speed / ell / (4.0 * hs);
    const Complex diffuse = i1 / (ell * ell * hs * hs);
    for (std::size_t j = 0; j < m; ++j) {
      const double sigma = static_cast<double>(j + 1) * hs;
      const double v = family_potential(pc.family, sigma * ell, t_half, cfg).value();
      const Complex m_sub = -advect * (2.0 * sigma - hs) + diffuse;
      const Complex m_diag = -2.0 * diffuse - i1 * v;
      const Complex m_super = advect * (2.0 * sigma + hs) + diffuse;
      lhs.sub[j] = -0.5 * dt * m_sub;
      lhs.diag[j] = 1.0 - 0.5 * dt * m_diag;
      lhs.super[j] = -0.5 * dt * m_super;
      rsub[j] = 0.5 * dt * m_sub;
      rdiag[j] = 1.0 + 0.5 * dt * m_diag;
      rsuper[j] = 0.5 * dt * m_super;
      const double off = (j > 0 ? std::abs(lhs.sub[j]) : 0.0) + (j + 1 < m ? std::abs(lhs.super[j]) : 0.0);
      if (std::abs(lhs.diag[j]) < off) {
        std::ostringstream os;
        os << "Crank-Nicolson matrix not diagonally dominant at step " << step << ", row " << j;
        throw Error(ErrorKind::UnstableRun, os.str());
      }
    }
    for (std::size_t j = 0; j < m; ++j) {
      Complex r = rdiag[j] * chi[j];
      if (j > 0) r += rsub[j] * chi[j - 1];
      if (j + 1 < m) r += rsuper[j] * chi[j + 1];
      rhs[j] = r;
    }
    solve_in_place(lhs, rhs, scratch);
    chi.swap(rhs);

    const double ell_next = wall_position(t + dt, cfg);
    const double limit = 1e3 * initial_max * std::sqrt(ell_next);
    for (const auto& c : chi) {
      if (!(std::abs(c) <= limit)) {
        std::ostringstream os;
        os << "amplitude exceeded 1e3 x initial maximum at t = " << t + dt;
        throw Error(ErrorKind::UnstableRun, os.str());
      }
    }
  }

  const double ell_end = wall_position(pc.t_end, cfg);
  std::vector<Complex> values(n, Complex{});
  for (std::size_t j = 0; j < m; ++j) values[j + 1] = chi[j] / std::sqrt(ell_end);
  SampledField out(pc.t_end, fixed_wall_position(cfg), ell_end, std::move(values));
  const double norm_end = l2_norm(out);
  return Propagation{std::move(out), steps, norm_start, norm_end};
}

}  // namespace mbw::pde
