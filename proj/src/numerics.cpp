#include "mbw/numerics.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

namespace mbw::numerics {

namespace {

GaussLegendreRule build_rule(int n) {
  GaussLegendreRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  const auto un = static_cast<unsigned>(n);
  for (int i = 0; i < n; ++i) {
    // Chebyshev-like initial guess, then Newton on P_n.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      const double p = std::legendre(un, x);
      const double p_prev = std::legendre(un - 1, x);
      dp = n * (x * p - p_prev) / (x * x - 1.0);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double p = std::legendre(un, x);
    const double p_prev = std::legendre(un - 1, x);
    dp = n * (x * p - p_prev) / (x * x - 1.0);
    rule.nodes[static_cast<std::size_t>(i)] = x;
    rule.weights[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

double adaptive_step(const std::function<double(double)>& f, double a, double b, double whole,
                     double tol, int depth) {
  const double mid = 0.5 * (a + b);
  const CompositeRule one{1, 10};
  const double left = integrate_composite(f, a, mid, one);
  const double right = integrate_composite(f, mid, b, one);
  const double split = left + right;
  if (depth <= 0 || std::abs(split - whole) <= tol) return split;
  return adaptive_step(f, a, mid, left, 0.5 * tol, depth - 1) +
         adaptive_step(f, mid, b, right, 0.5 * tol, depth - 1);
}

}  // namespace

const GaussLegendreRule& gauss_legendre(int n) {
  if (n < 1) throw Error(ErrorKind::InvalidConfig, "Gauss-Legendre rule needs n >= 1");
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<GaussLegendreRule>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[n];
  if (!slot) {
    if (n == 1) {
      slot = std::make_unique<GaussLegendreRule>(GaussLegendreRule{{0.0}, {2.0}});
    } else {
      slot = std::make_unique<GaussLegendreRule>(build_rule(n));
    }
  }
  return *slot;
}

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double abs_tol, int max_depth) {
  if (a == b) return 0.0;
  const double whole = integrate_composite(f, a, b, CompositeRule{1, 10});
  return adaptive_step(f, a, b, whole, abs_tol, max_depth);
}

double integrate_simpson(const std::function<double(double)>& f, double a, double b,
                         int intervals) {
  if (intervals < 2 || intervals % 2 != 0) {
    throw Error(ErrorKind::InvalidConfig, "Simpson rule needs an even number of intervals");
  }
  const double h = (b - a) / intervals;
  double sum = f(a) + f(b);
  for (int i = 1; i < intervals; ++i) sum += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return sum * h / 3.0;
}

double log_log_slope(std::span<const double> steps, std::span<const double> values) {
  const std::size_t n = steps.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double lx = std::log(steps[i]);
    const double ly = std::log(values[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double dn = static_cast<double>(n);
  return (dn * sxy - sx * sy) / (dn * sxx - sx * sx);
}

double x_minus_sin(double x) {
  if (std::abs(x) > 0.25) return x - std::sin(x);
  // sum_{k>=1} (-1)^{k+1} x^{2k+1} / (2k+1)!
  const double x2 = x * x;
  double term = x * x2 / 6.0;
  double sum = term;
  for (int k = 2; k <= 7; ++k) {
    term *= -x2 / ((2.0 * k) * (2.0 * k + 1.0));
    sum += term;
  }
  return sum;
}

double sin_minus_x_cos(double x) {
  if (std::abs(x) > 0.25) return std::sin(x) - x * std::cos(x);
  // sum_{k>=1} (-1)^{k+1} 2k x^{2k+1} / (2k+1)!
  const double x2 = x * x;
  double power = x * x2 / 6.0;  // x^{2k+1} / (2k+1)! at k = 1
  double sum = 2.0 * power;
  for (int k = 2; k <= 7; ++k) {
    power *= -x2 / ((2.0 * k) * (2.0 * k + 1.0));
    sum += 2.0 * k * power;
  }
  return sum;
}

}  // namespace mbw::numerics
