#pragma once

// Central finite-difference stencils and Gauss-Legendre quadrature.

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "mbw/core_types.hpp"

namespace mbw::numerics {

/// Symmetric central stencil: coefficients on offsets -r..r in units of h,
/// divided by h^derivative.
struct Stencil {
  int derivative;
  int order;
  std::span<const double> coefficients;

  int radius() const noexcept { return static_cast<int>(coefficients.size() / 2); }
};

inline constexpr std::array<double, 3> kD1O2{-0.5, 0.0, 0.5};
inline constexpr std::array<double, 5> kD1O4{1.0 / 12, -2.0 / 3, 0.0, 2.0 / 3, -1.0 / 12};
inline constexpr std::array<double, 7> kD1O6{-1.0 / 60, 3.0 / 20, -3.0 / 4, 0.0,
                                             3.0 / 4,   -3.0 / 20, 1.0 / 60};
inline constexpr std::array<double, 3> kD2O2{1.0, -2.0, 1.0};
inline constexpr std::array<double, 5> kD2O4{-1.0 / 12, 4.0 / 3, -5.0 / 2, 4.0 / 3, -1.0 / 12};
inline constexpr std::array<double, 7> kD2O6{1.0 / 90, -3.0 / 20, 3.0 / 2, -49.0 / 18,
                                             3.0 / 2,  -3.0 / 20, 1.0 / 90};
inline constexpr std::array<double, 7> kD3O4{1.0 / 8,   -1.0, 13.0 / 8, 0.0,
                                             -13.0 / 8, 1.0,  -1.0 / 8};

inline constexpr Stencil first_o2{1, 2, kD1O2};
inline constexpr Stencil first_o4{1, 4, kD1O4};
inline constexpr Stencil first_o6{1, 6, kD1O6};
inline constexpr Stencil second_o2{2, 2, kD2O2};
inline constexpr Stencil second_o4{2, 4, kD2O4};
inline constexpr Stencil second_o6{2, 6, kD2O6};
inline constexpr Stencil third_o4{3, 4, kD3O4};

/// Apply a stencil to f around x. Works for any f returning double or Complex.
template <class F>
auto differentiate(F&& f, double x, double h, const Stencil& s) {
  using R = decltype(f(x));
  R acc{};
  const int r = s.radius();
  for (int j = -r; j <= r; ++j) {
    const double c = s.coefficients[static_cast<std::size_t>(j + r)];
    if (c != 0.0) acc += c * f(x + j * h);
  }
  double scale = 1.0;
  for (int k = 0; k < s.derivative; ++k) scale *= h;
  return acc / scale;
}

/// Nodes and weights on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule (Newton iteration on P_n). Cached per n.
const GaussLegendreRule& gauss_legendre(int n);

struct CompositeRule {
  int panels = 64;
  int nodes = 10;
};

template <class F>
auto integrate_composite(F&& f, double a, double b, CompositeRule rule = {}) {
  using R = decltype(f(a));
  const auto& gl = gauss_legendre(rule.nodes);
  const double width = (b - a) / rule.panels;
  R total{};
  for (int p = 0; p < rule.panels; ++p) {
    const double lo = a + p * width;
    const double mid = lo + 0.5 * width;
    R panel{};
    for (std::size_t k = 0; k < gl.nodes.size(); ++k) {
      panel += gl.weights[k] * f(mid + 0.5 * width * gl.nodes[k]);
    }
    total += 0.5 * width * panel;
  }
  return total;
}

/// Adaptive bisection with a 10-point Gauss-Legendre panel rule.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double abs_tol = 1e-12, int max_depth = 40);

/// Composite Simpson with an even number of intervals.
double integrate_simpson(const std::function<double(double)>& f, double a, double b,
                         int intervals);

/// Least-squares slope of log(values) against log(steps).
double log_log_slope(std::span<const double> steps, std::span<const double> values);

/// x - sin x without cancellation for small |x|.
double x_minus_sin(double x);
/// sin x - x cos x without cancellation for small |x|.
double sin_minus_x_cos(double x);

}  // namespace mbw::numerics
