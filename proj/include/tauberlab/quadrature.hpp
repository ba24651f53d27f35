#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <queue>
#include <vector>

#include "tauberlab/errors.hpp"

namespace tauberlab {

namespace quad_detail {

// 15-point Kronrod nodes with the embedded 7-point Gauss rule (QUADPACK).
inline constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
inline constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
inline constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

template <typename T>
struct PanelResult {
  T kronrod;
  double error;
};

template <typename T, typename F>
PanelResult<T> gk15(const F& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  T resk{};
  T resg{};
  const T fc = f(c);
  resk += kWgk[7] * h * fc;
  resg += kWg[3] * h * fc;
  for (int j = 0; j < 7; ++j) {
    const double x = h * kXgk[j];
    const T f1 = f(c - x);
    const T f2 = f(c + x);
    resk += kWgk[j] * h * (f1 + f2);
    if (j % 2 == 1) resg += kWg[j / 2] * h * (f1 + f2);
  }
  return {resk, std::abs(resk - resg)};
}

template <typename T>
struct Panel {
  double a, b, error;
  T value;
  bool operator<(const Panel& o) const { return error < o.error; }
};

}  // namespace quad_detail

struct QuadOptions {
  double rel_tol = 1e-9;
  double abs_tol = 1e-300;
  int max_panels = 4000;
};

// Adaptive Gauss-Kronrod on [a, b].  Throws AccuracyError when the tolerance
// cannot be reached within the panel budget.
template <typename T, typename F>
T integrate(const F& f, double a, double b, const QuadOptions& opt = {}) {
  if (a == b) return T{};
  using P = quad_detail::Panel<T>;
  auto first = quad_detail::gk15<T>(f, a, b);
  std::priority_queue<P> panels;
  panels.push({a, b, first.error, first.kronrod});
  T total = first.kronrod;
  double total_err = first.error;
  int n = 1;
  while (total_err > std::max(opt.abs_tol, opt.rel_tol * std::abs(total))) {
    if (n >= opt.max_panels)
      throw AccuracyError("quadrature: panel budget exhausted", total_err);
    P worst = panels.top();
    panels.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid == worst.a || mid == worst.b)
      throw AccuracyError("quadrature: interval underflow", total_err);
    auto left = quad_detail::gk15<T>(f, worst.a, mid);
    auto right = quad_detail::gk15<T>(f, mid, worst.b);
    total += left.kronrod + right.kronrod - worst.value;
    total_err += left.error + right.error - worst.error;
    panels.push({worst.a, mid, left.error, left.kronrod});
    panels.push({mid, worst.b, right.error, right.kronrod});
    ++n;
  }
  return total;
}

// Integral over [0, inf) of a function known to be negligible beyond `radius`.
template <typename T, typename F>
T integrate_to(const F& f, double radius, const QuadOptions& opt = {}) {
  // Split log-spaced so endpoint behavior near 0 (possible x^a singularity
  // with a > -1) is resolved without a huge panel count.
  T total{};
  double lo = 0.0;
  double hi = std::min(1.0, radius);
  while (true) {
    total += integrate<T>(f, lo, hi, opt);
    if (hi >= radius) break;
    lo = hi;
    hi = std::min(hi * 8.0, radius);
  }
  return total;
}

}  // namespace tauberlab
