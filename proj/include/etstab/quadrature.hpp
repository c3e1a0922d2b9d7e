#ifndef ETSTAB_QUADRATURE_HPP
#define ETSTAB_QUADRATURE_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <queue>
#include <string>
#include <vector>

#include "etstab/common.hpp"

namespace etstab::detail {

// 15-point Kronrod rule with embedded 7-point Gauss (QUADPACK dqk15 constants).
inline constexpr double kGk15Nodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0};
inline constexpr double kKronrodWeights[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
inline constexpr double kGaussWeights[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

template <class T>
struct Panel {
  double a = 0.0;
  double b = 0.0;
  T value{};
  double error = 0.0;
};

template <class T, class F>
Panel<T> gk15(F&& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  T resk = kKronrodWeights[7] * f(mid);
  T resg = kGaussWeights[3] * f(mid);
  for (int i = 0; i < 7; ++i) {
    const double dx = half * kGk15Nodes[i];
    const T fsum = f(mid - dx) + f(mid + dx);
    resk += kKronrodWeights[i] * fsum;
    if (i % 2 == 1) resg += kGaussWeights[i / 2] * fsum;
  }
  Panel<T> out;
  out.a = a;
  out.b = b;
  out.value = resk * half;
  out.error = std::abs(resk - resg) * std::abs(half);
  if (std::isnan(out.error)) out.error = kInf;
  return out;
}

// Globally adaptive bisection, worst panel first.
template <class T, class F>
T integrate_adaptive(F&& f, double a, double b, const QuadratureConfig& cfg,
                     const char* what = "integral") {
  if (a == b) return T{};
  auto worse = [](const Panel<T>& x, const Panel<T>& y) { return x.error < y.error; };
  std::priority_queue<Panel<T>, std::vector<Panel<T>>, decltype(worse)> heap(worse);
  Panel<T> root = gk15<T>(f, a, b);
  T total = root.value;
  double err = root.error;
  heap.push(root);
  int panels = 1;
  auto tol = [&]() { return std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total)); };
  while (err > tol() && panels < cfg.max_subdivisions && !heap.empty()) {
    Panel<T> top = heap.top();
    heap.pop();
    const double mid = 0.5 * (top.a + top.b);
    if (mid <= top.a || mid >= top.b) continue;  // interval exhausted in double precision
    Panel<T> left = gk15<T>(f, top.a, mid);
    Panel<T> right = gk15<T>(f, mid, top.b);
    total += left.value + right.value - top.value;
    err += left.error + right.error - top.error;
    heap.push(left);
    heap.push(right);
    ++panels;
  }
  if (!(err <= tol()) || std::isnan(std::abs(total))) {
    throw QuadratureFailure(std::string(what) + ": adaptive quadrature did not converge (error " +
                            std::to_string(err) + " after " + std::to_string(panels) + " panels)");
  }
  return total;
}

// Integrate over [a, inf) by geometric extension of the upper endpoint.
// tail_bound(T) must bound |integral over [T, inf)|; it may return NaN/inf when
// no bound is available yet, in which case two consecutive negligible chunks
// terminate the expansion.
template <class T, class F, class B>
T integrate_doubling(F&& f, double a, const QuadratureConfig& cfg, B&& tail_bound,
                     const char* what = "tail integral") {
  QuadratureConfig chunk_cfg = cfg;
  chunk_cfg.abs_tol = 0.25 * cfg.abs_tol;
  double lo = a;
  double width = std::max(1.0, std::abs(a));
  T total{};
  int tiny_streak = 0;
  for (int chunk = 0; chunk < 64; ++chunk) {
    const double hi = lo + width;
    T piece = integrate_adaptive<T>(f, lo, hi, chunk_cfg, what);
    total += piece;
    const double tol = std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total));
    const double bound = tail_bound(hi);
    if (std::isfinite(bound) && bound <= 0.25 * tol) return total;
    tiny_streak = (std::abs(piece) <= 0.1 * tol) ? tiny_streak + 1 : 0;
    if (tiny_streak >= 2 && !(std::isfinite(bound) && bound > tol)) return total;
    lo = hi;
    width *= 2.0;
  }
  throw QuadratureFailure(std::string(what) + ": tail did not converge within 64 doublings");
}

}  // namespace etstab::detail

#endif  // ETSTAB_QUADRATURE_HPP
