#ifndef BBFORCE_QUADRATURE_HPP_
#define BBFORCE_QUADRATURE_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <vector>

#include "bbforce/error.hpp"

namespace bbforce::quadrature {

struct Result {
  double value = 0.0;
  double abs_error = 0.0;
  /// Integral of |f|, for relative tolerances on oscillating integrands.
  double abs_value = 0.0;
  int subdivisions = 0;
};

namespace detail {

// 7-point Gauss / 15-point Kronrod nodes on [-1, 1], symmetric half.
inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b, value, error, abs_value;
  bool operator<(const Panel& o) const { return error < o.error; }
};

template <class F>
Panel gauss_kronrod_15(F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  double abs_k = std::abs(fc) * kWgk[7];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double f1 = f(center - dx);
    const double f2 = f(center + dx);
    kronrod += kWgk[j] * (f1 + f2);
    abs_k += kWgk[j] * (std::abs(f1) + std::abs(f2));
    if (j % 2 == 1) gauss += kWg[j / 2] * (f1 + f2);
  }
  return {a, b, kronrod * half, std::abs((kronrod - gauss) * half), abs_k * std::abs(half)};
}

}  // namespace detail

/// Globally adaptive G7K15 on [a, b]: bisects the panel with the largest error
/// estimate until the summed estimate meets max(abs_tol, rel_tol * |I|).
/// Throws ConvergenceError when max_subdivisions is exhausted.
template <class F>
Result integrate(F&& f, double a, double b, double rel_tol, double abs_tol = 0.0,
                 int max_subdivisions = 2000) {
  if (a == b) return {};
  std::priority_queue<detail::Panel> heap;
  heap.push(detail::gauss_kronrod_15(f, a, b));
  double total = heap.top().value;
  double error = heap.top().error;
  double abs_total = heap.top().abs_value;
  int splits = 0;
  auto target = [&] { return std::max(abs_tol, rel_tol * std::abs(total)); };
  while (error > target()) {
    if (splits >= max_subdivisions) {
      throw ConvergenceError("adaptive quadrature exceeded subdivision limit", total, error);
    }
    const detail::Panel worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      throw ConvergenceError("adaptive quadrature panel underflow", total, error);
    }
    const auto left = detail::gauss_kronrod_15(f, worst.a, mid);
    const auto right = detail::gauss_kronrod_15(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    abs_total += left.abs_value + right.abs_value - worst.abs_value;
    heap.push(left);
    heap.push(right);
    ++splits;
  }
  // Re-sum from the panels; the running update drifts by rounding.
  Result out;
  out.subdivisions = splits;
  std::vector<detail::Panel> panels;
  panels.reserve(heap.size());
  while (!heap.empty()) {
    panels.push_back(heap.top());
    heap.pop();
  }
  std::sort(panels.begin(), panels.end(),
            [](const auto& l, const auto& r) { return l.a < r.a; });
  for (const auto& p : panels) {
    out.value += p.value;
    out.abs_error += p.error;
    out.abs_value += p.abs_value;
  }
  return out;
}

}  // namespace bbforce::quadrature

#endif  // BBFORCE_QUADRATURE_HPP_
