#include "bbforce/stark.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "bbforce/error.hpp"
#include "bbforce/quadrature.hpp"

namespace bbforce {

namespace {

using constants::pi;

// x^3 / (e^x - 1), with the x -> 0 limit.
double planck_weight(double x) {
  if (x <= 0.0) return 0.0;
  if (x > 600.0) return x * x * x * std::exp(-x);
  return x * x * x / std::expm1(x);
}

// int_a^inf x^3 e^-x dx, which bounds the Planck weight's tail.
double planck_tail(double a) {
  return std::exp(-a) * (((a + 3.0) * a + 6.0) * a + 6.0);
}

double f_positive(double y, const QuadratureConfig& cfg) {
  const double tol = cfg.rel_tol;
  const double half_window = cfg.pole_window * y;
  const double lo_edge = y - half_window;
  const double hi_edge = y + half_window;

  auto kernel = [y](double x) { return planck_weight(x) * (2.0 * y) / ((y - x) * (y + x)); };
  // Smooth factor of the pole: kernel(x) = smooth(x) / (y - x).
  auto smooth = [y](double x) { return 2.0 * y * planck_weight(x) / (y + x); };

  double total = 0.0;
  double total_abs = 0.0;
  auto accumulate = [&](const quadrature::Result& r) {
    total += r.value;
    total_abs += r.abs_value;
  };
  auto integrate_panel = [&](auto&& fn, double a, double b) {
    accumulate(quadrature::integrate(fn, a, b, tol, 0.1 * tol * total_abs, cfg.max_subdivisions));
  };
  // Upper bound on |kernel| integrated over [a, b] when [a, b] avoids the pole
  // and lies where the Planck weight is already decreasing.
  auto panel_bound = [&](double a, double b) {
    const double nearest = (b <= y) ? b : a;
    return planck_weight(a) * 2.0 * y / std::abs((y - nearest) * (y + nearest)) * (b - a);
  };
  auto negligible = [&](double bound) { return bound < 1e-3 * tol * total_abs; };

  // Below the pole: doubling panels so the thermal bulk near x ~ 3 is resolved
  // even when the pole sits far out in the tail.
  double a = 0.0;
  double next = 1.0;
  while (a < lo_edge) {
    const double b = std::min(next, lo_edge);
    if (!(a > 3.0 && negligible(panel_bound(a, b)))) integrate_panel(kernel, a, b);
    a = b;
    next *= 2.0;
  }

  // PV over [y - w, y + w] folded onto [0, w]:
  //   PV int smooth(y+u)/(-u) du = -int_0^w (smooth(y+u) - smooth(y-u)) / u du.
  integrate_panel([&](double u) { return -(smooth(y + u) - smooth(y - u)) / u; }, 0.0,
                  half_window);

  // Above the pole, out to where the remaining tail is below tolerance and
  // never closer than ten half-windows.
  a = hi_edge;
  double width = 9.0 * half_window;
  const double min_cutoff = y + 10.0 * half_window;
  for (;;) {
    const double tail_bound = 2.0 * y / ((a - y) * (a + y)) * planck_tail(a);
    if (a >= min_cutoff && a > 3.0 && negligible(tail_bound)) break;
    const double b = a + width;
    if (!(a > 3.0 && negligible(panel_bound(a, b)))) integrate_panel(kernel, a, b);
    a = b;
    width = (a >= min_cutoff) ? std::max(1.0, 2.0 * width) : width;
  }
  return total;
}

}  // namespace

void QuadratureConfig::validate() const {
  if (!(rel_tol > 0.0 && rel_tol <= 1e-4)) {
    throw DomainError("quadrature rel_tol must lie in (0, 1e-4]");
  }
  if (!(pole_window > 0.0 && pole_window <= 0.1)) {
    throw DomainError("quadrature pole_window must lie in (0, 0.1]");
  }
  if (max_subdivisions < 1) throw DomainError("quadrature max_subdivisions must be >= 1");
}

double f_integral(double y, const QuadratureConfig& cfg) {
  cfg.validate();
  if (!std::isfinite(y)) throw DomainError("f_integral: y must be finite");
  if (y == 0.0) return 0.0;
  return y > 0.0 ? f_positive(y, cfg) : -f_positive(-y, cfg);
}

double ShiftResult::angular_shift() const { return shift.value() / constants::hbar; }

double ShiftResult::frequency_shift_hz() const {
  return shift.value() / (2.0 * pi * constants::hbar);
}

ShiftResult thermal_shift(const LineList& list, Temperature t, const QuadratureConfig& cfg) {
  if (!(t.value() > 0.0)) throw DomainError("thermal_shift: temperature must be > 0");
  const double kt = thermal_energy(t).value();
  const double chbar = constants::speed_of_light * constants::hbar;
  const double prefactor = constants::elementary_charge * constants::elementary_charge * kt * kt *
                           kt / (6.0 * pi * pi * constants::epsilon0 * chbar * chbar * chbar);

  ShiftResult out;
  out.temperature = t;
  out.method = ShiftMethod::full_sum;
  out.contributions.reserve(list.size());
  for (const auto& line : list.transitions()) {
    const double y = -energy_of(line.omega).value() / kt;
    const Energy part{prefactor * f_integral(y, cfg) * line.d2};
    out.contributions.push_back({line.label, part});
    out.shift += part;
  }
  return out;
}

Energy approx_shift_1s(Temperature t) {
  const double kt = thermal_energy(t).value();
  const double mc2 = constants::electron_rest_energy;
  const double a = constants::fine_structure;
  return Energy{-3.0 * pi * pi * pi * (kt * kt) * (kt * kt) / (5.0 * a * a * a * mc2 * mc2 * mc2)};
}

std::vector<ConvergenceRow> shift_convergence_report(
    const std::function<LineList(int)>& make_list, Temperature t, std::span<const int> n_max_sweep,
    const QuadratureConfig& cfg) {
  std::vector<ConvergenceRow> rows;
  rows.reserve(n_max_sweep.size());
  for (const int n : n_max_sweep) {
    const Energy shift = thermal_shift(make_list(n), t, cfg).shift;
    const double change =
        rows.empty() ? 0.0 : std::abs((shift - rows.back().shift) / shift);
    rows.push_back({n, shift, change});
  }
  return rows;
}

ShiftModel approx_shift_model() {
  return [](Temperature t) { return approx_shift_1s(t); };
}

ShiftModel full_shift_model(LineList list, QuadratureConfig cfg) {
  return [list = std::move(list), cfg](Temperature t) {
    if (t.value() == 0.0) return Energy{};
    return thermal_shift(list, t, cfg).shift;
  };
}

}  // namespace bbforce
