#ifndef BBFORCE_STARK_HPP_
#define BBFORCE_STARK_HPP_

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "bbforce/hydrogen.hpp"
#include "bbforce/quantities.hpp"

namespace bbforce {

struct QuadratureConfig {
  double rel_tol = 1e-10;
  /// Half-width of the symmetric window around the pole, as a fraction of |y|.
  double pole_window = 1e-3;
  int max_subdivisions = 4000;

  /// rel_tol in (0, 1e-4], pole_window in (0, 0.1]; throws DomainError.
  void validate() const;
};

/// Thermal kernel
///   f(y) = PV int_0^inf x^3/(e^x - 1) [1/(y+x) + 1/(y-x)] dx.
/// f is odd in y, f(0) = 0, and f(y) -> 2 pi^4 / (15 y) for |y| >> 1.
/// Throws DomainError for non-finite y, ConvergenceError if quadrature stalls.
[[nodiscard]] double f_integral(double y, const QuadratureConfig& cfg = {});

enum class ShiftMethod { full_sum, t4_approx };

struct ShiftContribution {
  std::string label;
  Energy shift;
};

struct ShiftResult {
  Energy shift;
  std::vector<ShiftContribution> contributions;
  Temperature temperature;
  ShiftMethod method = ShiftMethod::full_sum;

  /// Delta E / hbar, the angular-frequency readout (rad/s).
  [[nodiscard]] double angular_shift() const;
  /// Delta E / h in cycles per second.
  [[nodiscard]] double frequency_shift_hz() const;
};

/// Isotropic-bath level shift
///   dE = e^2 (kT)^3 / (6 pi^2 eps0 (c hbar)^3) sum_m f(-hbar omega_m / kT) d2_m.
/// Throws DomainError for T <= 0.
[[nodiscard]] ShiftResult thermal_shift(const LineList& list, Temperature t,
                                        const QuadratureConfig& cfg = {});

/// Low-temperature closed form for H(1s):
///   dE = -3 pi^3 (kT)^4 / (5 alpha^3 (m_e c^2)^3).
[[nodiscard]] Energy approx_shift_1s(Temperature t);

struct ConvergenceRow {
  int n_max = 0;
  Energy shift;
  /// |shift - previous row| / |shift|; zero on the first row.
  double relative_change = 0.0;
};

/// Re-runs thermal_shift for each n_max in the sweep using make_list(n_max).
[[nodiscard]] std::vector<ConvergenceRow> shift_convergence_report(
    const std::function<LineList(int)>& make_list, Temperature t, std::span<const int> n_max_sweep,
    const QuadratureConfig& cfg = {});

/// Temperature -> isotropic shift of one level; used to build prefactors.
using ShiftModel = std::function<Energy(Temperature)>;

/// approx_shift_1s.
[[nodiscard]] ShiftModel approx_shift_model();
/// thermal_shift over a captured line list; T == 0 maps to zero shift.
[[nodiscard]] ShiftModel full_shift_model(LineList list, QuadratureConfig cfg = {});

}  // namespace bbforce

#endif  // BBFORCE_STARK_HPP_
