#ifndef BBFORCE_RATES_HPP_
#define BBFORCE_RATES_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bbforce/hydrogen.hpp"
#include "bbforce/quantities.hpp"
#include "bbforce/sphere.hpp"
#include "bbforce/stark.hpp"

namespace bbforce {

struct RateContribution {
  std::string label;
  double log10_rate = 0.0;  // -inf for a line with d2 == 0
};

/// A rate carried as log10(rate / s^-1). Room-temperature optical rates sit
/// near 1e-162 s^-1, so the log is authoritative and `rate` may be 0.
struct RateResult {
  double log10_rate = 0.0;
  double rate = 0.0;
  std::vector<RateContribution> contributions;
  Temperature temperature;
};

/// 10^log10 when it is a normal double, otherwise 0 (or +inf above range).
[[nodiscard]] double representable_pow10(double log10_value);

/// log10(exp(x) - 1) for x > 0 without overflow or cancellation.
[[nodiscard]] double log10_expm1(double x);

/// BBR-induced width
///   Gamma = e^2 / (3 pi c^3 hbar eps0) sum d2 |omega|^3 / (exp(hbar |omega| / kT) - 1).
/// Throws DomainError for T <= 0.
[[nodiscard]] RateResult bbr_width(const LineList& list, Temperature t);

struct LogTime {
  double log10_seconds = 0.0;
  [[nodiscard]] double seconds() const { return representable_pow10(log10_seconds); }
};

/// 1 / W for one named line. Throws DomainError for an unknown label.
[[nodiscard]] LogTime transition_time(const LineList& list, Temperature t, std::string_view label);

/// 21-cm F=0 -> F=1 absorption in the Rayleigh-Jeans limit, W = 3 A21 kT / (hbar omega21).
/// Linear in T. Throws DomainError for T <= 0.
[[nodiscard]] Rate hyperfine_rate(Temperature t);

/// The same rate with hbar omega21 and kT exchanged, 3 hbar omega21 A21 / kT.
/// Reported next to hyperfine_rate for comparison only.
[[nodiscard]] Rate hyperfine_rate_inverted_form(Temperature t);

/// Radiation-pressure estimate from one dominant line: (Omega/4pi) Gamma hbar omega / c.
/// Re-emission is isotropic and carries no net recoil.
[[nodiscard]] Force radiation_pressure_force(double solid_angle_fraction, Rate gamma,
                                             AngularFrequency omega);

struct CrossoverSample {
  Temperature temperature;
  double log10_dipole_force = 0.0;
  double log10_pressure_force = 0.0;
  std::string dominant_line;
};

struct CrossoverReport {
  Length radius;
  Length r;
  std::vector<CrossoverSample> samples;
  /// Temperature where the dipole force and the pressure estimate are equal,
  /// if they cross inside the search interval.
  std::optional<Temperature> crossover;
};

/// Compares |bb_force| (full-sum shift) with radiation_pressure_force at
/// distance r from the sphere. Samples `sample_temperatures` and bisects for
/// the crossover on [t_low, t_high].
[[nodiscard]] CrossoverSample dipole_vs_pressure(const LineList& list, Length radius, Length r,
                                                 Temperature t, const QuadratureConfig& cfg = {});
[[nodiscard]] CrossoverReport dipole_vs_pressure_crossover(
    const LineList& list, Length radius, Length r, const std::vector<Temperature>& sample_temperatures,
    Temperature t_low = Temperature{1000.0}, Temperature t_high = Temperature{20000.0},
    const QuadratureConfig& cfg = {});

}  // namespace bbforce

#endif  // BBFORCE_RATES_HPP_
