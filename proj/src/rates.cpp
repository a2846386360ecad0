#include "bbforce/rates.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <limits>

#include "bbforce/error.hpp"

namespace bbforce {

namespace {

using constants::pi;
constexpr double kLn10 = 2.302585092994045684017991454684364208;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log10_sum(const std::vector<RateContribution>& parts) {
  double peak = kNegInf;
  for (const auto& p : parts) peak = std::max(peak, p.log10_rate);
  if (peak == kNegInf) return kNegInf;
  double sum = 0.0;
  for (const auto& p : parts) sum += std::pow(10.0, p.log10_rate - peak);
  return peak + std::log10(sum);
}

void require_positive(Temperature t, const char* who) {
  if (!(t.value() > 0.0)) throw DomainError(std::string(who) + ": temperature must be > 0");
}

}  // namespace

double representable_pow10(double log10_value) {
  if (log10_value < std::log10(DBL_MIN)) return 0.0;
  if (log10_value > std::log10(DBL_MAX)) return std::numeric_limits<double>::infinity();
  return std::pow(10.0, log10_value);
}

double log10_expm1(double x) {
  if (!(x > 0.0)) throw DomainError("log10_expm1 requires x > 0");
  if (x > 20.0) return (x + std::log1p(-std::exp(-x))) / kLn10;
  return std::log10(std::expm1(x));
}

RateResult bbr_width(const LineList& list, Temperature t) {
  require_positive(t, "bbr_width");
  const double kt = thermal_energy(t).value();
  const double c = constants::speed_of_light;
  const double prefactor = constants::elementary_charge * constants::elementary_charge /
                           (3.0 * pi * c * c * c * constants::hbar * constants::epsilon0);
  RateResult out;
  out.temperature = t;
  out.contributions.reserve(list.size());
  for (const auto& line : list.transitions()) {
    const double w = std::abs(line.omega.value());
    const double x = constants::hbar * w / kt;
    const double log_part = line.d2 > 0.0
                                ? std::log10(prefactor * line.d2 * w * w * w) - log10_expm1(x)
                                : kNegInf;
    out.contributions.push_back({line.label, log_part});
  }
  out.log10_rate = log10_sum(out.contributions);
  out.rate = representable_pow10(out.log10_rate);
  return out;
}

LogTime transition_time(const LineList& list, Temperature t, std::string_view label) {
  const auto width = bbr_width(list, t);
  const auto it = std::find_if(width.contributions.begin(), width.contributions.end(),
                               [&](const auto& c) { return c.label == label; });
  if (it == width.contributions.end()) {
    throw DomainError("transition_time: no line labelled '" + std::string(label) + "'");
  }
  return {-it->log10_rate};
}

Rate hyperfine_rate(Temperature t) {
  require_positive(t, "hyperfine_rate");
  const auto hf = hyperfine_constants();
  return Rate{3.0 * hf.a21.value() * thermal_energy(t).value() /
              (constants::hbar * hf.omega21.value())};
}

Rate hyperfine_rate_inverted_form(Temperature t) {
  require_positive(t, "hyperfine_rate_inverted_form");
  const auto hf = hyperfine_constants();
  return Rate{3.0 * constants::hbar * hf.omega21.value() * hf.a21.value() /
              thermal_energy(t).value()};
}

Force radiation_pressure_force(double solid_angle_fraction, Rate gamma, AngularFrequency omega) {
  return Force{solid_angle_fraction * gamma.value() * constants::hbar * std::abs(omega.value()) /
               constants::speed_of_light};
}

CrossoverSample dipole_vs_pressure(const LineList& list, Length radius, Length r, Temperature t,
                                   const QuadratureConfig& cfg) {
  if (list.empty()) throw DomainError("dipole_vs_pressure: empty line list");
  CrossoverSample s;
  s.temperature = t;
  const Energy shift = thermal_shift(list, t, cfg).shift;
  s.log10_dipole_force = std::log10(std::abs(bb_force(shift, radius, r).value()));

  const auto width = bbr_width(list, t);
  std::size_t dominant = 0;
  for (std::size_t i = 1; i < width.contributions.size(); ++i) {
    if (width.contributions[i].log10_rate > width.contributions[dominant].log10_rate) dominant = i;
  }
  const auto& line = list.transitions()[dominant];
  s.dominant_line = line.label;
  const double fraction = solid_angle(radius, r) / (4.0 * pi);
  s.log10_pressure_force =
      std::log10(fraction) + width.contributions[dominant].log10_rate +
      std::log10(constants::hbar * std::abs(line.omega.value()) / constants::speed_of_light);
  return s;
}

CrossoverReport dipole_vs_pressure_crossover(const LineList& list, Length radius, Length r,
                                             const std::vector<Temperature>& sample_temperatures,
                                             Temperature t_low, Temperature t_high,
                                             const QuadratureConfig& cfg) {
  CrossoverReport report;
  report.radius = radius;
  report.r = r;
  for (const auto t : sample_temperatures) {
    report.samples.push_back(dipole_vs_pressure(list, radius, r, t, cfg));
  }
  auto margin = [&](Temperature t) {
    const auto s = dipole_vs_pressure(list, radius, r, t, cfg);
    return s.log10_dipole_force - s.log10_pressure_force;
  };
  double lo = t_low.value();
  double hi = t_high.value();
  double m_lo = margin(Temperature{lo});
  const double m_hi = margin(Temperature{hi});
  if (std::signbit(m_lo) == std::signbit(m_hi)) return report;
  for (int iter = 0; iter < 200 && hi - lo > 1e-6 * hi; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const double m_mid = margin(Temperature{mid});
    if (std::signbit(m_mid) == std::signbit(m_lo)) {
      lo = mid;
      m_lo = m_mid;
    } else {
      hi = mid;
    }
  }
  report.crossover = Temperature{0.5 * (lo + hi)};
  return report;
}

}  // namespace bbforce
