#ifndef BBFORCE_QUANTITIES_HPP_
#define BBFORCE_QUANTITIES_HPP_

#include <compare>
#include <string_view>

namespace bbforce {

// CODATA 2018. Everything downstream reads constants from here and nowhere else.
namespace constants {
inline constexpr double hbar = 1.054571817e-34;            // J s
inline constexpr double boltzmann = 1.380649e-23;          // J/K
inline constexpr double elementary_charge = 1.602176634e-19;  // C
inline constexpr double epsilon0 = 8.8541878128e-12;       // F/m
inline constexpr double speed_of_light = 299792458.0;      // m/s
inline constexpr double electron_rest_energy = 8.1871057769e-14;  // J
inline constexpr double electron_rest_energy_ev = 0.51099895000e6;
inline constexpr double proton_mass = 1.67262192369e-27;   // kg
inline constexpr double gravitational = 6.67430e-11;       // m^3 kg^-1 s^-2
inline constexpr double fine_structure = 7.2973525693e-3;
inline constexpr double bohr_radius = 5.29177210903e-11;   // m

inline constexpr double pi = 3.141592653589793238462643383279502884;

inline constexpr double electron_mass =
    electron_rest_energy / (speed_of_light * speed_of_light);
/// E_h = alpha^2 m_e c^2.
inline constexpr double hartree =
    fine_structure * fine_structure * electron_rest_energy;
}  // namespace constants

enum class Dim {
  energy,
  angular_frequency,
  length,
  temperature,
  force,
  rate,
  dimensionless,
};

constexpr std::string_view dim_name(Dim d) {
  switch (d) {
    case Dim::energy: return "J";
    case Dim::angular_frequency: return "rad/s";
    case Dim::length: return "m";
    case Dim::temperature: return "K";
    case Dim::force: return "N";
    case Dim::rate: return "1/s";
    case Dim::dimensionless: return "1";
  }
  return "?";
}

/// SI magnitude tagged with one of the seven dimensions. Mixing tags does not
/// compile; scaling by a plain double and same-tag ratios are allowed.
template <Dim D>
class Quantity {
 public:
  static constexpr Dim dimension = D;

  constexpr Quantity() = default;
  constexpr explicit Quantity(double si) : value_(si) {}

  [[nodiscard]] constexpr double value() const { return value_; }

  constexpr Quantity& operator+=(Quantity o) { value_ += o.value_; return *this; }
  constexpr Quantity& operator-=(Quantity o) { value_ -= o.value_; return *this; }
  constexpr Quantity& operator*=(double s) { value_ *= s; return *this; }
  constexpr Quantity& operator/=(double s) { value_ /= s; return *this; }

  friend constexpr Quantity operator+(Quantity a, Quantity b) { return Quantity{a.value_ + b.value_}; }
  friend constexpr Quantity operator-(Quantity a, Quantity b) { return Quantity{a.value_ - b.value_}; }
  friend constexpr Quantity operator-(Quantity a) { return Quantity{-a.value_}; }
  friend constexpr Quantity operator*(Quantity a, double s) { return Quantity{a.value_ * s}; }
  friend constexpr Quantity operator*(double s, Quantity a) { return Quantity{a.value_ * s}; }
  friend constexpr Quantity operator/(Quantity a, double s) { return Quantity{a.value_ / s}; }
  friend constexpr double operator/(Quantity a, Quantity b) { return a.value_ / b.value_; }

  friend constexpr auto operator<=>(Quantity, Quantity) = default;

 private:
  double value_ = 0.0;
};

using Energy = Quantity<Dim::energy>;
using AngularFrequency = Quantity<Dim::angular_frequency>;
using Length = Quantity<Dim::length>;
using Temperature = Quantity<Dim::temperature>;
using Force = Quantity<Dim::force>;
using Rate = Quantity<Dim::rate>;
using Dimensionless = Quantity<Dim::dimensionless>;

[[nodiscard]] Energy energy_from_ev(double ev);
[[nodiscard]] double ev_from_energy(Energy e);

/// k_B T. Negative temperatures throw DomainError.
[[nodiscard]] Energy thermal_energy(Temperature t);

/// Conversions at the atomic-unit boundary.
[[nodiscard]] double to_hartree(Energy e);
[[nodiscard]] Energy from_hartree(double eh);
[[nodiscard]] AngularFrequency angular_frequency_of(Energy e);
[[nodiscard]] Energy energy_of(AngularFrequency w);

}  // namespace bbforce

#endif  // BBFORCE_QUANTITIES_HPP_
