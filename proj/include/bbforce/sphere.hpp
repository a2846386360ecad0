#ifndef BBFORCE_SPHERE_HPP_
#define BBFORCE_SPHERE_HPP_

#include "bbforce/quantities.hpp"
#include "bbforce/stark.hpp"

namespace bbforce {

/// A hot, possibly charged, sphere radiating as a blackbody.
struct SphereSource {
  Length radius{1.0};
  Temperature temperature{0.0};
  double density = 0.0;          // kg/m^3
  double charge_density = 0.0;   // C/m^2
  Temperature ambient{0.0};

  /// R > 0, T >= 0, rho >= 0, T_amb >= 0, all finite; throws DomainError.
  void validate() const;
  [[nodiscard]] double mass() const;
};

/// Radius of a sphere of the given mass and density.
[[nodiscard]] Length sphere_radius_for_mass(double mass_kg, double density);

/// Surface-normalised potential energies: V(r) = -a_G R/r - a_Q R^4/r^4 - s a_BB g(r),
/// g(r) = 1 - sqrt(r^2 - R^2)/r, with s = +1 for an attractive (negative) shift.
struct PotentialPrefactors {
  Energy a_g;
  Energy a_q;
  Energy a_bb;
  int bb_sign = 1;
};

/// Omega = 2 pi (1 - sqrt(r^2 - R^2)/r). Throws DomainError for r < R.
[[nodiscard]] double solid_angle(Length radius, Length r);

/// 1 - sqrt(r^2 - R^2)/r, evaluated without cancellation for r >> R.
[[nodiscard]] double bb_scaling(Length radius, Length r);

/// (Omega/4pi) (dE(T) - dE(T_amb)): shift next to the sphere, relative to
/// the ambient bath far away.
[[nodiscard]] Energy bb_potential(Energy shift_hot, Length radius, Length r,
                                  Energy shift_ambient = Energy{});

/// -d/dr of bb_potential = (dE(T) - dE(T_amb)) R^2 / (2 r^2 sqrt(r^2 - R^2)).
/// Negative values point toward the sphere. Throws SurfaceDivergence at
/// r == R and DomainError for r < R.
[[nodiscard]] Force bb_force(Energy shift_hot, Length radius, Length r,
                             Energy shift_ambient = Energy{});

/// a_G = G 4 pi m rho R^2 / 3, a_Q = 9 pi a0^3 sigma_Q^2 / eps0,
/// a_BB = |dE(T) - dE(T_amb)| / 2 from the given shift model.
[[nodiscard]] PotentialPrefactors prefactors(const SphereSource& src, const ShiftModel& shift,
                                             double atom_mass = constants::proton_mass);

/// V(r) with every term normalised to its surface value. Throws DomainError for r < R.
[[nodiscard]] Energy total_potential(Length radius, Length r, const PotentialPrefactors& pf);

/// -dV/dr of total_potential; negative is attractive.
[[nodiscard]] Force total_radial_force(Length radius, Length r, const PotentialPrefactors& pf);

/// H(1s) dc Stark shift -9 a0^3 Q^2 / (16 pi eps0 r^4) in the field of a point charge Q.
[[nodiscard]] Energy dc_stark_shift(double charge, Length r);

}  // namespace bbforce

#endif  // BBFORCE_SPHERE_HPP_
