#include "bbforce/sphere.hpp"

#include <cmath>

#include "bbforce/error.hpp"

namespace bbforce {

namespace {

using constants::pi;

void require_outside(Length radius, Length r) {
  if (!(radius.value() > 0.0)) throw DomainError("sphere radius must be > 0");
  if (!(r >= radius)) throw DomainError("position lies inside the sphere (r < R)");
}

// sqrt(r^2 - R^2) without squaring away the difference.
double surface_gap(double radius, double r) { return std::sqrt((r - radius) * (r + radius)); }

}  // namespace

void SphereSource::validate() const {
  if (!(std::isfinite(radius.value()) && radius.value() > 0.0)) {
    throw DomainError("sphere radius must be finite and > 0");
  }
  if (!(std::isfinite(temperature.value()) && temperature.value() >= 0.0)) {
    throw DomainError("sphere temperature must be finite and >= 0");
  }
  if (!(std::isfinite(density) && density >= 0.0)) {
    throw DomainError("sphere density must be finite and >= 0");
  }
  if (!std::isfinite(charge_density)) throw DomainError("charge density must be finite");
  if (!(std::isfinite(ambient.value()) && ambient.value() >= 0.0)) {
    throw DomainError("ambient temperature must be finite and >= 0");
  }
}

double SphereSource::mass() const {
  const double r = radius.value();
  return 4.0 / 3.0 * pi * r * r * r * density;
}

Length sphere_radius_for_mass(double mass_kg, double density) {
  if (!(mass_kg > 0.0 && density > 0.0)) throw DomainError("mass and density must be > 0");
  return Length{std::cbrt(3.0 * mass_kg / (4.0 * pi * density))};
}

double bb_scaling(Length radius, Length r) {
  require_outside(radius, r);
  // 1 - sqrt(1 - q) = q / (1 + sqrt(1 - q)) with q = R^2/r^2.
  const double q = (radius / r) * (radius / r);
  return q / (1.0 + surface_gap(radius.value(), r.value()) / r.value());
}

double solid_angle(Length radius, Length r) { return 2.0 * pi * bb_scaling(radius, r); }

Energy bb_potential(Energy shift_hot, Length radius, Length r, Energy shift_ambient) {
  return (shift_hot - shift_ambient) * (solid_angle(radius, r) / (4.0 * pi));
}

Force bb_force(Energy shift_hot, Length radius, Length r, Energy shift_ambient) {
  require_outside(radius, r);
  if (r == radius) throw SurfaceDivergence();
  const double rr = r.value();
  const double big_r = radius.value();
  return Force{(shift_hot - shift_ambient).value() * big_r * big_r /
               (2.0 * rr * rr * surface_gap(big_r, rr))};
}

PotentialPrefactors prefactors(const SphereSource& src, const ShiftModel& shift,
                               double atom_mass) {
  src.validate();
  const double r = src.radius.value();
  PotentialPrefactors pf;
  pf.a_g = Energy{constants::gravitational * 4.0 * pi * atom_mass * src.density * r * r / 3.0};
  const double a0 = constants::bohr_radius;
  pf.a_q = Energy{9.0 * pi * a0 * a0 * a0 * src.charge_density * src.charge_density /
                  constants::epsilon0};
  const Energy delta = shift(src.temperature) - shift(src.ambient);
  pf.a_bb = Energy{std::abs(delta.value()) / 2.0};
  pf.bb_sign = delta.value() <= 0.0 ? 1 : -1;
  return pf;
}

Energy total_potential(Length radius, Length r, const PotentialPrefactors& pf) {
  require_outside(radius, r);
  const double x = radius / r;
  const double x2 = x * x;
  return -pf.a_g * x - pf.a_q * (x2 * x2) -
         static_cast<double>(pf.bb_sign) * pf.a_bb * bb_scaling(radius, r);
}

Force total_radial_force(Length radius, Length r, const PotentialPrefactors& pf) {
  require_outside(radius, r);
  const double big_r = radius.value();
  const double rr = r.value();
  const double x = big_r / rr;
  double force = -pf.a_g.value() * x / rr - 4.0 * pf.a_q.value() * x * x * x * x / rr;
  if (pf.a_bb.value() != 0.0) {
    if (r == radius) throw SurfaceDivergence();
    force -= pf.bb_sign * pf.a_bb.value() * big_r * big_r / (rr * rr * surface_gap(big_r, rr));
  }
  return Force{force};
}

Energy dc_stark_shift(double charge, Length r) {
  if (!(r.value() > 0.0)) throw DomainError("dc_stark_shift: r must be > 0");
  const double a0 = constants::bohr_radius;
  const double r2 = r.value() * r.value();
  return Energy{-9.0 * a0 * a0 * a0 * charge * charge / (16.0 * pi * constants::epsilon0 * r2 * r2)};
}

}  // namespace bbforce
