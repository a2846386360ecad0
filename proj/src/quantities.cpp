#include "bbforce/quantities.hpp"

#include <cmath>

#include "bbforce/error.hpp"

namespace bbforce {

Energy energy_from_ev(double ev) {
  return Energy{ev * constants::elementary_charge};
}

double ev_from_energy(Energy e) { return e.value() / constants::elementary_charge; }

Energy thermal_energy(Temperature t) {
  if (!(t.value() >= 0.0)) {
    throw DomainError("temperature must be non-negative");
  }
  return Energy{constants::boltzmann * t.value()};
}

double to_hartree(Energy e) { return e.value() / constants::hartree; }

Energy from_hartree(double eh) { return Energy{eh * constants::hartree}; }

AngularFrequency angular_frequency_of(Energy e) {
  return AngularFrequency{e.value() / constants::hbar};
}

Energy energy_of(AngularFrequency w) { return Energy{w.value() * constants::hbar}; }

}  // namespace bbforce
