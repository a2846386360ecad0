#include <cmath>
#include <type_traits>

#include "bbforce/error.hpp"
#include "bbforce/quantities.hpp"
#include "doctest.h"

using namespace bbforce;
namespace c = bbforce::constants;

// Mixing dimensions must not compile.
template <class A, class B>
concept Addable = requires(A a, B b) { a + b; };
static_assert(Addable<Energy, Energy>);
static_assert(!Addable<Energy, Length>);
static_assert(!Addable<Temperature, double>);
static_assert(!std::is_convertible_v<double, Energy>);

TEST_CASE("quantity arithmetic") {
  const Energy a{2.0}, b{3.0};
  CHECK((a + b).value() == 5.0);
  CHECK((a - b).value() == -1.0);
  CHECK((2.0 * a).value() == 4.0);
  CHECK((a / 4.0).value() == 0.5);
  CHECK(a / b == doctest::Approx(2.0 / 3.0));
  CHECK(a < b);
  CHECK((-a).value() == -2.0);
  CHECK(dim_name(Dim::angular_frequency) == "rad/s");
}

TEST_CASE("unit conversions") {
  CHECK(ev_from_energy(energy_from_ev(13.6)) == doctest::Approx(13.6).epsilon(1e-15));
  CHECK(thermal_energy(Temperature{300.0}).value() == doctest::Approx(4.141947e-21).epsilon(1e-6));
  CHECK_THROWS_AS((void)thermal_energy(Temperature{-1.0}), DomainError);
  CHECK(to_hartree(from_hartree(0.375)) == doctest::Approx(0.375).epsilon(1e-15));
  CHECK(ev_from_energy(from_hartree(1.0)) == doctest::Approx(27.211386).epsilon(1e-7));
  CHECK(energy_of(angular_frequency_of(Energy{1e-19})).value() == doctest::Approx(1e-19));
}

TEST_CASE("derived constants") {
  // a0 = hbar / (m_e c alpha).
  CHECK(c::hbar / (c::electron_mass * c::speed_of_light * c::fine_structure) ==
        doctest::Approx(c::bohr_radius).epsilon(1e-9));
  // alpha = e^2 / (4 pi eps0 hbar c).
  CHECK(c::elementary_charge * c::elementary_charge /
            (4 * c::pi * c::epsilon0 * c::hbar * c::speed_of_light) ==
        doctest::Approx(c::fine_structure).epsilon(1e-9));
  CHECK(c::electron_rest_energy / c::elementary_charge ==
        doctest::Approx(c::electron_rest_energy_ev).epsilon(1e-9));
}
