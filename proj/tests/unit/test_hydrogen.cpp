#include <cmath>
#include <string>

#include "bbforce/error.hpp"
#include "bbforce/hydrogen.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace bbforce;

namespace {

double factorial(int n) { return std::tgamma(n + 1.0); }

// Normalised hydrogen radial function R_nl(r) in atomic units.
double radial(int n, int l, double r) {
  const double rho = 2.0 * r / n;
  const double norm =
      std::sqrt(std::pow(2.0 / n, 3) * factorial(n - l - 1) / (2.0 * n * factorial(n + l)));
  return norm * std::exp(-rho / 2.0) * std::pow(rho, l) *
         std::assoc_laguerre(static_cast<unsigned>(n - l - 1), static_cast<unsigned>(2 * l + 1),
                             rho);
}

// Summing |<1s|r_i|np m>|^2 over i and m leaves the square of the radial integral.
double d2_oracle_au(int n) {
  const double radial_integral = oracle::gauss_legendre(
      [n](double r) { return radial(1, 0, r) * radial(n, 1, r) * r * r * r; }, 0.0, 80.0 * n,
      4000);
  return radial_integral * radial_integral;
}

constexpr double kA0Sq = constants::bohr_radius * constants::bohr_radius;

}  // namespace

TEST_CASE("level energies") {
  CHECK(ev_from_energy(level_energy(1)) == doctest::Approx(-13.605693).epsilon(1e-7));
  CHECK(ev_from_energy(level_energy(2) - level_energy(1)) == doctest::Approx(10.2043).epsilon(1e-5));
  CHECK(std::abs(level_energy(100000).value()) < 1e-27);
  CHECK_THROWS_AS((void)level_energy(0), DomainError);
}

TEST_CASE("1s -> np oscillator strengths") {
  CHECK(oscillator_strength_1s_np(2) == doctest::Approx(8192.0 / 19683.0).epsilon(1e-13));
  CHECK(oscillator_strength_1s_np(3) == doctest::Approx(0.079102).epsilon(1e-5));
  CHECK_THROWS_AS((void)oscillator_strength_1s_np(1), DomainError);
  double prev = oscillator_strength_1s_np(2);
  double sum = prev;
  for (int n = 3; n <= 5000; ++n) {
    const double f = oscillator_strength_1s_np(n);
    REQUIRE(std::isfinite(f));
    REQUIRE(f < prev);
    prev = f;
    sum += f;
  }
  CHECK(sum == doctest::Approx(0.565004).epsilon(1e-5));
}

TEST_CASE("dipole strengths match radial integrals of the wavefunctions") {
  CHECK(dipole_strength_1s_np(2) / kA0Sq ==
        doctest::Approx(3.0 * std::pow(128.0 * std::sqrt(2.0) / 243.0, 2)).epsilon(1e-9));
  CHECK(dipole_strength_1s_np(3) / kA0Sq == doctest::Approx(0.266968).epsilon(1e-5));
  for (int n = 2; n <= 4; ++n) {
    CAPTURE(n);
    const double lib = dipole_strength_1s_np(n) / kA0Sq;
    CHECK(std::abs(lib / d2_oracle_au(n) - 1.0) < 1e-6);
  }
  // d2 ~ n^-3 for large n.
  const double ratio = dipole_strength_1s_np(2000) / dipole_strength_1s_np(1000);
  CHECK(ratio == doctest::Approx(0.125).epsilon(2e-3));
}

TEST_CASE("line list construction") {
  SUBCASE("bound-only n_max = 2") {
    const auto list = build_line_list(2, Completion::bound_only);
    REQUIRE(list.size() == 1);
    CHECK(list.transitions()[0].label == "2p");
    CHECK(list.oscillator_strength_sum() == doctest::Approx(0.41620).epsilon(1e-4));
  }
  SUBCASE("pseudo-line closes the sum rule and the polarizability") {
    for (const int n_max : {10, 200, 5000}) {
      CAPTURE(n_max);
      const auto list = build_line_list(n_max);
      CHECK(std::abs(list.oscillator_strength_sum() - 1.0) < 1e-3);
      CHECK(static_polarizability(list) == doctest::Approx(4.5).epsilon(1e-10));
      CHECK(list.transitions().back().kind == TransitionKind::continuum_pseudo_line);
    }
  }
  SUBCASE("pseudo-line energy") {
    const auto list = build_line_list(5000);
    const auto& c = list.transitions().back();
    CHECK(ev_from_energy(energy_of(c.omega)) == doctest::Approx(19.62).epsilon(2e-3));
  }
  SUBCASE("bound-only polarizability") {
    CHECK(static_polarizability(build_line_list(5000, Completion::bound_only)) ==
          doctest::Approx(3.663).epsilon(1e-3));
  }
  CHECK(static_polarizability(LineList{}) == 0.0);
  CHECK_THROWS_AS((void)build_line_list(1), DomainError);
}

TEST_CASE("line list validation") {
  using T = Transition;
  CHECK_THROWS_AS(LineList("x", Completion::bound_only,
                           {T{AngularFrequency{0.0}, 1e-21, "a", TransitionKind::bound}}),
                  DomainError);
  CHECK_THROWS_AS(LineList("x", Completion::bound_only,
                           {T{AngularFrequency{1e15}, -1e-21, "a", TransitionKind::bound}}),
                  DomainError);
  CHECK_THROWS_AS(LineList("x", Completion::bound_only,
                           {T{AngularFrequency{1e15}, 1e-21, "a", TransitionKind::bound},
                            T{AngularFrequency{1e15}, 2e-21, "a", TransitionKind::bound}}),
                  DomainError);
  // Downward lines carry negative frequency and negative oscillator strength.
  const T down{AngularFrequency{-1e15}, 1e-21, "down", TransitionKind::bound};
  CHECK(oscillator_strength(down) < 0.0);
}

TEST_CASE("hyperfine constants") {
  const auto h = hyperfine_constants();
  CHECK(h.omega21.value() == 8.9e9);
  CHECK(h.a21.value() == 2.87e-15);
  CHECK(h.omega21.value() / (2 * constants::pi) == doctest::Approx(1.42e9).epsilon(0.01));
}

TEST_CASE("line list JSON round trip") {
  const auto list = build_line_list(12);
  const std::string text = line_list_to_json(list);
  const auto back = line_list_from_json(text);
  CHECK(back.level() == list.level());
  CHECK(back.completion() == list.completion());
  REQUIRE(back.size() == list.size());
  for (std::size_t i = 0; i < list.size(); ++i) {
    CHECK(back.transitions()[i].omega == list.transitions()[i].omega);
    CHECK(back.transitions()[i].d2 == list.transitions()[i].d2);
    CHECK(back.transitions()[i].label == list.transitions()[i].label);
    CHECK(back.transitions()[i].kind == list.transitions()[i].kind);
  }
  CHECK(line_list_to_json(back) == text);

  CHECK_THROWS_AS((void)line_list_from_json("not json"), DomainError);
  CHECK_THROWS_AS((void)line_list_from_json(R"({"label":"x"})"), DomainError);
  CHECK_THROWS_AS((void)line_list_from_json(
                      R"({"label":"x","completion":"sideways","transitions":[]})"),
                  DomainError);
  CHECK_THROWS_AS(
      (void)line_list_from_json(R"({"label":"x","completion":"bound-only","transitions":[
        {"omega_rad_s":1e15,"d2_m2":1e-21,"label":"a","kind":"weird"}]})"),
      DomainError);
}
