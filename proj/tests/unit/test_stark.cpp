#include <cmath>
#include <future>
#include <vector>

#include "bbforce/error.hpp"
#include "bbforce/hydrogen.hpp"
#include "bbforce/stark.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace bbforce;

namespace {
constexpr double kPi = constants::pi;
double far_field(double y) { return 2.0 * std::pow(kPi, 4) / (15.0 * y); }
double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }
}  // namespace

TEST_CASE("f_integral matches frozen high-precision values") {
  // 30-digit evaluation by singularity subtraction (mpmath), frozen here.
  struct Case { double y, f; };
  const Case cases[] = {
      {0.5, -1.3997616457925073},  {5.0, 2.792703302028154},
      {10.0, 1.6871552787659697},  {50.0, 0.26174423586265743},
      {100.0, 0.13012396983613174}, {394.6, 0.032918011375526315},
      {1000.0, 0.012988122976990361}, {1e-3, -0.003289859965279742},
  };
  for (const auto& c : cases) {
    CAPTURE(c.y);
    CHECK(rel(f_integral(c.y), c.f) < 1e-9);
    CHECK(rel(f_integral(-c.y), -c.f) < 1e-9);
  }
}

TEST_CASE("f_integral agrees with the fixed-grid PV oracle") {
  for (const double y : {0.5, -0.5, 5.0, -5.0, 50.0, -50.0}) {
    CAPTURE(y);
    CHECK(rel(f_integral(y), oracle::pv_kernel(y)) < 1e-8);
  }
}

TEST_CASE("f_integral limits and symmetry") {
  CHECK(f_integral(0.0) == 0.0);
  // Small-y slope: f(y) ~ -2 y int x/(e^x-1) dx = -(pi^2/3) y.
  CHECK(rel(f_integral(1e-6), -kPi * kPi / 3.0 * 1e-6) < 1e-4);
  for (const double y : {100.0, 250.0, 394.6, 1000.0, 1e4}) {
    CAPTURE(y);
    CHECK(rel(f_integral(y), far_field(y)) < 0.01);
    CHECK(rel(f_integral(-y), -f_integral(y)) < 1e-12);
  }
  CHECK(rel(f_integral(-394.6), -0.032916) < 0.01);
}

TEST_CASE("f_integral rejects bad input") {
  CHECK_THROWS_AS((void)f_integral(std::nan("")), DomainError);
  CHECK_THROWS_AS((void)f_integral(INFINITY), DomainError);
  QuadratureConfig bad;
  bad.rel_tol = 1e-3;
  CHECK_THROWS_AS((void)f_integral(1.0, bad), DomainError);
  bad = {};
  bad.pole_window = 0.5;
  CHECK_THROWS_AS((void)f_integral(1.0, bad), DomainError);
}

TEST_CASE("approx_shift_1s") {
  const Energy e400 = approx_shift_1s(Temperature{400.0});
  CHECK(rel(e400.value() / constants::hbar, -0.7695035195548428) < 1e-9);
  CHECK(rel(ev_from_energy(e400), -5.064964171764632e-16) < 1e-9);
  CHECK(approx_shift_1s(Temperature{0.0}).value() == 0.0);
  for (const double t : {10.0, 333.0, 5000.0}) {
    CHECK(rel(approx_shift_1s(Temperature{2 * t}) / approx_shift_1s(Temperature{t}), 16.0) < 1e-14);
  }
}

TEST_CASE("thermal_shift of hydrogen 1s") {
  const auto list = build_line_list();
  SUBCASE("400 K rounds to the quoted -1 Hz in rad/s") {
    const auto r = thermal_shift(list, Temperature{400.0});
    CHECK(r.angular_shift() == doctest::Approx(-0.77).epsilon(0.05));
    CHECK(r.frequency_shift_hz() == doctest::Approx(r.angular_shift() / (2 * kPi)));
  }
  SUBCASE("shift equals the sum of its contributions") {
    const auto r = thermal_shift(list, Temperature{1000.0});
    double sum = 0.0;
    for (const auto& c : r.contributions) sum += c.shift.value();
    CHECK(rel(sum, r.shift.value()) < 1e-12);
    CHECK(r.contributions.size() == list.size());
  }
  SUBCASE("low-temperature equivalence with the closed form") {
    for (const double t : {50.0, 100.0, 300.0, 1000.0}) {
      CAPTURE(t);
      const double ratio =
          thermal_shift(list, Temperature{t}).shift / approx_shift_1s(Temperature{t});
      CHECK(ratio > 0.95);
      CHECK(ratio < 1.05);
    }
    const double r100 =
        thermal_shift(list, Temperature{100.0}).shift / approx_shift_1s(Temperature{100.0});
    CHECK(std::abs(r100 - 1.0) < 0.02);
  }
  SUBCASE("negative for all T up to 6000 K") {
    for (const double t : {1.0, 10.0, 300.0, 2000.0, 4000.0, 6000.0}) {
      CHECK(thermal_shift(list, Temperature{t}).shift.value() < 0.0);
    }
  }
  SUBCASE("pseudo-line carries the continuum share of alpha") {
    const auto bound = build_line_list(kDefaultHydrogenNmax, Completion::bound_only);
    const double with = thermal_shift(list, Temperature{300.0}).shift.value();
    const double without = thermal_shift(bound, Temperature{300.0}).shift.value();
    CHECK((with - without) / with == doctest::Approx(0.837 / 4.5).epsilon(0.01));
  }
}

TEST_CASE("thermal_shift edge cases") {
  CHECK(thermal_shift(LineList{}, Temperature{300.0}).shift.value() == 0.0);
  CHECK_THROWS_AS((void)thermal_shift(build_line_list(), Temperature{0.0}), DomainError);
  CHECK_THROWS_AS((void)thermal_shift(build_line_list(), Temperature{-5.0}), DomainError);
}

TEST_CASE("shift_convergence_report") {
  const Temperature t{300.0};
  SUBCASE("bound sum plateaus by n_max = 100") {
    const std::vector<int> sweep = {10, 25, 50, 100, 150, 200};
    const auto rows = shift_convergence_report(
        [](int n) { return build_line_list(n, Completion::bound_only); }, t, sweep);
    REQUIRE(rows.size() == sweep.size());
    for (std::size_t i = 1; i < rows.size(); ++i) {
      // More lines, more negative: monotone convergence from above.
      CHECK(rows[i].shift < rows[i - 1].shift);
    }
    CHECK(std::abs((rows[3].shift - rows.back().shift) / rows.back().shift) < 1e-4);
  }
  SUBCASE("single-line list gives one row equal to thermal_shift") {
    const LineList one("x", Completion::bound_only,
                       {{AngularFrequency{1e15}, 1e-21, "a", TransitionKind::bound}});
    const std::vector<int> sweep = {2};
    const auto rows = shift_convergence_report([&](int) { return one; }, t, sweep);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].shift == thermal_shift(one, t).shift);
    CHECK(rows[0].relative_change == 0.0);
  }
}

TEST_CASE("thermal_shift is independent of evaluation order across threads") {
  const auto list = build_line_list(60);
  const std::vector<double> temps = {120.0, 700.0, 3000.0, 5500.0};
  std::vector<double> serial;
  for (const double t : temps) serial.push_back(thermal_shift(list, Temperature{t}).shift.value());
  std::vector<std::future<double>> jobs;
  for (auto it = temps.rbegin(); it != temps.rend(); ++it) {
    jobs.push_back(std::async(std::launch::async, [&, t = *it] {
      return thermal_shift(list, Temperature{t}).shift.value();
    }));
  }
  for (std::size_t i = 0; i < temps.size(); ++i) {
    CHECK(jobs[temps.size() - 1 - i].get() == serial[i]);
  }
}
