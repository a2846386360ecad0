#include <cmath>
#include <vector>

#include "bbforce/cloud.hpp"
#include "bbforce/error.hpp"
#include "doctest.h"

using namespace bbforce;
namespace c = bbforce::constants;

namespace {

CloudSpec fig4_spec() {
  CloudSpec spec;
  spec.count = 8000;
  spec.sigma = Length{300.0};
  spec.sphere.radius = Length{5e-6};
  spec.sphere.temperature = Temperature{300.0};
  spec.sphere.density = 1000.0;
  spec.seed = 7;
  return spec;
}

PotentialPrefactors fig4_prefactors() { return prefactors(fig4_spec().sphere, approx_shift_model()); }

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("mean gravity") {
  const auto spec = fig4_spec();
  const auto pf = fig4_prefactors();
  const double n_ag_r = spec.count * pf.a_g.value() * spec.sphere.radius.value();
  CHECK(mean_gravity(spec, pf, Length{0.0}).value() ==
        doctest::Approx(-n_ag_r / (std::sqrt(c::pi / 2) * 300.0)).epsilon(1e-14));
  CHECK(rel(mean_gravity(spec, pf, Length{3000.0}).value(), -n_ag_r / 3000.0) < 1e-6);
  CHECK(rel(mean_gravity(spec, pf, Length{1e-9}).value(), mean_gravity(spec, pf, Length{0.0}).value()) <
        1e-12);

  CloudSpec point = spec;
  point.count = 1;
  point.sigma = Length{1e-9};
  CHECK(rel(mean_gravity(point, pf, Length{1.0}).value(), -pf.a_g.value() * 5e-6) < 1e-12);
  CHECK_THROWS_AS((void)mean_gravity(spec, pf, Length{-1.0}), DomainError);
}

TEST_CASE("mean blackbody potential") {
  const auto spec = fig4_spec();
  const auto pf = fig4_prefactors();
  const double center = -spec.count * pf.a_bb.value() * 25e-12 / (2.0 * 300.0 * 300.0);
  CHECK(mean_bb(spec, pf, Length{0.0}).value() == doctest::Approx(center).epsilon(1e-14));
  for (const double r : {1e-3, 1e-1, 1.0}) {
    CAPTURE(r);
    CHECK(rel(mean_bb(spec, pf, Length{r}).value(), center) < 1e-4);
  }
  SUBCASE("negative, increasing, vanishing") {
    double prev_bb = -INFINITY;
    double prev_g = -INFINITY;
    for (double r = 0.0; r <= 3000.0; r += 75.0) {
      const double bb = mean_bb(spec, pf, Length{r}).value();
      const double g = mean_gravity(spec, pf, Length{r}).value();
      CHECK(bb < 0.0);
      CHECK(g < 0.0);
      CHECK(bb > prev_bb);
      CHECK(g > prev_g);
      prev_bb = bb;
      prev_g = g;
    }
    CHECK(std::abs(mean_bb(spec, pf, Length{1e6}).value() / center) < 1e-6);
  }
  SUBCASE("far field approaches the point-cloud form") {
    // For r >> sigma each sphere sits at distance ~ r: -N a_BB R^2 / (2 r^2).
    const double r = 30.0 * 300.0;
    const double far = -spec.count * pf.a_bb.value() * 25e-12 / (2.0 * r * r);
    CHECK(rel(mean_bb(spec, pf, Length{r}).value(), far) < 5e-3);
  }
}

TEST_CASE("dominance criterion") {
  auto spec = fig4_spec();
  const auto pf = fig4_prefactors();
  const auto d = dominance_ratio(spec, pf);
  CHECK(d.bb_over_g == doctest::Approx(1.1e9).epsilon(0.05));
  CHECK(d.threshold == doctest::Approx(6.9e8).epsilon(0.05));
  CHECK(d.sigma_over_radius == doctest::Approx(6e7));
  CHECK(d.dominant);
  CHECK(d.center_ratio > 1.0);

  // Just either side of the boundary.
  for (const double factor : {0.999, 1.001}) {
    spec.sigma = Length{d.threshold * factor * spec.sphere.radius.value()};
    const auto e = dominance_ratio(spec, pf);
    CAPTURE(factor);
    CHECK(e.dominant == (factor < 1.0));
    CHECK((e.center_ratio > 1.0) == e.dominant);
  }
  const PotentialPrefactors equal{Energy{1.0}, Energy{}, Energy{1.0}, 1};
  CHECK(dominance_ratio(fig4_spec(), equal).threshold ==
        doctest::Approx(std::sqrt(c::pi) / (2 * std::sqrt(2.0))));
}

TEST_CASE("cloud sampling") {
  const auto spec = fig4_spec();
  const auto pts = sample_cloud(spec);
  REQUIRE(pts.size() == 8000);
  double mean[3] = {0, 0, 0};
  double r2 = 0.0;
  for (const auto& p : pts) {
    for (int k = 0; k < 3; ++k) mean[k] += p[static_cast<std::size_t>(k)] / 8000.0;
    r2 += (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]) / 8000.0;
  }
  for (const double m : mean) CHECK(std::abs(m) < 4.0 * 300.0 / std::sqrt(8000.0));
  CHECK(r2 == doctest::Approx(3.0 * 300.0 * 300.0).epsilon(0.05));
  CHECK(sample_cloud(spec) == pts);
  auto other = spec;
  other.seed = 8;
  CHECK(sample_cloud(other) != pts);

  auto bad = spec;
  bad.count = 0;
  CHECK_THROWS_AS((void)sample_cloud(bad), DomainError);
  bad = spec;
  bad.sigma = Length{0.0};
  CHECK_THROWS_AS((void)sample_cloud(bad), DomainError);
}

TEST_CASE("direct sum") {
  const auto pf = fig4_prefactors();
  const Length radius{5e-6};
  SUBCASE("single sphere at the origin") {
    const std::vector<Vec3> one = {Vec3{0, 0, 0}};
    const std::vector<double> probes = {1e-5, 1.0, 100.0};
    const auto out = direct_sum_potential(one, pf, radius, probes);
    for (std::size_t i = 0; i < probes.size(); ++i) {
      const double d = probes[i];
      CHECK(out[i].v_g.value() == doctest::Approx(-pf.a_g.value() * 5e-6 / d));
      CHECK(out[i].v_bb.value() == doctest::Approx(-pf.a_bb.value() * 25e-12 / (2 * d * d)));
      CHECK(out[i].valid);
    }
  }
  SUBCASE("probe inside a sphere is flagged") {
    const std::vector<Vec3> one = {Vec3{1.0, 0, 0}};
    const std::vector<double> probes = {1.0 + 1e-6};
    const auto out = direct_sum_potential(one, pf, radius, probes);
    CHECK_FALSE(out[0].valid);
    CHECK(out[0].spheres_containing_probe == 1);
  }
  SUBCASE("results do not depend on the thread count") {
    const auto pts = sample_cloud(fig4_spec());
    std::vector<double> probes;
    for (int k = 0; k <= 30; ++k) probes.push_back(30.0 * k);
    const auto a = direct_sum_potential(pts, pf, radius, probes, 1);
    for (const int threads : {2, 3, 8}) {
      const auto b = direct_sum_potential(pts, pf, radius, probes, threads);
      for (std::size_t i = 0; i < probes.size(); ++i) {
        CHECK(a[i].v_g == b[i].v_g);
        CHECK(a[i].v_bb == b[i].v_bb);
      }
    }
  }
}

TEST_CASE("Monte Carlo mean converges to the analytic profile") {
  auto spec = fig4_spec();
  spec.count = 2000;
  const auto pf = fig4_prefactors();
  const std::vector<double> probes = {150.0, 300.0, 600.0};
  constexpr int kSeeds = 64;
  std::vector<double> sum_g(3), sum_bb(3), sq_g(3), sq_bb(3);
  for (int k = 0; k < kSeeds; ++k) {
    spec.seed = mix_seed(99, static_cast<std::uint64_t>(k));
    const auto out = direct_sum_potential(sample_cloud(spec), pf, spec.sphere.radius, probes, 4);
    for (std::size_t i = 0; i < 3; ++i) {
      sum_g[i] += out[i].v_g.value();
      sq_g[i] += out[i].v_g.value() * out[i].v_g.value();
      sum_bb[i] += out[i].v_bb.value();
      sq_bb[i] += out[i].v_bb.value() * out[i].v_bb.value();
    }
  }
  for (std::size_t i = 0; i < 3; ++i) {
    CAPTURE(probes[i]);
    const double mg = sum_g[i] / kSeeds;
    const double mb = sum_bb[i] / kSeeds;
    const double sg = std::sqrt((sq_g[i] / kSeeds - mg * mg) * kSeeds / (kSeeds - 1));
    const double sb = std::sqrt((sq_bb[i] / kSeeds - mb * mb) * kSeeds / (kSeeds - 1));
    const double ag = mean_gravity(spec, pf, Length{probes[i]}).value();
    const double ab = mean_bb(spec, pf, Length{probes[i]}).value();
    CHECK(std::abs(mg - ag) < 4.0 * sg / std::sqrt(kSeeds));
    CHECK(std::abs(mb - ab) < 4.0 * sb / std::sqrt(kSeeds));
    // The per-cloud spread itself is a 1/sqrt(N) effect.
    CHECK(sg / std::abs(ag) < 0.1);
  }
}

TEST_CASE("cloud profile") {
  auto spec = fig4_spec();
  spec.count = 500;
  const auto pf = fig4_prefactors();
  const std::vector<double> probes = {0.0, 300.0, 900.0};
  const auto a = cloud_profile(spec, pf, probes, 8, 1);
  const auto b = cloud_profile(spec, pf, probes, 8, 5);
  REQUIRE(a.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(a[i].v_bb_mc == b[i].v_bb_mc);
    CHECK(a[i].v_g_spread == b[i].v_g_spread);
    CHECK(a[i].v_bb_spread == b[i].v_bb_spread);
    CHECK(a[i].v_g_spread.value() > 0.0);
  }
  CHECK(mix_seed(1, 0) != mix_seed(1, 1));
  CHECK(mix_seed(1, 0) != mix_seed(2, 0));
}
