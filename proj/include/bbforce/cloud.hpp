#ifndef BBFORCE_CLOUD_HPP_
#define BBFORCE_CLOUD_HPP_

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "bbforce/quantities.hpp"
#include "bbforce/sphere.hpp"

namespace bbforce {

/// N identical hot spheres with centres drawn from an isotropic Gaussian of
/// width sigma per axis, g(s) = exp(-s^2 / 2 sigma^2) / ((2 pi)^(3/2) sigma^3).
struct CloudSpec {
  int count = 1;
  Length sigma{1.0};
  SphereSource sphere;
  std::uint64_t seed = 0;
  int profile_samples = 31;

  void validate() const;
};

using Vec3 = std::array<double, 3>;

/// <V_G(r)> = -(N a_G R / r) erf(r / (sqrt2 sigma)); the r = 0 limit is
/// -N a_G R sqrt(2/pi) / sigma.
[[nodiscard]] Energy mean_gravity(const CloudSpec& spec, const PotentialPrefactors& pf, Length r);

/// <V_BB(r)> = -(pi N a_BB R^2 / r) int_0^inf s g(s) ln((r+s)/|r-s|) ds.
/// The logarithm is integrable at s = r; quadrature splits there. The r = 0
/// limit is -N a_BB R^2 / (2 sigma^2).
[[nodiscard]] Energy mean_bb(const CloudSpec& spec, const PotentialPrefactors& pf, Length r,
                             double rel_tol = 1e-12);

struct DominanceReport {
  double bb_over_g = 0.0;             // a_BB / a_G
  double sigma_over_radius = 0.0;
  double threshold = 0.0;             // sqrt(pi) a_BB / (2 sqrt2 a_G)
  double center_ratio = 0.0;          // <V_BB(0)> / <V_G(0)>
  bool dominant = false;              // sigma/R below threshold
};

[[nodiscard]] DominanceReport dominance_ratio(const CloudSpec& spec, const PotentialPrefactors& pf);

/// N centres from mt19937_64(seed) through Box-Muller. Bit-identical for a
/// given seed on a given platform.
[[nodiscard]] std::vector<Vec3> sample_cloud(const CloudSpec& spec);

struct ProfilePoint {
  double r = 0.0;
  Energy v_g;
  Energy v_bb;
  /// Plug-in standard errors sqrt(N) * sample std of the per-sphere terms.
  Energy v_g_stderr;
  Energy v_bb_stderr;
  /// False when the probe lies inside a sphere; the point is then skipped.
  bool valid = true;
  int spheres_containing_probe = 0;
};

/// Sums -a_G R/d and -a_BB R^2/(2 d^2) over all spheres at probes (r, 0, 0).
/// Each probe is summed in sphere order, so results do not depend on `threads`.
[[nodiscard]] std::vector<ProfilePoint> direct_sum_potential(std::span<const Vec3> positions,
                                                             const PotentialPrefactors& pf,
                                                             Length radius,
                                                             std::span<const double> probes,
                                                             int threads = 1);

/// splitmix64 finaliser; derives replicate seeds from one master seed.
[[nodiscard]] std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

struct CloudProfileRow {
  double r = 0.0;
  Energy v_g_analytic;
  Energy v_bb_analytic;
  Energy v_g_mc;
  Energy v_bb_mc;
  /// Spread of the Monte Carlo estimate across independent replicate clouds.
  Energy v_g_spread;
  Energy v_bb_spread;
  bool valid = true;
};

/// Analytic means next to the direct sum for the master seed. With
/// replicates > 1 the spread columns hold the standard deviation of the
/// profile over `replicates` further clouds seeded by mix_seed(seed, k).
[[nodiscard]] std::vector<CloudProfileRow> cloud_profile(const CloudSpec& spec,
                                                         const PotentialPrefactors& pf,
                                                         std::span<const double> probes,
                                                         int replicates = 0, int threads = 1);

}  // namespace bbforce

#endif  // BBFORCE_CLOUD_HPP_
