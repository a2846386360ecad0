#include "bbforce/cloud.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <thread>

#include "bbforce/error.hpp"
#include "bbforce/quadrature.hpp"

namespace bbforce {

namespace {

using constants::pi;

class GaussianStream {
 public:
  explicit GaussianStream(std::uint64_t seed) : engine_(seed) {}

  double next() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    spare_ = radius * std::sin(2.0 * pi * u2);
    has_spare_ = true;
    return radius * std::cos(2.0 * pi * u2);
  }

 private:
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// ln((rho + u) / |rho - u|) written with log1p on each side of the singularity.
double log_kernel(double rho, double u) {
  if (u < rho) return std::log1p(2.0 * u / (rho - u));
  return std::log1p(2.0 * rho / (u - rho));
}

template <class Fn>
void parallel_for(int count, int threads, Fn&& fn) {
  threads = std::clamp(threads, 1, std::max(count, 1));
  if (threads == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  for (int k = 0; k < threads; ++k) {
    pool.emplace_back([&, k] {
      for (int i = k; i < count; i += threads) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

double sample_std(const std::vector<double>& xs) {
  if (xs.size() < 2) return 0.0;
  double mean = 0.0;
  for (const double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  double ss = 0.0;
  for (const double x : xs) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

}  // namespace

void CloudSpec::validate() const {
  if (count < 1) throw DomainError("cloud sphere count must be >= 1");
  if (!(sigma.value() > 0.0 && std::isfinite(sigma.value()))) {
    throw DomainError("cloud sigma must be finite and > 0");
  }
  if (profile_samples < 1) throw DomainError("cloud profile_samples must be >= 1");
  sphere.validate();
}

Energy mean_gravity(const CloudSpec& spec, const PotentialPrefactors& pf, Length r) {
  spec.validate();
  if (!(r.value() >= 0.0)) throw DomainError("mean_gravity: r must be >= 0");
  const double n = spec.count;
  const double big_r = spec.sphere.radius.value();
  const double sigma = spec.sigma.value();
  if (r.value() == 0.0) {
    return Energy{-n * pf.a_g.value() * big_r * std::sqrt(2.0 / pi) / sigma};
  }
  return Energy{-n * pf.a_g.value() * big_r / r.value() *
                std::erf(r.value() / (std::sqrt(2.0) * sigma))};
}

Energy mean_bb(const CloudSpec& spec, const PotentialPrefactors& pf, Length r, double rel_tol) {
  spec.validate();
  if (!(r.value() >= 0.0)) throw DomainError("mean_bb: r must be >= 0");
  const double n = spec.count;
  const double big_r = spec.sphere.radius.value();
  const double sigma = spec.sigma.value();
  const double amplitude = pf.bb_sign * pf.a_bb.value() * n * big_r * big_r;
  if (r.value() == 0.0) return Energy{-amplitude / (2.0 * sigma * sigma)};

  // In units of sigma: J(rho) = int_0^inf u exp(-u^2/2) ln((rho+u)/|rho-u|) du.
  const double rho = r.value() / sigma;
  auto integrand = [rho](double u) {
    if (u == rho) return 0.0;
    return u * std::exp(-0.5 * u * u) * log_kernel(rho, u);
  };
  constexpr double kCutoff = 14.0;  // exp(-98) below any tolerance
  std::vector<double> breaks;
  for (int k = 0; k <= static_cast<int>(kCutoff); ++k) breaks.push_back(k);
  if (rho < kCutoff) breaks.push_back(rho);
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  double j = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    j += quadrature::integrate(integrand, breaks[i], breaks[i + 1], rel_tol, 0.0, 20000).value;
  }
  return Energy{-pi * amplitude * j / (std::pow(2.0 * pi, 1.5) * sigma * sigma * rho)};
}

DominanceReport dominance_ratio(const CloudSpec& spec, const PotentialPrefactors& pf) {
  spec.validate();
  DominanceReport d;
  d.bb_over_g = pf.a_bb / pf.a_g;
  d.sigma_over_radius = spec.sigma / spec.sphere.radius;
  d.threshold = std::sqrt(pi) * d.bb_over_g / (2.0 * std::sqrt(2.0));
  d.center_ratio = mean_bb(spec, pf, Length{0.0}) / mean_gravity(spec, pf, Length{0.0});
  d.dominant = d.sigma_over_radius < d.threshold;
  return d;
}

std::vector<Vec3> sample_cloud(const CloudSpec& spec) {
  spec.validate();
  GaussianStream normal(spec.seed);
  const double sigma = spec.sigma.value();
  std::vector<Vec3> out(static_cast<std::size_t>(spec.count));
  for (auto& p : out) {
    for (auto& c : p) c = sigma * normal.next();
  }
  return out;
}

std::vector<ProfilePoint> direct_sum_potential(std::span<const Vec3> positions,
                                               const PotentialPrefactors& pf, Length radius,
                                               std::span<const double> probes, int threads) {
  const double big_r = radius.value();
  const double g_scale = pf.a_g.value() * big_r;
  const double bb_scale = pf.bb_sign * pf.a_bb.value() * big_r * big_r / 2.0;
  const double n = static_cast<double>(positions.size());
  std::vector<ProfilePoint> out(probes.size());

  parallel_for(static_cast<int>(probes.size()), threads, [&](int i) {
    ProfilePoint& pt = out[static_cast<std::size_t>(i)];
    pt.r = probes[static_cast<std::size_t>(i)];
    // Welford accumulators for the per-sphere terms.
    double mean_g = 0.0, m2_g = 0.0, mean_bb = 0.0, m2_bb = 0.0;
    double sum_g = 0.0, sum_bb = 0.0;
    long used = 0;
    for (const auto& p : positions) {
      const double dx = p[0] - pt.r;
      const double d2 = dx * dx + p[1] * p[1] + p[2] * p[2];
      const double d = std::sqrt(d2);
      if (d < big_r) {
        ++pt.spheres_containing_probe;
        continue;
      }
      const double tg = -g_scale / d;
      const double tb = -bb_scale / d2;
      sum_g += tg;
      sum_bb += tb;
      ++used;
      const double dg = tg - mean_g;
      mean_g += dg / static_cast<double>(used);
      m2_g += dg * (tg - mean_g);
      const double db = tb - mean_bb;
      mean_bb += db / static_cast<double>(used);
      m2_bb += db * (tb - mean_bb);
    }
    pt.valid = pt.spheres_containing_probe == 0;
    pt.v_g = Energy{sum_g};
    pt.v_bb = Energy{sum_bb};
    if (used > 1) {
      pt.v_g_stderr = Energy{std::sqrt(n * m2_g / static_cast<double>(used - 1))};
      pt.v_bb_stderr = Energy{std::sqrt(n * m2_bb / static_cast<double>(used - 1))};
    }
  });
  return out;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + (stream + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::vector<CloudProfileRow> cloud_profile(const CloudSpec& spec, const PotentialPrefactors& pf,
                                           std::span<const double> probes, int replicates,
                                           int threads) {
  spec.validate();
  const Length radius = spec.sphere.radius;
  const auto primary = direct_sum_potential(sample_cloud(spec), pf, radius, probes, threads);

  std::vector<std::vector<ProfilePoint>> extra(static_cast<std::size_t>(std::max(replicates, 0)));
  parallel_for(static_cast<int>(extra.size()), threads, [&](int k) {
    CloudSpec rep = spec;
    rep.seed = mix_seed(spec.seed, static_cast<std::uint64_t>(k));
    extra[static_cast<std::size_t>(k)] =
        direct_sum_potential(sample_cloud(rep), pf, radius, probes, 1);
  });

  std::vector<CloudProfileRow> rows(probes.size());
  parallel_for(static_cast<int>(probes.size()), threads, [&](int i) {
    const auto ui = static_cast<std::size_t>(i);
    CloudProfileRow& row = rows[ui];
    row.r = probes[ui];
    row.v_g_analytic = mean_gravity(spec, pf, Length{row.r});
    row.v_bb_analytic = mean_bb(spec, pf, Length{row.r});
    row.v_g_mc = primary[ui].v_g;
    row.v_bb_mc = primary[ui].v_bb;
    row.valid = primary[ui].valid;
    std::vector<double> gs, bbs;
    for (const auto& rep : extra) {
      if (!rep[ui].valid) continue;
      gs.push_back(rep[ui].v_g.value());
      bbs.push_back(rep[ui].v_bb.value());
    }
    row.v_g_spread = Energy{sample_std(gs)};
    row.v_bb_spread = Energy{sample_std(bbs)};
  });
  return rows;
}

}  // namespace bbforce
