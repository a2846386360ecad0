#ifndef BBFORCE_TESTS_ORACLES_HPP_
#define BBFORCE_TESTS_ORACLES_HPP_

// Independent reference evaluators used only by tests. None of these call
// into the library's quadrature.

#include <array>
#include <cmath>
#include <functional>
#include <vector>

namespace oracle {

/// Composite 4-point Gauss-Legendre with `panels` equal panels on [a, b].
inline double gauss_legendre(const std::function<double(double)>& f, double a, double b,
                             int panels) {
  static const double x[4] = {-0.861136311594052575, -0.339981043584856265,
                              0.339981043584856265, 0.861136311594052575};
  static const double w[4] = {0.347854845137453857, 0.652145154862546143,
                              0.652145154862546143, 0.347854845137453857};
  const double h = (b - a) / panels;
  double sum = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double c = a + (p + 0.5) * h;
    double part = 0.0;
    for (int k = 0; k < 4; ++k) part += w[k] * f(c + 0.5 * h * x[k]);
    sum += 0.5 * h * part;
  }
  return sum;
}

inline double planck(double x) { return x <= 0.0 ? 0.0 : x * x * x / std::expm1(x); }

/// PV kernel by singularity subtraction on a fixed grid:
///   PV int_0^X s(x)/(x-p) dx = int_0^X (s(x) - s(p))/(x-p) dx + s(p) ln((X-p)/p),
/// where p = |y| is the pole and s(x) the smooth factor for the sign of y.
inline double pv_kernel(double y, int panels_per_side = 40000) {
  const double p = std::abs(y);
  std::function<double(double)> s;
  if (y > 0) {
    s = [y](double x) { return -2.0 * y * planck(x) / (y + x); };
  } else {
    s = [y](double x) { return 2.0 * y * planck(x) / (y - x); };
  }
  const double upper = p + 120.0;
  const double sp = s(p);
  auto g = [&](double x) { return (s(x) - sp) / (x - p); };
  return gauss_legendre(g, 0.0, p, panels_per_side) +
         gauss_legendre(g, p, upper, panels_per_side) + sp * std::log((upper - p) / p);
}

struct OrbitSample {
  double t;
  std::array<double, 3> x;
  std::array<double, 3> v;
};

/// Classical fixed-step RK4 for a central acceleration a(r) (radial, signed),
/// recording every `record_every` steps.
inline std::vector<OrbitSample> rk4_orbit(const std::function<double(double)>& radial_accel,
                                          OrbitSample s, double dt, long steps,
                                          int record_every) {
  using V = std::array<double, 3>;
  auto accel = [&](const V& x) {
    const double r = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
    const double a = radial_accel(r) / r;
    return V{a * x[0], a * x[1], a * x[2]};
  };
  auto step = [](const V& base, double h, const V& d) {
    return V{base[0] + h * d[0], base[1] + h * d[1], base[2] + h * d[2]};
  };
  std::vector<OrbitSample> out{s};
  for (long n = 1; n <= steps; ++n) {
    const V k1x = s.v, k1v = accel(s.x);
    const V k2x = step(s.v, 0.5 * dt, k1v), k2v = accel(step(s.x, 0.5 * dt, k1x));
    const V k3x = step(s.v, 0.5 * dt, k2v), k3v = accel(step(s.x, 0.5 * dt, k2x));
    const V k4x = step(s.v, dt, k3v), k4v = accel(step(s.x, dt, k3x));
    for (int i = 0; i < 3; ++i) {
      s.x[i] += dt / 6.0 * (k1x[i] + 2 * k2x[i] + 2 * k3x[i] + k4x[i]);
      s.v[i] += dt / 6.0 * (k1v[i] + 2 * k2v[i] + 2 * k3v[i] + k4v[i]);
    }
    s.t = static_cast<double>(n) * dt;
    if (n % record_every == 0) out.push_back(s);
  }
  return out;
}

}  // namespace oracle

#endif  // BBFORCE_TESTS_ORACLES_HPP_
