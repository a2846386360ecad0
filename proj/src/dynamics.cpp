#include "bbforce/dynamics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <initializer_list>
#include <limits>
#include <span>
#include <utility>

#include "bbforce/error.hpp"

namespace bbforce {

namespace {

using constants::pi;

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
Vec3 axpy(double s, const Vec3& x, const Vec3& y) {
  return {y[0] + s * x[0], y[1] + s * x[1], y[2] + s * x[2]};
}
Vec3 scaled(double s, const Vec3& x) { return {s * x[0], s * x[1], s * x[2]}; }

class Recorder {
 public:
  Recorder(const CentralField& field, const OrbitOptions& opt, Trajectory& out)
      : field_(field), every_(std::max(opt.record_every, 1)), out_(out) {}

  void push(const TrajectoryState& s, bool force = false) {
    if (force || count_ % every_ == 0) {
      out_.states.push_back(s);
      out_.energy.push_back(field_.energy(s));
    }
    ++count_;
  }

 private:
  const CentralField& field_;
  long every_;
  long count_ = 0;
  Trajectory& out_;
};

// One velocity-Verlet step of length h. Returns false if the drift lands on
// or inside the sphere; the state then holds the half-kicked crossing point.
bool verlet_step(const CentralField& field, TrajectoryState& s, Vec3& acc, double h) {
  s.velocity = axpy(0.5 * h, acc, s.velocity);
  s.position = axpy(h, s.velocity, s.position);
  s.time += h;
  if (norm(s.position) <= field.radius.value()) return false;
  acc = field.acceleration(s.position);
  s.velocity = axpy(0.5 * h, acc, s.velocity);
  return true;
}

void integrate_fixed(const CentralField& field, TrajectoryState s, const OrbitOptions& opt,
                     Trajectory& out) {
  Recorder rec(field, opt, out);
  rec.push(s);
  Vec3 acc = field.acceleration(s.position);
  const double cbrt2 = std::cbrt(2.0);
  const double w1 = 1.0 / (2.0 - cbrt2);
  const double w0 = -cbrt2 / (2.0 - cbrt2);
  const std::array<double, 1> second_order = {1.0};
  const std::array<double, 3> fourth_order = {w1, w0, w1};
  const std::span<const double> weights =
      opt.scheme == Scheme::symplectic4 ? std::span<const double>(fourth_order)
                                        : std::span<const double>(second_order);
  const double t0 = s.time;
  for (long step = 1; step <= opt.steps; ++step) {
    for (const double w : weights) {
      if (!verlet_step(field, s, acc, w * opt.dt)) {
        out.captured = true;
        out.capture_time = s.time;
        out.states.push_back(s);
        out.energy.push_back(std::numeric_limits<double>::quiet_NaN());
        return;
      }
    }
    // Keep time free of accumulated rounding from the substeps.
    s.time = t0 + static_cast<double>(step) * opt.dt;
    rec.push(s);
  }
}

// Dormand-Prince 5(4) tableau.
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

using State6 = std::array<double, 6>;

void integrate_adaptive(const CentralField& field, TrajectoryState s, const OrbitOptions& opt,
                        Trajectory& out) {
  Recorder rec(field, opt, out);
  rec.push(s);
  const double radius = field.radius.value();
  const double t_end = s.time + static_cast<double>(opt.steps) * opt.dt;
  const double pos_scale = radius;
  const double vel_scale = std::max(norm(s.velocity), 1e-300);

  bool inside = false;
  auto deriv = [&](const State6& y) {
    const Vec3 x{y[0], y[1], y[2]};
    State6 d{y[3], y[4], y[5], 0.0, 0.0, 0.0};
    if (norm(x) <= radius) {
      inside = true;
      return d;
    }
    const Vec3 a = field.acceleration(x);
    d[3] = a[0];
    d[4] = a[1];
    d[5] = a[2];
    return d;
  };
  auto combine = [](const State6& y, double h, std::initializer_list<std::pair<double, const State6*>> terms) {
    State6 out = y;
    for (const auto& [coef, k] : terms) {
      for (int i = 0; i < 6; ++i) out[i] += h * coef * (*k)[i];
    }
    return out;
  };

  State6 y{s.position[0], s.position[1], s.position[2], s.velocity[0], s.velocity[1], s.velocity[2]};
  State6 k1 = deriv(y);
  double h = opt.dt;
  double t = s.time;
  for (long accepted = 0; t < t_end; ) {
    if (accepted > opt.max_adaptive_steps) {
      throw ConvergenceError("adaptive orbit exceeded step budget", t, h);
    }
    h = std::min(h, t_end - t);
    inside = false;
    const State6 k2 = deriv(combine(y, h, {{a21, &k1}}));
    const State6 k3 = deriv(combine(y, h, {{a31, &k1}, {a32, &k2}}));
    const State6 k4 = deriv(combine(y, h, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
    const State6 k5 = deriv(combine(y, h, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
    const State6 k6 =
        deriv(combine(y, h, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
    const State6 y_new = combine(y, h, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
    const State6 k7 = deriv(y_new);

    const double r_now = std::sqrt(y[0] * y[0] + y[1] * y[1] + y[2] * y[2]);
    if (inside) {
      if (r_now - radius <= opt.capture_fraction * radius) {
        out.captured = true;
        out.capture_time = t;
        rec.push({{y[0], y[1], y[2]}, {y[3], y[4], y[5]}, t}, true);
        return;
      }
      h *= 0.25;
      if (!(t + h > t)) throw ConvergenceError("adaptive orbit step-size underflow", t, h);
      continue;
    }

    double err = 0.0;
    for (int i = 0; i < 6; ++i) {
      const double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                            e7 * k7[i]);
      const double floor = i < 3 ? pos_scale : vel_scale;
      const double sc = opt.rel_tol * (std::max(std::abs(y[i]), std::abs(y_new[i])) + floor);
      err = std::max(err, std::abs(e) / sc);
    }
    if (err <= 1.0) {
      t += h;
      y = y_new;
      k1 = k7;
      ++accepted;
      rec.push({{y[0], y[1], y[2]}, {y[3], y[4], y[5]}, t}, t >= t_end);
    }
    const double factor = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
    h *= factor;
    if (!(t + h > t)) throw ConvergenceError("adaptive orbit step-size underflow", t, h);
  }
}

// Value at x of the parabola through three (x, y) samples.
double lagrange3(const std::array<double, 3>& xs, const std::array<double, 3>& ys, double x) {
  double out = 0.0;
  for (int i = 0; i < 3; ++i) {
    double li = 1.0;
    for (int j = 0; j < 3; ++j) {
      if (j != i) li *= (x - xs[j]) / (xs[i] - xs[j]);
    }
    out += ys[i] * li;
  }
  return out;
}

}  // namespace

Vec3 CentralField::acceleration(const Vec3& position) const {
  const double r = norm(position);
  const double f = total_radial_force(radius, Length{r}, prefactors).value();
  return scaled(f / (mass * r), position);
}

double CentralField::energy(const TrajectoryState& s) const {
  return 0.5 * mass * dot(s.velocity, s.velocity) +
         total_potential(radius, Length{norm(s.position)}, prefactors).value();
}

Vec3 CentralField::angular_momentum(const TrajectoryState& s) const {
  return scaled(mass, cross(s.position, s.velocity));
}

Trajectory integrate_orbit(const CentralField& field, const TrajectoryState& initial,
                           const OrbitOptions& options) {
  if (!(norm(initial.position) > field.radius.value())) {
    throw DomainError("integrate_orbit: initial position must lie outside the sphere");
  }
  if (!(options.dt > 0.0) || options.steps < 0) {
    throw DomainError("integrate_orbit: dt must be > 0 and steps >= 0");
  }
  Trajectory out;
  if (options.scheme == Scheme::adaptive) {
    integrate_adaptive(field, initial, options, out);
  } else {
    integrate_fixed(field, initial, options, out);
  }
  return out;
}

Precession precession_per_orbit(const Trajectory& trajectory) {
  Precession out;
  if (trajectory.captured) {
    out.captured = true;
    return out;
  }
  const auto& st = trajectory.states;
  if (st.size() < 3) throw DomainError("precession_per_orbit: trajectory too short");

  const Vec3 e1 = scaled(1.0 / norm(st.front().position), st.front().position);
  const Vec3 normal = cross(st.front().position, st.front().velocity);
  Vec3 e2 = cross(normal, e1);
  e2 = scaled(1.0 / norm(e2), e2);

  std::vector<double> theta(st.size());
  std::vector<double> r2(st.size());
  double previous = 0.0;
  for (std::size_t i = 0; i < st.size(); ++i) {
    const double raw = std::atan2(dot(st[i].position, e2), dot(st[i].position, e1));
    double unwrapped = raw;
    if (i > 0) {
      unwrapped = previous + std::remainder(raw - previous, 2.0 * pi);
    }
    theta[i] = unwrapped;
    previous = unwrapped;
    r2[i] = dot(st[i].position, st[i].position);
  }

  for (std::size_t i = 1; i + 1 < st.size(); ++i) {
    if (!(r2[i] < r2[i - 1] && r2[i] <= r2[i + 1])) continue;
    const std::array<double, 3> ts = {st[i - 1].time, st[i].time, st[i + 1].time};
    const std::array<double, 3> rs = {r2[i - 1], r2[i], r2[i + 1]};
    // Vertex of the parabola through the three r^2 samples.
    const double d01 = (rs[1] - rs[0]) / (ts[1] - ts[0]);
    const double d12 = (rs[2] - rs[1]) / (ts[2] - ts[1]);
    const double curvature = (d12 - d01) / (ts[2] - ts[0]);
    double t_min = ts[1];
    if (curvature > 0.0) {
      t_min = 0.5 * (ts[0] + ts[1]) - d01 / (2.0 * curvature);
      t_min = std::clamp(t_min, ts[0], ts[2]);
    }
    out.periapsis_times.push_back(t_min);
    out.periapsis_angles.push_back(
        lagrange3(ts, {theta[i - 1], theta[i], theta[i + 1]}, t_min));
  }
  if (out.periapsis_angles.size() < 2) {
    throw DomainError("precession_per_orbit: fewer than two periapses");
  }
  const double span = out.periapsis_angles.back() - out.periapsis_angles.front();
  const double orbits = static_cast<double>(out.periapsis_angles.size() - 1);
  out.per_orbit = span / orbits - 2.0 * pi;
  return out;
}

}  // namespace bbforce
