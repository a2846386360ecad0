#ifndef BBFORCE_DYNAMICS_HPP_
#define BBFORCE_DYNAMICS_HPP_

#include <optional>
#include <vector>

#include "bbforce/cloud.hpp"
#include "bbforce/quantities.hpp"
#include "bbforce/sphere.hpp"

namespace bbforce {

struct TrajectoryState {
  Vec3 position{};
  Vec3 velocity{};
  double time = 0.0;
};

/// Conservative central field -grad V(r) of total_potential around one sphere.
struct CentralField {
  Length radius{1.0};
  PotentialPrefactors prefactors;
  double mass = constants::proton_mass;

  [[nodiscard]] Vec3 acceleration(const Vec3& position) const;
  [[nodiscard]] double energy(const TrajectoryState& s) const;
  [[nodiscard]] Vec3 angular_momentum(const TrajectoryState& s) const;
};

enum class Scheme {
  symplectic,   // velocity Verlet, second order
  symplectic4,  // Yoshida triple-jump composition of velocity Verlet
  adaptive,     // Dormand-Prince 5(4) with step-size control
};

struct OrbitOptions {
  Scheme scheme = Scheme::symplectic;
  /// Fixed step, or the initial step for the adaptive scheme.
  double dt = 0.0;
  /// Fixed-step count; the adaptive scheme integrates to t0 + steps * dt.
  long steps = 0;
  int record_every = 1;
  double rel_tol = 1e-12;
  /// Adaptive capture: a rejected step within this fraction of R of the surface.
  double capture_fraction = 1e-9;
  long max_adaptive_steps = 50'000'000;
};

struct Trajectory {
  std::vector<TrajectoryState> states;
  std::vector<double> energy;
  bool captured = false;
  std::optional<double> capture_time;
};

/// Integrates under the central field. Reaching |position| <= R ends the run
/// with `captured` set. Throws DomainError if the start is not outside the
/// sphere, ConvergenceError if the adaptive step underflows.
[[nodiscard]] Trajectory integrate_orbit(const CentralField& field, const TrajectoryState& initial,
                                         const OrbitOptions& options);

struct Precession {
  bool captured = false;
  /// Mean advance of the periapsis per revolution (rad); empty on capture.
  std::optional<double> per_orbit;
  std::vector<double> periapsis_angles;
  std::vector<double> periapsis_times;
};

/// Locates periapses by parabolic refinement of r^2 and measures their angular
/// advance in the orbital plane. Throws DomainError with fewer than two periapses.
[[nodiscard]] Precession precession_per_orbit(const Trajectory& trajectory);

}  // namespace bbforce

#endif  // BBFORCE_DYNAMICS_HPP_
