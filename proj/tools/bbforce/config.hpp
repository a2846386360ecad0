#ifndef BBFORCE_TOOLS_CONFIG_HPP_
#define BBFORCE_TOOLS_CONFIG_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bbforce/dynamics.hpp"
#include "bbforce/hydrogen.hpp"
#include "bbforce/sphere.hpp"

namespace bbforce::cli {

enum class Format { csv, json };
enum class ShiftMode { approx, full };

// Scenario file: one `key = value` per line, `#` starts a comment, lists are
// comma separated. Every key has a default; see README for the schema.
struct ScenarioConfig {
  std::string atom = "builtin-hydrogen";
  int n_max = kDefaultHydrogenNmax;
  Completion completion = Completion::pseudo_line;
  ShiftMode shift_mode = ShiftMode::approx;
  double atom_mass = constants::proton_mass;

  SphereSource source{Length{1e-6}, Temperature{100.0}, 2000.0, 0.0, Temperature{0.0}};

  std::vector<double> temperatures = {0, 50, 100, 300, 400, 1000, 2000, 4000, 6000};
  std::vector<double> r_over_radius = {1, 1.1, 1.5, 2, 5, 10, 20, 50, 100};
  std::vector<double> radii = {1e-6, 1e-5, 1e-4, 1e-3, 1e-2, 1e-1, 1,
                               10,   1e2,  1e3,  1e4,  1e5,  1e6,  1e7, 1e8, 1e9};
  std::vector<double> charge_densities = {1e-9, 1e-6};

  int cloud_count = 8000;
  double cloud_sigma = 300.0;
  int cloud_probes = 7;
  double cloud_rmax_sigma = 3.0;
  int cloud_replicates = 128;

  double crossover_r_over_radius = 2.0;

  double orbit_periapsis = 4.0;       // in units of R
  double orbit_eccentricity = 0.6;
  double orbit_bb_over_g = -1.0;      // < 0: use the source's own ratio
  Scheme orbit_scheme = Scheme::symplectic4;
  int orbit_steps_per_orbit = 2000;
  double orbit_orbits = 5.0;
  int orbit_record_every = 10;

  std::uint64_t seed = 2014;
  Format format = Format::csv;
  std::filesystem::path out = "out";
  int threads = 1;

  /// Throws DomainError on any out-of-range or unsorted field.
  void validate() const;
  /// Canonical key/value echo, in schema order.
  [[nodiscard]] std::vector<std::pair<std::string, std::string>> echo() const;
};

/// Applies one `key = value` assignment. Throws DomainError for unknown keys
/// or unparsable values.
void apply_setting(ScenarioConfig& cfg, std::string_view key, std::string_view value);

/// Reads a scenario file on top of the defaults. Throws DomainError.
[[nodiscard]] ScenarioConfig load_config(const std::filesystem::path& path);
void apply_config_text(ScenarioConfig& cfg, std::string_view text, std::string_view origin);

/// Inclusive linear grid of `steps` points.
[[nodiscard]] std::vector<double> linear_grid(double lo, double hi, int steps);

/// Line list named by cfg.atom: the built-in hydrogen list or a JSON file.
[[nodiscard]] LineList load_line_list(const ScenarioConfig& cfg);

[[nodiscard]] std::string_view to_string(Format f);
[[nodiscard]] std::string_view to_string(ShiftMode m);
[[nodiscard]] std::string_view to_string(Scheme s);

}  // namespace bbforce::cli

#endif  // BBFORCE_TOOLS_CONFIG_HPP_
