#include "config.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "bbforce/error.hpp"

namespace bbforce::cli {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_double(std::string_view key, std::string_view text) {
  text = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v)) {
    throw DomainError(fmt::format("{}: '{}' is not a finite number", key, text));
  }
  return v;
}

long long parse_integer(std::string_view key, std::string_view text) {
  text = trim(text);
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw DomainError(fmt::format("{}: '{}' is not an integer", key, text));
  }
  return v;
}

int parse_int(std::string_view key, std::string_view text) {
  const long long v = parse_integer(key, text);
  if (v < -2147483647LL || v > 2147483647LL) throw DomainError(fmt::format("{}: out of range", key));
  return static_cast<int>(v);
}

std::vector<double> parse_list(std::string_view key, std::string_view text) {
  std::vector<double> out;
  while (true) {
    const auto comma = text.find(',');
    out.push_back(parse_double(key, text.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

std::string join(const std::vector<double>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += fmt::format("{}{}", i ? ", " : "", xs[i]);
  return out;
}

using Setter = std::function<void(ScenarioConfig&, std::string_view key, std::string_view value)>;

template <class T>
Setter number(T ScenarioConfig::*field) {
  return [field](ScenarioConfig& c, std::string_view k, std::string_view v) {
    if constexpr (std::is_same_v<T, int>) {
      c.*field = parse_int(k, v);
    } else {
      c.*field = parse_double(k, v);
    }
  };
}

Setter list(std::vector<double> ScenarioConfig::*field) {
  return [field](ScenarioConfig& c, std::string_view k, std::string_view v) {
    c.*field = parse_list(k, v);
  };
}

const std::map<std::string, Setter, std::less<>>& setters() {
  static const std::map<std::string, Setter, std::less<>> table = {
      {"atom", [](ScenarioConfig& c, auto, auto v) { c.atom = std::string(trim(v)); }},
      {"n_max", number(&ScenarioConfig::n_max)},
      {"completion",
       [](ScenarioConfig& c, auto, auto v) { c.completion = completion_from_string(trim(v)); }},
      {"shift_mode",
       [](ScenarioConfig& c, auto k, auto v) {
         v = trim(v);
         if (v == "approx") c.shift_mode = ShiftMode::approx;
         else if (v == "full") c.shift_mode = ShiftMode::full;
         else throw DomainError(fmt::format("{}: expected approx or full, got '{}'", k, v));
       }},
      {"atom_mass", number(&ScenarioConfig::atom_mass)},
      {"source.radius",
       [](ScenarioConfig& c, auto k, auto v) { c.source.radius = Length{parse_double(k, v)}; }},
      {"source.mass",
       [](ScenarioConfig& c, auto k, auto v) {
         // Derived: needs density first; radius is recomputed from mass and density.
         if (!(c.source.density > 0.0)) throw DomainError("source.mass: set source.density first");
         c.source.radius = sphere_radius_for_mass(parse_double(k, v), c.source.density);
       }},
      {"source.temperature",
       [](ScenarioConfig& c, auto k, auto v) {
         c.source.temperature = Temperature{parse_double(k, v)};
       }},
      {"source.density",
       [](ScenarioConfig& c, auto k, auto v) { c.source.density = parse_double(k, v); }},
      {"source.charge_density",
       [](ScenarioConfig& c, auto k, auto v) { c.source.charge_density = parse_double(k, v); }},
      {"source.ambient",
       [](ScenarioConfig& c, auto k, auto v) { c.source.ambient = Temperature{parse_double(k, v)}; }},
      {"temperatures", list(&ScenarioConfig::temperatures)},
      {"r_over_radius", list(&ScenarioConfig::r_over_radius)},
      {"radii", list(&ScenarioConfig::radii)},
      {"charge_densities", list(&ScenarioConfig::charge_densities)},
      {"cloud.count", number(&ScenarioConfig::cloud_count)},
      {"cloud.sigma", number(&ScenarioConfig::cloud_sigma)},
      {"cloud.probes", number(&ScenarioConfig::cloud_probes)},
      {"cloud.rmax_sigma", number(&ScenarioConfig::cloud_rmax_sigma)},
      {"cloud.replicates", number(&ScenarioConfig::cloud_replicates)},
      {"crossover.r_over_radius", number(&ScenarioConfig::crossover_r_over_radius)},
      {"orbit.periapsis", number(&ScenarioConfig::orbit_periapsis)},
      {"orbit.eccentricity", number(&ScenarioConfig::orbit_eccentricity)},
      {"orbit.bb_over_g", number(&ScenarioConfig::orbit_bb_over_g)},
      {"orbit.scheme",
       [](ScenarioConfig& c, auto k, auto v) {
         v = trim(v);
         if (v == "symplectic") c.orbit_scheme = Scheme::symplectic;
         else if (v == "symplectic4") c.orbit_scheme = Scheme::symplectic4;
         else if (v == "adaptive") c.orbit_scheme = Scheme::adaptive;
         else throw DomainError(fmt::format("{}: unknown scheme '{}'", k, v));
       }},
      {"orbit.steps_per_orbit", number(&ScenarioConfig::orbit_steps_per_orbit)},
      {"orbit.orbits", number(&ScenarioConfig::orbit_orbits)},
      {"orbit.record_every", number(&ScenarioConfig::orbit_record_every)},
      {"seed",
       [](ScenarioConfig& c, auto k, auto v) {
         v = trim(v);
         std::uint64_t s = 0;
         const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), s);
         if (ec != std::errc() || ptr != v.data() + v.size()) {
           throw DomainError(fmt::format("{}: '{}' is not an unsigned integer", k, v));
         }
         c.seed = s;
       }},
      {"format",
       [](ScenarioConfig& c, auto k, auto v) {
         v = trim(v);
         if (v == "csv") c.format = Format::csv;
         else if (v == "json") c.format = Format::json;
         else throw DomainError(fmt::format("{}: expected csv or json, got '{}'", k, v));
       }},
      {"out", [](ScenarioConfig& c, auto, auto v) { c.out = std::string(trim(v)); }},
      {"threads", number(&ScenarioConfig::threads)},
  };
  return table;
}

void require_grid(std::string_view name, const std::vector<double>& xs, double lowest,
                  bool inclusive) {
  if (xs.empty()) throw DomainError(fmt::format("{}: grid must not be empty", name));
  if (!std::is_sorted(xs.begin(), xs.end()) ||
      std::adjacent_find(xs.begin(), xs.end()) != xs.end()) {
    throw DomainError(fmt::format("{}: grid must be strictly increasing", name));
  }
  const bool ok = inclusive ? xs.front() >= lowest : xs.front() > lowest;
  if (!ok) {
    throw DomainError(fmt::format("{}: values must be {} {}", name, inclusive ? ">=" : ">", lowest));
  }
}

}  // namespace

std::string_view to_string(Format f) { return f == Format::csv ? "csv" : "json"; }
std::string_view to_string(ShiftMode m) { return m == ShiftMode::approx ? "approx" : "full"; }
std::string_view to_string(Scheme s) {
  switch (s) {
    case Scheme::symplectic: return "symplectic";
    case Scheme::symplectic4: return "symplectic4";
    case Scheme::adaptive: return "adaptive";
  }
  return "?";
}

void ScenarioConfig::validate() const {
  if (n_max < 2) throw DomainError("n_max must be >= 2");
  if (!(atom_mass > 0.0)) throw DomainError("atom_mass must be > 0");
  source.validate();
  require_grid("temperatures", temperatures, 0.0, true);
  require_grid("r_over_radius", r_over_radius, 1.0, true);
  require_grid("radii", radii, 0.0, false);
  require_grid("charge_densities", charge_densities, 0.0, true);
  if (cloud_count < 1) throw DomainError("cloud.count must be >= 1");
  if (!(cloud_sigma > 0.0)) throw DomainError("cloud.sigma must be > 0");
  if (cloud_probes < 1) throw DomainError("cloud.probes must be >= 1");
  if (!(cloud_rmax_sigma > 0.0)) throw DomainError("cloud.rmax_sigma must be > 0");
  if (cloud_replicates < 0) throw DomainError("cloud.replicates must be >= 0");
  if (!(crossover_r_over_radius > 1.0)) throw DomainError("crossover.r_over_radius must be > 1");
  if (!(orbit_periapsis > 1.0)) throw DomainError("orbit.periapsis must be > 1 (units of R)");
  if (!(orbit_eccentricity >= 0.0 && orbit_eccentricity < 1.0)) {
    throw DomainError("orbit.eccentricity must be in [0, 1)");
  }
  if (orbit_steps_per_orbit < 10) throw DomainError("orbit.steps_per_orbit must be >= 10");
  if (!(orbit_orbits > 0.0)) throw DomainError("orbit.orbits must be > 0");
  if (orbit_record_every < 1) throw DomainError("orbit.record_every must be >= 1");
  if (threads < 1) throw DomainError("threads must be >= 1");
}

std::vector<std::pair<std::string, std::string>> ScenarioConfig::echo() const {
  return {
      {"atom", atom},
      {"n_max", fmt::format("{}", n_max)},
      {"completion", std::string(to_string(completion))},
      {"shift_mode", std::string(to_string(shift_mode))},
      {"atom_mass", fmt::format("{}", atom_mass)},
      {"source.radius", fmt::format("{}", source.radius.value())},
      {"source.temperature", fmt::format("{}", source.temperature.value())},
      {"source.density", fmt::format("{}", source.density)},
      {"source.charge_density", fmt::format("{}", source.charge_density)},
      {"source.ambient", fmt::format("{}", source.ambient.value())},
      {"temperatures", join(temperatures)},
      {"r_over_radius", join(r_over_radius)},
      {"radii", join(radii)},
      {"charge_densities", join(charge_densities)},
      {"cloud.count", fmt::format("{}", cloud_count)},
      {"cloud.sigma", fmt::format("{}", cloud_sigma)},
      {"cloud.probes", fmt::format("{}", cloud_probes)},
      {"cloud.rmax_sigma", fmt::format("{}", cloud_rmax_sigma)},
      {"cloud.replicates", fmt::format("{}", cloud_replicates)},
      {"crossover.r_over_radius", fmt::format("{}", crossover_r_over_radius)},
      {"orbit.periapsis", fmt::format("{}", orbit_periapsis)},
      {"orbit.eccentricity", fmt::format("{}", orbit_eccentricity)},
      {"orbit.bb_over_g", fmt::format("{}", orbit_bb_over_g)},
      {"orbit.scheme", std::string(to_string(orbit_scheme))},
      {"orbit.steps_per_orbit", fmt::format("{}", orbit_steps_per_orbit)},
      {"orbit.orbits", fmt::format("{}", orbit_orbits)},
      {"orbit.record_every", fmt::format("{}", orbit_record_every)},
      {"seed", fmt::format("{}", seed)},
      {"format", std::string(to_string(format))},
  };
}

void apply_setting(ScenarioConfig& cfg, std::string_view key, std::string_view value) {
  key = trim(key);
  const auto& table = setters();
  const auto it = table.find(key);
  if (it == table.end()) throw DomainError(fmt::format("unknown config key '{}'", key));
  it->second(cfg, key, value);
}

void apply_config_text(ScenarioConfig& cfg, std::string_view text, std::string_view origin) {
  std::istringstream in{std::string(text)};
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    std::string_view body = line;
    if (const auto hash = body.find('#'); hash != std::string_view::npos) body = body.substr(0, hash);
    body = trim(body);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) {
      throw DomainError(fmt::format("{}:{}: expected 'key = value'", origin, number));
    }
    try {
      apply_setting(cfg, body.substr(0, eq), body.substr(eq + 1));
    } catch (const DomainError& e) {
      throw DomainError(fmt::format("{}:{}: {}", origin, number, e.what()));
    }
  }
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DomainError(fmt::format("cannot read config '{}'", path.string()));
  std::ostringstream text;
  text << in.rdbuf();
  ScenarioConfig cfg;
  apply_config_text(cfg, text.str(), path.string());
  return cfg;
}

std::vector<double> linear_grid(double lo, double hi, int steps) {
  if (steps < 1) throw DomainError("grid needs at least one point");
  if (steps == 1) return {lo};
  if (!(hi > lo)) throw DomainError("grid upper bound must exceed the lower bound");
  std::vector<double> out(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) out[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (steps - 1);
  out.back() = hi;
  return out;
}

LineList load_line_list(const ScenarioConfig& cfg) {
  if (cfg.atom == "builtin-hydrogen") return build_line_list(cfg.n_max, cfg.completion);
  std::ifstream in(cfg.atom);
  if (!in) throw DomainError(fmt::format("cannot read line list '{}'", cfg.atom));
  std::ostringstream text;
  text << in.rdbuf();
  return line_list_from_json(text.str());
}

}  // namespace bbforce::cli
