#include "commands.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <exception>
#include <fstream>
#include <mutex>
#include <thread>

#include "bbforce/cloud.hpp"
#include "bbforce/dynamics.hpp"
#include "bbforce/error.hpp"
#include "bbforce/rates.hpp"
#include "bbforce/sphere.hpp"
#include "bbforce/stark.hpp"
#include "json.hpp"

namespace bbforce::cli {

namespace {

using constants::pi;

// Each index is computed by exactly one thread into its own slot, so the
// result does not depend on the thread count.
template <class T, class Fn>
std::vector<T> parallel_map(std::size_t count, int threads, Fn&& fn) {
  std::vector<T> out(count);
  const auto workers = static_cast<std::size_t>(std::clamp<long long>(threads, 1, std::max<long long>(1, static_cast<long long>(count))));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
    return out;
  }
  std::vector<std::thread> pool;
  std::exception_ptr failure;
  std::mutex failure_mutex;
  for (std::size_t k = 0; k < workers; ++k) {
    pool.emplace_back([&, k] {
      try {
        for (std::size_t i = k; i < count; i += workers) out[i] = fn(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

ShiftModel shift_model(const ScenarioConfig& cfg) {
  if (cfg.shift_mode == ShiftMode::approx) return approx_shift_model();
  return full_shift_model(load_line_list(cfg));
}

PotentialPrefactors source_prefactors(const ScenarioConfig& cfg) {
  return prefactors(cfg.source, shift_model(cfg), cfg.atom_mass);
}

std::string cell_text(const Cell& c) {
  struct {
    std::string operator()(std::monostate) const { return {}; }
    std::string operator()(double v) const { return fmt::format("{}", v); }
    std::string operator()(long long v) const { return fmt::format("{}", v); }
    std::string operator()(const std::string& v) const { return v; }
  } visit;
  return std::visit(visit, c);
}

nlohmann::ordered_json cell_json(const Cell& c) {
  struct {
    nlohmann::ordered_json operator()(std::monostate) const { return nullptr; }
    nlohmann::ordered_json operator()(double v) const {
      return std::isfinite(v) ? nlohmann::ordered_json(v) : nlohmann::ordered_json(nullptr);
    }
    nlohmann::ordered_json operator()(long long v) const { return v; }
    nlohmann::ordered_json operator()(const std::string& v) const { return v; }
  } visit;
  return std::visit(visit, c);
}

std::string num(double v) { return fmt::format("{}", v); }

// ---------------------------------------------------------------- shift

CommandResult cmd_shift(const ScenarioConfig& cfg) {
  const LineList list = load_line_list(cfg);
  struct Row { double full, approx; };
  const auto rows = parallel_map<Row>(cfg.temperatures.size(), cfg.threads, [&](std::size_t i) {
    const Temperature t{cfg.temperatures[i]};
    if (t.value() == 0.0) return Row{0.0, 0.0};
    return Row{thermal_shift(list, t).shift.value(), approx_shift_1s(t).value()};
  });

  Table table{"shift",
              {"T_K", "dE_full_J", "dE_approx_J", "ratio_full_over_approx", "dE_full_eV",
               "dE_full_over_hbar_rad_s", "dE_approx_over_hbar_rad_s", "dE_full_over_h_Hz"},
              {},
              {{"readout", "dE/hbar is an angular frequency in rad/s; dE/h is in cycles/s"},
               {"ratio_at_zero", "T = 0 rows carry zero shift and the limiting ratio 1"}}};
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const double full = rows[i].full;
    const double approx = rows[i].approx;
    const double ratio = approx == 0.0 ? 1.0 : full / approx;
    table.rows.push_back({cfg.temperatures[i], full, approx, ratio, ev_from_energy(Energy{full}),
                          full / constants::hbar, approx / constants::hbar,
                          full / (2.0 * pi * constants::hbar)});
  }

  std::vector<Table> tables{table};
  if (cfg.atom == "builtin-hydrogen") {
    static constexpr std::array<int, 7> sweep = {5, 10, 25, 50, 100, 150, 200};
    const Temperature t{300.0};
    Table conv{"shift_convergence",
               {"n_max", "dE_bound_only_J", "relative_change"},
               {},
               {{"temperature_K", "300"}, {"completion", "bound-only"}}};
    for (const auto& row : shift_convergence_report(
             [](int n) { return build_line_list(n, Completion::bound_only); }, t, sweep)) {
      conv.rows.push_back({static_cast<long long>(row.n_max), row.shift.value(), row.relative_change});
    }
    tables.push_back(std::move(conv));
  }

  std::string summary = fmt::format("shift: {} temperatures", rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (cfg.temperatures[i] == 400.0) {
      summary += fmt::format("; 400 K: dE/hbar = {:.4f} rad/s (full), {:.4f} rad/s (T^4 form)",
                             rows[i].full / constants::hbar, rows[i].approx / constants::hbar);
    }
  }
  return {tables, summary};
}

// ---------------------------------------------------------------- rates

CommandResult cmd_rates(const ScenarioConfig& cfg) {
  const LineList list = load_line_list(cfg);
  if (list.empty()) throw DomainError("rates: line list is empty");
  const std::string target = list.transitions().front().label;
  std::vector<double> temps;
  for (const double t : cfg.temperatures) {
    if (t > 0.0) temps.push_back(t);
  }
  if (temps.empty()) throw DomainError("rates: needs at least one temperature > 0");

  struct Row { double log10_gamma, log10_tau; CrossoverSample sample; };
  const Length radius = cfg.source.radius;
  const Length r = radius * cfg.crossover_r_over_radius;
  const auto rows = parallel_map<Row>(temps.size(), cfg.threads, [&](std::size_t i) {
    const Temperature t{temps[i]};
    return Row{bbr_width(list, t).log10_rate, transition_time(list, t, target).log10_seconds,
               dipole_vs_pressure(list, radius, r, t)};
  });

  Table rates{"rates",
              {"T_K", "log10_width_per_s", fmt::format("log10_tau_{}_s", target),
               fmt::format("tau_{}_s", target), "hyperfine_rate_per_s",
               "hyperfine_inverted_form_per_s", "width_increasing"},
              {},
              {{"lifetime_line", target},
               {"hyperfine", "rate = 3 A21 kT / (hbar omega21); inverted form shown for comparison"}}};
  bool monotone = true;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const bool up = i == 0 || rows[i].log10_gamma > rows[i - 1].log10_gamma;
    monotone = monotone && up;
    const Temperature t{temps[i]};
    rates.rows.push_back({temps[i], rows[i].log10_gamma, rows[i].log10_tau,
                          representable_pow10(rows[i].log10_tau), hyperfine_rate(t).value(),
                          hyperfine_rate_inverted_form(t).value(), static_cast<long long>(up)});
  }
  rates.notes.push_back({"width_monotone", monotone ? "yes" : "no"});

  std::vector<Temperature> none;
  const auto report = dipole_vs_pressure_crossover(list, radius, r, none);
  Table cross{"crossover",
              {"T_K", "log10_dipole_force_N", "log10_pressure_force_N", "log10_ratio", "dominant_line"},
              {},
              {{"r_over_radius", num(cfg.crossover_r_over_radius)},
               {"radius_m", num(radius.value())},
               {"pressure_model", "single dominant line, isotropic re-emission"},
               {"crossover_K", report.crossover ? num(report.crossover->value()) : "none in [1000, 20000]"}}};
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& s = rows[i].sample;
    cross.rows.push_back({temps[i], s.log10_dipole_force, s.log10_pressure_force,
                          s.log10_dipole_force - s.log10_pressure_force, s.dominant_line});
  }
  const std::string summary = fmt::format(
      "rates: {} temperatures, width monotone: {}, dipole/pressure crossover: {}", temps.size(),
      monotone ? "yes" : "no",
      report.crossover ? fmt::format("{:.0f} K", report.crossover->value()) : "none");
  return {{rates, cross}, summary};
}

// ---------------------------------------------------------------- force

CommandResult cmd_force(const ScenarioConfig& cfg) {
  const auto pf = source_prefactors(cfg);
  const Length radius = cfg.source.radius;
  const PotentialPrefactors g_only{pf.a_g, Energy{}, Energy{}, pf.bb_sign};
  const PotentialPrefactors q_only{Energy{}, pf.a_q, Energy{}, pf.bb_sign};
  const PotentialPrefactors bb_only{Energy{}, Energy{}, pf.a_bb, pf.bb_sign};
  Table table{"force",
              {"r_over_R", "r_m", "V_G_J", "V_Q_J", "V_BB_J", "V_total_J", "F_BB_N", "F_total_N"},
              {},
              {{"sign", "negative force points toward the sphere"},
               {"surface", "force columns are empty at r = R, where the blackbody force diverges"}}};
  for (const double k : cfg.r_over_radius) {
    const Length r = radius * k;
    std::vector<Cell> row{k, r.value(), total_potential(radius, r, g_only).value(),
                          total_potential(radius, r, q_only).value(),
                          total_potential(radius, r, bb_only).value(),
                          total_potential(radius, r, pf).value()};
    if (k > 1.0) {
      row.emplace_back(total_radial_force(radius, r, bb_only).value());
      row.emplace_back(total_radial_force(radius, r, pf).value());
    } else {
      row.emplace_back(std::monostate{});
      row.emplace_back(std::monostate{});
    }
    table.rows.push_back(std::move(row));
  }
  return {{table}, fmt::format("force: {} radii around R = {} m", table.rows.size(), radius.value())};
}

// ---------------------------------------------------------------- prefactors

CommandResult cmd_prefactors(const ScenarioConfig& cfg) {
  const auto pf = source_prefactors(cfg);
  const auto& s = cfg.source;
  Table table{"prefactors",
              {"R_m", "T_K", "rho_kg_m3", "sigma_Q_C_m2", "T_amb_K", "mass_kg", "a_G_J", "a_Q_J",
               "a_BB_J", "bb_sign", "a_BB_over_a_G", "a_Q_over_a_G"},
              {},
              {{"shift_mode", std::string(to_string(cfg.shift_mode))}}};
  const double ratio_bb = pf.a_g.value() > 0.0 ? pf.a_bb / pf.a_g : NAN;
  const double ratio_q = pf.a_g.value() > 0.0 ? pf.a_q / pf.a_g : NAN;
  table.rows.push_back({s.radius.value(), s.temperature.value(), s.density, s.charge_density,
                        s.ambient.value(), s.mass(), pf.a_g.value(), pf.a_q.value(),
                        pf.a_bb.value(), static_cast<long long>(pf.bb_sign),
                        std::isfinite(ratio_bb) ? Cell{ratio_bb} : Cell{},
                        std::isfinite(ratio_q) ? Cell{ratio_q} : Cell{}});
  return {{table}, fmt::format("prefactors: a_BB/a_G = {:.4g}", ratio_bb)};
}

// ---------------------------------------------------------------- fig2

CommandResult cmd_fig2(const ScenarioConfig& cfg) {
  Table table{"fig2",
              {"r_over_R", "bb_scaling", "gravity_scaling", "electrostatic_scaling",
               "bb_far_field_R2_over_2r2"},
              {},
              {}};
  for (const double k : cfg.r_over_radius) {
    table.rows.push_back({k, bb_scaling(Length{1.0}, Length{k}), 1.0 / k, 1.0 / std::pow(k, 4),
                          1.0 / (2.0 * k * k)});
  }
  return {{table}, fmt::format("fig2: {} rows", table.rows.size())};
}

// ---------------------------------------------------------------- fig3

CommandResult cmd_fig3(const ScenarioConfig& cfg) {
  const ShiftModel model = shift_model(cfg);
  const auto shifts = parallel_map<double>(cfg.temperatures.size(), cfg.threads, [&](std::size_t i) {
    return model(Temperature{cfg.temperatures[i]}).value();
  });
  Table table{"fig3", {"R_m", "a_G_J"}, {}, {{"density_kg_m3", num(cfg.source.density)},
                                            {"shift_mode", std::string(to_string(cfg.shift_mode))}}};
  for (const double t : cfg.temperatures) table.columns.push_back(fmt::format("a_BB_T{}K_J", t));
  for (const double q : cfg.charge_densities) table.columns.push_back(fmt::format("a_Q_sigma{}_J", q));
  for (const double radius : cfg.radii) {
    SphereSource s = cfg.source;
    s.radius = Length{radius};
    s.temperature = Temperature{0.0};
    s.ambient = Temperature{0.0};
    s.charge_density = 0.0;
    const auto pf = prefactors(s, model, cfg.atom_mass);
    std::vector<Cell> row{radius, pf.a_g.value()};
    for (const double shift : shifts) row.emplace_back(std::abs(shift) / 2.0);
    for (const double q : cfg.charge_densities) {
      s.charge_density = q;
      row.emplace_back(prefactors(s, model, cfg.atom_mass).a_q.value());
    }
    table.rows.push_back(std::move(row));
  }
  return {{table}, fmt::format("fig3: {} radii x {} temperatures", cfg.radii.size(), shifts.size())};
}

// ---------------------------------------------------------------- cloud / fig4

CloudSpec cloud_spec(const ScenarioConfig& cfg) {
  CloudSpec spec;
  spec.count = cfg.cloud_count;
  spec.sigma = Length{cfg.cloud_sigma};
  spec.sphere = cfg.source;
  spec.seed = cfg.seed;
  spec.profile_samples = cfg.cloud_probes;
  spec.validate();
  return spec;
}

CommandResult cmd_fig4(const ScenarioConfig& cfg) {
  const CloudSpec spec = cloud_spec(cfg);
  const auto pf = source_prefactors(cfg);
  const auto probes =
      cfg.cloud_probes == 1 ? std::vector<double>{0.0}
                            : linear_grid(0.0, cfg.cloud_rmax_sigma * cfg.cloud_sigma, cfg.cloud_probes);
  const auto rows = cloud_profile(spec, pf, probes, cfg.cloud_replicates, cfg.threads);
  Table table{"fig4",
              {"r", "V_G_analytic", "V_BB_analytic", "V_G_mc", "V_BB_mc", "V_G_spread",
               "V_BB_spread", "valid"},
              {},
              {{"spread", fmt::format("standard deviation over {} replicate clouds seeded from seed",
                                      cfg.cloud_replicates)},
               {"bb_term", "per-sphere far field -a_BB R^2 / (2 d^2)"}}};
  int worst_flagged = 0;
  double worst_z = 0.0;
  for (const auto& row : rows) {
    const auto spread_or_empty = [&](Energy s) { return cfg.cloud_replicates > 1 ? Cell{s.value()} : Cell{}; };
    table.rows.push_back({row.r, row.v_g_analytic.value(), row.v_bb_analytic.value(),
                          row.valid ? Cell{row.v_g_mc.value()} : Cell{},
                          row.valid ? Cell{row.v_bb_mc.value()} : Cell{},
                          spread_or_empty(row.v_g_spread), spread_or_empty(row.v_bb_spread),
                          static_cast<long long>(row.valid)});
    if (!row.valid) ++worst_flagged;
    if (row.valid && cfg.cloud_replicates > 1) {
      worst_z = std::max({worst_z,
                          std::abs((row.v_g_mc - row.v_g_analytic) / row.v_g_spread),
                          std::abs((row.v_bb_mc - row.v_bb_analytic) / row.v_bb_spread)});
    }
  }
  std::string summary = fmt::format("fig4: {} probes, N = {}", rows.size(), spec.count);
  if (cfg.cloud_replicates > 1) summary += fmt::format(", max |MC - analytic| / spread = {:.2f}", worst_z);
  if (worst_flagged) summary += fmt::format(", {} probes inside a sphere", worst_flagged);
  return {{table}, summary};
}

CommandResult cmd_cloud(const ScenarioConfig& cfg) {
  const CloudSpec spec = cloud_spec(cfg);
  const auto pf = source_prefactors(cfg);
  const auto d = dominance_ratio(spec, pf);
  Table dom{"cloud_dominance",
            {"a_BB_over_a_G", "sigma_over_R", "threshold_sigma_over_R", "center_ratio_BB_over_G",
             "bb_dominates", "V_G_center_J", "V_BB_center_J"},
            {},
            {}};
  dom.rows.push_back({d.bb_over_g, d.sigma_over_radius, d.threshold, d.center_ratio,
                      static_cast<long long>(d.dominant), mean_gravity(spec, pf, Length{0.0}).value(),
                      mean_bb(spec, pf, Length{0.0}).value()});
  Table prof{"cloud_means", {"r", "V_G_mean_J", "V_BB_mean_J", "ratio_BB_over_G"}, {}, {}};
  for (const double r : linear_grid(0.0, 10.0 * cfg.cloud_sigma, 41)) {
    const double g = mean_gravity(spec, pf, Length{r}).value();
    const double b = mean_bb(spec, pf, Length{r}).value();
    prof.rows.push_back({r, g, b, g != 0.0 ? Cell{b / g} : Cell{}});
  }
  return {{dom, prof}, fmt::format("cloud: a_BB/a_G = {:.4g}, sigma/R = {:.4g}, threshold = {:.4g}, "
                                   "blackbody dominates: {}",
                                   d.bb_over_g, d.sigma_over_radius, d.threshold,
                                   d.dominant ? "yes" : "no")};
}

// ---------------------------------------------------------------- orbit

CommandResult cmd_orbit(const ScenarioConfig& cfg) {
  auto pf = source_prefactors(cfg);
  if (cfg.orbit_bb_over_g >= 0.0) {
    pf.a_bb = pf.a_g * cfg.orbit_bb_over_g;
    pf.bb_sign = 1;
  }
  const double radius = cfg.source.radius.value();
  const double gm = pf.a_g.value() * radius / cfg.atom_mass;
  if (!(gm > 0.0)) throw DomainError("orbit: source needs density > 0 for a bound orbit");
  const double rp = cfg.orbit_periapsis * radius;
  const double e = cfg.orbit_eccentricity;
  const double a = rp / (1.0 - e);
  const double period = 2.0 * pi * std::sqrt(a * a * a / gm);

  CentralField field{cfg.source.radius, pf, cfg.atom_mass};
  const TrajectoryState start{{rp, 0.0, 0.0}, {0.0, std::sqrt(gm * (1.0 + e) / rp), 0.0}, 0.0};
  OrbitOptions opt;
  opt.scheme = cfg.orbit_scheme;
  opt.dt = period / cfg.orbit_steps_per_orbit;
  opt.steps = std::lround(cfg.orbit_orbits * cfg.orbit_steps_per_orbit);
  opt.record_every = cfg.orbit_scheme == Scheme::adaptive ? 1 : cfg.orbit_record_every;
  const auto traj = integrate_orbit(field, start, opt);

  Table path{"orbit", {"t", "x", "y", "z", "vx", "vy", "vz", "E"}, {},
             {{"units", "SI; E is kinetic plus total potential energy"}}};
  for (std::size_t i = 0; i < traj.states.size(); ++i) {
    const auto& s = traj.states[i];
    path.rows.push_back({s.time, s.position[0], s.position[1], s.position[2], s.velocity[0],
                         s.velocity[1], s.velocity[2],
                         std::isfinite(traj.energy[i]) ? Cell{traj.energy[i]} : Cell{}});
  }

  double energy_drift = 0.0;
  double l_drift = 0.0;
  const double l0 = field.angular_momentum(traj.states.front())[2];
  for (std::size_t i = 0; i < traj.states.size(); ++i) {
    if (!std::isfinite(traj.energy[i])) continue;
    energy_drift = std::max(energy_drift, std::abs(traj.energy[i] / traj.energy.front() - 1.0));
    l_drift = std::max(l_drift, std::abs(field.angular_momentum(traj.states[i])[2] / l0 - 1.0));
  }
  Cell precession;
  long long periapses = 0;
  if (!traj.captured) {
    try {
      const auto p = precession_per_orbit(traj);
      precession = *p.per_orbit;
      periapses = static_cast<long long>(p.periapsis_angles.size());
    } catch (const DomainError&) {
      // Too short a run for two periapses; leave the column empty.
    }
  }
  Table summary_table{"orbit_summary",
                      {"kepler_period_s", "dt_s", "steps", "a_BB_over_a_G", "captured",
                       "capture_time_s", "periapses", "precession_rad_per_orbit",
                       "max_rel_energy_drift", "max_rel_angular_momentum_drift"},
                      {},
                      {}};
  summary_table.rows.push_back(
      {period, opt.dt, static_cast<long long>(opt.steps), pf.a_bb / pf.a_g,
       static_cast<long long>(traj.captured),
       traj.capture_time ? Cell{*traj.capture_time} : Cell{}, periapses, precession, energy_drift,
       l_drift});
  std::string summary = fmt::format("orbit: {} states, ", traj.states.size());
  if (traj.captured) {
    summary += fmt::format("captured at t = {:.6g} s", *traj.capture_time);
  } else if (std::holds_alternative<double>(precession)) {
    summary += fmt::format("precession {:.6g} rad/orbit", std::get<double>(precession));
  } else {
    summary += "fewer than two periapses";
  }
  return {{path, summary_table}, summary};
}

constexpr std::array<std::string_view, 9> kVerbs = {"shift", "rates", "force", "prefactors", "fig2",
                                                    "fig3",  "fig4",  "cloud", "orbit"};

}  // namespace

std::span<const std::string_view> table_verbs() { return kVerbs; }

std::string render(const Table& table, std::string_view command, const ScenarioConfig& cfg) {
  if (cfg.format == Format::json) {
    nlohmann::ordered_json j;
    j["tool"] = kToolName;
    j["version"] = kToolVersion;
    j["command"] = command;
    j["table"] = table.name;
    auto& config = j["config"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : cfg.echo()) config[k] = v;
    auto& notes = j["notes"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : table.notes) notes[k] = v;
    j["columns"] = table.columns;
    auto& rows = j["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
      auto& out = rows.emplace_back(nlohmann::ordered_json::array());
      for (const auto& c : row) out.push_back(cell_json(c));
    }
    return j.dump(2) + "\n";
  }
  std::string out = fmt::format("# {} {}\n# command: {}\n# table: {}\n", kToolName, kToolVersion,
                                command, table.name);
  for (const auto& [k, v] : cfg.echo()) out += fmt::format("# config.{} = {}\n", k, v);
  for (const auto& [k, v] : table.notes) out += fmt::format("# note.{} = {}\n", k, v);
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    out += (i ? "," : "") + table.columns[i];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + cell_text(row[i]);
    out += '\n';
  }
  return out;
}

CommandResult run_command(std::string_view verb, const ScenarioConfig& cfg) {
  cfg.validate();
  if (verb == "shift") return cmd_shift(cfg);
  if (verb == "rates") return cmd_rates(cfg);
  if (verb == "force") return cmd_force(cfg);
  if (verb == "prefactors") return cmd_prefactors(cfg);
  if (verb == "fig2") return cmd_fig2(cfg);
  if (verb == "fig3") return cmd_fig3(cfg);
  if (verb == "fig4") return cmd_fig4(cfg);
  if (verb == "cloud") return cmd_cloud(cfg);
  if (verb == "orbit") return cmd_orbit(cfg);
  throw DomainError(fmt::format("unknown command '{}'", verb));
}

std::vector<std::filesystem::path> write_tables(const CommandResult& result, std::string_view verb,
                                                const ScenarioConfig& cfg) {
  std::filesystem::create_directories(cfg.out);
  std::vector<std::filesystem::path> written;
  for (const auto& table : result.tables) {
    const auto path = cfg.out / fmt::format("{}.{}", table.name, to_string(cfg.format));
    std::ofstream file(path, std::ios::binary);
    if (!file) throw DomainError(fmt::format("cannot write '{}'", path.string()));
    file << render(table, verb, cfg);
    written.push_back(path);
  }
  return written;
}

}  // namespace bbforce::cli
