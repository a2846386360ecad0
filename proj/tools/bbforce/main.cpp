#include <fmt/format.h>

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bbforce/error.hpp"
#include "commands.hpp"
#include "config.hpp"
#include "criteria.hpp"

namespace {

enum Exit { kOk = 0, kValidation = 1, kNumerical = 2 };

struct Flags {
  std::string config;
  std::string out;
  std::string format;
  std::vector<std::string> set;
  std::uint64_t seed = 0;
  double tmin = 0.0;
  double tmax = 0.0;
  int tsteps = 0;
  int threads = 0;
  bool quiet = false;
};

bbforce::cli::ScenarioConfig resolve(const Flags& f, const CLI::App& app) {
  using namespace bbforce::cli;
  ScenarioConfig cfg = f.config.empty() ? ScenarioConfig{} : load_config(f.config);
  for (const auto& kv : f.set) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw bbforce::DomainError("--set expects key=value, got '" + kv + "'");
    apply_setting(cfg, kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (!f.out.empty()) cfg.out = f.out;
  if (!f.format.empty()) apply_setting(cfg, "format", f.format);
  if (app.count("--seed")) cfg.seed = f.seed;
  if (app.count("--threads")) cfg.threads = f.threads;
  const bool any_t = app.count("--tmin") || app.count("--tmax") || app.count("--tsteps");
  if (any_t) {
    if (!(app.count("--tmin") && app.count("--tmax") && app.count("--tsteps"))) {
      throw bbforce::DomainError("--tmin, --tmax and --tsteps must be given together");
    }
    cfg.temperatures = linear_grid(f.tmin, f.tmax, f.tsteps);
  }
  cfg.validate();
  return cfg;
}

int run_selfcheck(const bbforce::cli::ScenarioConfig& cfg, bool quiet) {
  bbforce::acceptance::Options options;
  options.threads = cfg.threads;
  options.seed = cfg.seed;
  options.determinism_includes_selfcheck = false;
  const auto results = bbforce::acceptance::run(options);
  const std::string report = bbforce::acceptance::format_report(results);
  std::filesystem::create_directories(cfg.out);
  const auto path = cfg.out / "selfcheck.txt";
  std::ofstream(path, std::ios::binary)
      << fmt::format("# {} {}\n# command: selfcheck\n# config.seed = {}\n", bbforce::cli::kToolName,
                     bbforce::cli::kToolVersion, cfg.seed)
      << report;
  if (!quiet) std::fputs(report.c_str(), stdout);
  for (const auto& r : results) {
    if (!r.pass()) return kNumerical;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Blackbody-induced forces on atoms near hot bodies"};
  app.set_version_flag("--version", std::string(bbforce::cli::kToolVersion));
  app.require_subcommand(1);
  app.fallthrough();
  Flags f;
  app.add_option("--config", f.config, "Scenario file (key = value)")->check(CLI::ExistingFile);
  app.add_option("--out", f.out, "Output directory");
  app.add_option("--format", f.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--seed", f.seed, "Seed for the Monte Carlo cloud");
  app.add_option("--tmin", f.tmin, "Lowest temperature of the T grid (K)");
  app.add_option("--tmax", f.tmax, "Highest temperature of the T grid (K)");
  app.add_option("--tsteps", f.tsteps, "Number of T grid points");
  app.add_option("--threads", f.threads, "Worker threads; results do not depend on it");
  app.add_option("--set", f.set, "Override any config key: --set key=value");
  app.add_flag("--quiet", f.quiet, "Print nothing on success");

  const std::vector<std::pair<std::string, std::string>> verbs = {
      {"shift", "Thermal level shift table (full line sum and T^4 form)"},
      {"rates", "Blackbody widths, lifetimes, 21-cm rate, dipole vs pressure"},
      {"force", "Potentials and radial forces around the configured sphere"},
      {"prefactors", "a_G, a_Q, a_BB for the configured sphere"},
      {"fig2", "Spatial decay of the blackbody, gravity and electrostatic terms"},
      {"fig3", "Prefactors as a function of sphere radius"},
      {"fig4", "Cloud profile: analytic means against direct Monte Carlo sums"},
      {"cloud", "Cloud dominance criterion and analytic mean potentials"},
      {"orbit", "Atom orbit in the combined central potential"},
      {"selfcheck", "Run the acceptance criteria"},
  };
  for (const auto& [name, help] : verbs) app.add_subcommand(name, help);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kValidation;
  }

  const std::string verb = app.get_subcommands().front()->get_name();
  try {
    const auto cfg = resolve(f, app);
    if (verb == "selfcheck") return run_selfcheck(cfg, f.quiet);
    const auto result = bbforce::cli::run_command(verb, cfg);
    const auto files = bbforce::cli::write_tables(result, verb, cfg);
    if (!f.quiet) {
      std::puts(result.summary.c_str());
      for (const auto& p : files) std::printf("  wrote %s\n", p.string().c_str());
    }
    return kOk;
  } catch (const bbforce::ConvergenceError& e) {
    std::fprintf(stderr, "bbforce %s: numerical failure: %s\n", verb.c_str(), e.what());
    return kNumerical;
  } catch (const bbforce::DomainError& e) {
    std::fprintf(stderr, "bbforce %s: %s\n", verb.c_str(), e.what());
    return kValidation;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "bbforce %s: %s\n", verb.c_str(), e.what());
    return kValidation;
  }
}
