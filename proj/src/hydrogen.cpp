#include "bbforce/hydrogen.hpp"

#include <cmath>
#include <set>
#include <utility>

#include "json.hpp"

#include "bbforce/error.hpp"

namespace bbforce {

namespace {

// Transition energy 1s -> np in hartree.
double omega_1s_np_au(int n) {
  const double inv = 1.0 / static_cast<double>(n);
  return 0.5 * (1.0 - inv * inv);
}

double omega_au(const Transition& t) {
  return to_hartree(energy_of(t.omega));
}

double d2_au(const Transition& t) {
  return t.d2 / (constants::bohr_radius * constants::bohr_radius);
}

}  // namespace

std::string_view to_string(TransitionKind k) {
  return k == TransitionKind::bound ? "bound" : "continuum-pseudo-line";
}

std::string_view to_string(Completion c) {
  return c == Completion::bound_only ? "bound-only" : "pseudo-line";
}

TransitionKind transition_kind_from_string(std::string_view s) {
  if (s == "bound") return TransitionKind::bound;
  if (s == "continuum-pseudo-line") return TransitionKind::continuum_pseudo_line;
  throw DomainError("unknown transition kind '" + std::string(s) + "'");
}

Completion completion_from_string(std::string_view s) {
  if (s == "bound-only") return Completion::bound_only;
  if (s == "pseudo-line") return Completion::pseudo_line;
  throw DomainError("unknown completion mode '" + std::string(s) + "'");
}

double oscillator_strength(const Transition& t) {
  return 2.0 * constants::electron_mass * t.omega.value() * t.d2 / (3.0 * constants::hbar);
}

LineList::LineList(std::string level, Completion completion, std::vector<Transition> transitions)
    : level_(std::move(level)), completion_(completion), transitions_(std::move(transitions)) {
  std::set<std::pair<double, std::string>> seen;
  for (const auto& t : transitions_) {
    if (!std::isfinite(t.omega.value()) || t.omega.value() == 0.0) {
      throw DomainError("transition '" + t.label + "': omega must be finite and non-zero");
    }
    if (!std::isfinite(t.d2) || t.d2 < 0.0) {
      throw DomainError("transition '" + t.label + "': d2 must be finite and >= 0");
    }
    if (!seen.emplace(t.omega.value(), t.label).second) {
      throw DomainError("duplicate transition '" + t.label + "'");
    }
  }
}

double LineList::oscillator_strength_sum() const {
  double sum = 0.0;
  for (const auto& t : transitions_) sum += oscillator_strength(t);
  return sum;
}

Energy level_energy(int n) {
  if (n < 1) throw DomainError("principal quantum number must be >= 1");
  const double nn = static_cast<double>(n);
  return from_hartree(-0.5 / (nn * nn));
}

double oscillator_strength_1s_np(int n) {
  if (n < 2) throw DomainError("1s -> np requires n >= 2");
  const double nn = static_cast<double>(n);
  // (n-1)^(2n-4) is 0^0 = 1 at n = 2.
  const double log_f = 8.0 * std::log(2.0) + 5.0 * std::log(nn) +
                       (n == 2 ? 0.0 : (2.0 * nn - 4.0) * std::log(nn - 1.0)) -
                       std::log(3.0) - (2.0 * nn + 4.0) * std::log(nn + 1.0);
  return std::exp(log_f);
}

double dipole_strength_1s_np(int n) {
  const double f = oscillator_strength_1s_np(n);
  return 1.5 * f / omega_1s_np_au(n) * constants::bohr_radius * constants::bohr_radius;
}

LineList build_line_list(int n_max, Completion completion) {
  if (n_max < 2) throw DomainError("n_max must be >= 2");
  std::vector<Transition> lines;
  lines.reserve(static_cast<std::size_t>(n_max));
  const Energy ground = level_energy(1);
  double f_sum = 0.0;
  double alpha_sum = 0.0;
  for (int n = 2; n <= n_max; ++n) {
    const double f = oscillator_strength_1s_np(n);
    const double w = omega_1s_np_au(n);
    f_sum += f;
    alpha_sum += f / (w * w);
    lines.push_back({angular_frequency_of(level_energy(n) - ground), dipole_strength_1s_np(n),
                     std::to_string(n) + "p", TransitionKind::bound});
  }
  if (completion == Completion::pseudo_line) {
    const double f_c = 1.0 - f_sum;
    const double alpha_c = kHydrogenStaticPolarizability - alpha_sum;
    if (!(f_c > 0.0 && alpha_c > 0.0)) {
      throw DomainError("continuum closure has no positive solution");
    }
    const double w_c = std::sqrt(f_c / alpha_c);
    lines.push_back({angular_frequency_of(from_hartree(w_c)),
                     1.5 * f_c / w_c * constants::bohr_radius * constants::bohr_radius,
                     "continuum", TransitionKind::continuum_pseudo_line});
  }
  return LineList("H 1s", completion, std::move(lines));
}

double static_polarizability(const LineList& list) {
  double alpha = 0.0;
  for (const auto& t : list.transitions()) {
    alpha += (2.0 / 3.0) * d2_au(t) / omega_au(t);
  }
  return alpha;
}

HyperfineConstants hyperfine_constants() {
  return {AngularFrequency{8.9e9}, Rate{2.87e-15}};
}

std::string line_list_to_json(const LineList& list) {
  nlohmann::ordered_json j;
  j["label"] = list.level();
  j["completion"] = to_string(list.completion());
  auto arr = nlohmann::ordered_json::array();
  for (const auto& t : list.transitions()) {
    nlohmann::ordered_json e;
    e["omega_rad_s"] = t.omega.value();
    e["d2_m2"] = t.d2;
    e["label"] = t.label;
    e["kind"] = to_string(t.kind);
    arr.push_back(std::move(e));
  }
  j["transitions"] = std::move(arr);
  return j.dump(2);
}

LineList line_list_from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw DomainError(std::string("line list JSON: ") + e.what());
  }
  try {
    std::vector<Transition> lines;
    for (const auto& e : j.at("transitions")) {
      lines.push_back({AngularFrequency{e.at("omega_rad_s").get<double>()},
                       e.at("d2_m2").get<double>(), e.at("label").get<std::string>(),
                       transition_kind_from_string(e.at("kind").get<std::string>())});
    }
    return LineList(j.at("label").get<std::string>(),
                    completion_from_string(j.at("completion").get<std::string>()),
                    std::move(lines));
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("line list JSON: ") + e.what());
  }
}

}  // namespace bbforce
