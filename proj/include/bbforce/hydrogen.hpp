#ifndef BBFORCE_HYDROGEN_HPP_
#define BBFORCE_HYDROGEN_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "bbforce/quantities.hpp"

namespace bbforce {

enum class TransitionKind { bound, continuum_pseudo_line };
enum class Completion { bound_only, pseudo_line };

std::string_view to_string(TransitionKind k);
std::string_view to_string(Completion c);
TransitionKind transition_kind_from_string(std::string_view s);
Completion completion_from_string(std::string_view s);

/// One dipole line out of the level a LineList describes.
struct Transition {
  /// omega_m - omega_n: positive when the coupled state lies above.
  AngularFrequency omega;
  /// |<n|r_i|m'>|^2 summed over Cartesian i and degenerate m' (m^2).
  double d2 = 0.0;
  std::string label;
  TransitionKind kind = TransitionKind::bound;
};

/// f = 2 m_e omega d2 / (3 hbar); negative for downward lines.
[[nodiscard]] double oscillator_strength(const Transition& t);

class LineList {
 public:
  LineList() = default;
  /// Throws DomainError on d2 < 0, omega == 0, non-finite fields, or a repeated
  /// (omega, label) pair.
  LineList(std::string level, Completion completion, std::vector<Transition> transitions);

  [[nodiscard]] const std::string& level() const { return level_; }
  [[nodiscard]] Completion completion() const { return completion_; }
  [[nodiscard]] const std::vector<Transition>& transitions() const { return transitions_; }
  [[nodiscard]] bool empty() const { return transitions_.empty(); }
  [[nodiscard]] std::size_t size() const { return transitions_.size(); }

  [[nodiscard]] double oscillator_strength_sum() const;

 private:
  std::string level_;
  Completion completion_ = Completion::bound_only;
  std::vector<Transition> transitions_;
};

inline constexpr int kDefaultHydrogenNmax = 200;
/// Static polarizability of H(1s) in units of 4 pi eps0 a0^3.
inline constexpr double kHydrogenStaticPolarizability = 4.5;

/// Nonrelativistic Bohr energy -E_h / (2 n^2).
[[nodiscard]] Energy level_energy(int n);

/// 1s -> np absorption oscillator strength,
///   f_n = 2^8 n^5 (n-1)^(2n-4) / (3 (n+1)^(2n+4)),
/// evaluated through logarithms so large n does not overflow.
[[nodiscard]] double oscillator_strength_1s_np(int n);

/// Summed squared dipole matrix element for 1s -> np, in m^2.
[[nodiscard]] double dipole_strength_1s_np(int n);

/// Hydrogen 1s lines for n = 2..n_max. In pseudo-line mode one extra
/// continuum line closes both the f-sum rule (sum f = 1) and the static
/// polarizability (9/2 a0^3); anything above n_max is absorbed into it.
[[nodiscard]] LineList build_line_list(int n_max = kDefaultHydrogenNmax,
                                       Completion completion = Completion::pseudo_line);

/// alpha = sum f / omega^2 in atomic units, i.e. the coefficient of 4 pi eps0 a0^3.
[[nodiscard]] double static_polarizability(const LineList& list);

struct HyperfineConstants {
  AngularFrequency omega21;
  Rate a21;
};

/// 21-cm line: omega_21 = 8.9e9 rad/s, A_21 = 2.87e-15 1/s.
[[nodiscard]] HyperfineConstants hyperfine_constants();

// JSON exchange format:
//   { "label": "H 1s", "completion": "pseudo-line",
//     "transitions": [ { "omega_rad_s": ..., "d2_m2": ..., "label": "2p",
//                        "kind": "bound" | "continuum-pseudo-line" }, ... ] }
[[nodiscard]] std::string line_list_to_json(const LineList& list);
/// Throws DomainError on schema violations.
[[nodiscard]] LineList line_list_from_json(std::string_view text);

}  // namespace bbforce

#endif  // BBFORCE_HYDROGEN_HPP_
