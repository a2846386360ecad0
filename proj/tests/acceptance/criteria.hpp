#ifndef BBFORCE_ACCEPTANCE_CRITERIA_HPP_
#define BBFORCE_ACCEPTANCE_CRITERIA_HPP_

#include <cstdint>
#include <string>
#include <vector>

namespace bbforce::acceptance {

struct Check {
  std::string label;
  bool pass = false;
  std::string detail;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  std::vector<Check> checks;

  [[nodiscard]] bool pass() const;
};

struct Options {
  int threads = 1;
  /// Master seed of the Monte Carlo cloud comparison.
  std::uint64_t seed = 2014;
  /// Criteria to run; empty means all.
  std::vector<int> only;
  /// Criterion 11 re-runs every command; selfcheck skips re-entering itself.
  bool determinism_includes_selfcheck = true;
};

inline constexpr int kCriterionCount = 11;

[[nodiscard]] std::vector<CriterionResult> run(const Options& options);

/// One `PASS|FAIL  N  title` line per criterion followed by indented checks.
[[nodiscard]] std::string format_report(const std::vector<CriterionResult>& results);

}  // namespace bbforce::acceptance

#endif  // BBFORCE_ACCEPTANCE_CRITERIA_HPP_
