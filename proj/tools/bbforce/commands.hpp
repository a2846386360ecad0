#ifndef BBFORCE_TOOLS_COMMANDS_HPP_
#define BBFORCE_TOOLS_COMMANDS_HPP_

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "config.hpp"

namespace bbforce::cli {

inline constexpr std::string_view kToolName = "bbforce";
inline constexpr std::string_view kToolVersion = "0.1.0";

/// Empty cells are written as an empty CSV field and as JSON null.
using Cell = std::variant<std::monostate, double, long long, std::string>;

struct Table {
  std::string name;  // file stem
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  /// Extra `key: value` lines placed after the configuration echo.
  std::vector<std::pair<std::string, std::string>> notes;
};

/// CSV with a `#` header block, or one JSON object with meta, columns, rows.
[[nodiscard]] std::string render(const Table& table, std::string_view command,
                                 const ScenarioConfig& cfg);

struct CommandResult {
  std::vector<Table> tables;
  /// One-line human summary for stdout.
  std::string summary;
};

/// Verbs that produce tables: shift, rates, force, prefactors, fig2, fig3,
/// fig4, cloud, orbit. Throws DomainError for an unknown verb or bad config,
/// ConvergenceError when a numerical step fails.
[[nodiscard]] CommandResult run_command(std::string_view verb, const ScenarioConfig& cfg);

[[nodiscard]] std::span<const std::string_view> table_verbs();

/// Renders every table into cfg.out and returns the written paths.
std::vector<std::filesystem::path> write_tables(const CommandResult& result, std::string_view verb,
                                                const ScenarioConfig& cfg);

}  // namespace bbforce::cli

#endif  // BBFORCE_TOOLS_COMMANDS_HPP_
