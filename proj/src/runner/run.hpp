#pragma once

#include <string>

#include <json.hpp>

#include "runner/config.hpp"

namespace cilab::runner {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFault = 1;
inline constexpr int kExitBudget = 2;

struct RunResult {
  nlohmann::json report;
  int exitCode = kExitOk;
};

/// Dispatches one command and wraps its payload in the report envelope
/// (command, config echo, tool version, conventions tag, status, warnings,
/// results, wallclockMs). Errors become reports: BudgetExceeded exits 2,
/// anything else exits 1.
RunResult runCommand(const RunConfig& config);

/// Parses the config first; a malformed config yields an error report with
/// exit code 1. Writes the rendered report to config.output when set.
RunResult runFromJson(const nlohmann::json& config);

/// Canonical text: keys sorted, two-space indent, trailing newline.
std::string renderReport(const nlohmann::json& report);

/// Command names in dispatch order.
const std::vector<std::string>& commandNames();

}  // namespace cilab::runner
