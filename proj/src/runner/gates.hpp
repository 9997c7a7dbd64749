#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace cilab::runner {

enum class GateStatus { Pass, Fail, Skipped };

const char* gateStatusName(GateStatus status);

struct GateInfo {
  int id = 0;
  const char* name = "";
  /// what the gate checks, one line
  const char* summary = "";
};

/// Gates 1..12 in order.
const std::vector<GateInfo>& gateTable();

struct GateOptions {
  std::uint64_t budget = 0;
  unsigned threads = 1;
  std::uint64_t seed = 1;
  /// test only: corrupt the fixture this gate loads
  std::optional<int> injectFault;
};

struct GateResult {
  int id = 0;
  std::string name;
  GateStatus status = GateStatus::Skipped;
  /// why the gate failed or was skipped
  std::string reason;
  std::uint64_t cost = 0;
  nlohmann::json detail = nlohmann::json::object();
};

/// Work units a gate needs; a gate whose cost exceeds the budget is skipped.
std::uint64_t gateCost(int id);

/// Runs one gate. Failures (including exceptions thrown by the checked code)
/// are reported in the result, never thrown; an unknown id throws InvalidInput.
GateResult runGate(int id, const GateOptions& options);

struct SuiteResult {
  std::vector<GateResult> gates;
  /// 0 all pass, 1 any failure, 2 nothing failed but something was skipped
  int exitCode = 0;
  std::vector<std::string> failedGates;
};

/// Runs the listed gates (all when empty) in id order. Throws InvalidInput
/// when injectFault names a gate without a fixture.
SuiteResult verifySuite(std::vector<int> ids, const GateOptions& options);

nlohmann::json toJson(const GateResult& result);

}  // namespace cilab::runner
