#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace cilab::runner {

inline constexpr std::uint64_t kDefaultBudget = 1'000'000'000;

/// One run of the tool. Built from a JSON object whose keys match the field
/// names; unset optional fields fall back to the per-command defaults.
struct RunConfig {
  std::string command;
  std::optional<int> n;
  std::vector<int> degrees;
  std::uint32_t p = 32003;
  std::uint32_t q = 3;
  std::uint64_t seed = 1;
  std::uint32_t samples = 100;
  /// work cap (lines, planes, hyperplanes, samples); 0 refuses everything
  std::uint64_t budget = kDefaultBudget;
  unsigned threads = 1;
  std::string output;
  /// multiplication-map kind for lemma-scan ("line-m", ...)
  std::string kind;
  /// line | smooth | line-pair | double-line | all
  std::string curveKind;
  bool fermat = false;
  /// complete intersection fixture (JSON file)
  std::string fixture;
  /// curve for analyze-curve; null picks a random one
  nlohmann::json curve;
  /// verify: gate ids to run, empty = all
  std::vector<int> gates;
  /// verify, test only: corrupt the fixture of this gate
  std::optional<int> injectFault;
  bool wallclock = false;
};

/// Thread count from CILAB_THREADS, 1 when unset or invalid.
unsigned defaultThreads();

/// Throws InvalidInput on unknown keys, wrong types or out-of-range values.
/// A missing "threads" key takes defaultThreads().
RunConfig configFromJson(const nlohmann::json& j);
nlohmann::json toJson(const RunConfig& config);

/// `file` keys overridden by `flags`; both must be objects (or null).
nlohmann::json mergeConfig(const nlohmann::json& file, const nlohmann::json& flags);

/// Reads a JSON config file. Throws InvalidInput when unreadable or not an object.
nlohmann::json readConfigFile(const std::string& path);

/// "2,3" -> {2, 3}
std::vector<int> parseDegreeList(const std::string& text);

}  // namespace cilab::runner
