#include "runner/config.hpp"

#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "common/error.hpp"

namespace cilab::runner {

using nlohmann::json;

namespace {

const std::set<std::string> kKeys{"command", "n",    "degrees", "p",       "q",     "seed",
                                  "samples", "budget", "threads", "output", "kind",  "curveKind",
                                  "fermat",  "fixture", "curve",  "gates",  "injectFault", "wallclock"};

std::uint64_t unsignedField(const json& j, const char* key, std::uint64_t max) {
  const auto& v = j.at(key);
  if (!v.is_number_integer()) throw InvalidInput(std::string("config field '") + key + "' must be an integer");
  if (v.is_number_unsigned()) {
    const auto u = v.get<std::uint64_t>();
    if (u > max) throw InvalidInput(std::string("config field '") + key + "' is out of range");
    return u;
  }
  const auto s = v.get<std::int64_t>();
  if (s < 0 || static_cast<std::uint64_t>(s) > max)
    throw InvalidInput(std::string("config field '") + key + "' is out of range");
  return static_cast<std::uint64_t>(s);
}

std::uint64_t positiveField(const json& j, const char* key, std::uint64_t max) {
  const auto v = unsignedField(j, key, max);
  if (v == 0) throw InvalidInput(std::string("config field '") + key + "' must be positive");
  return v;
}

std::string stringField(const json& j, const char* key) {
  const auto& v = j.at(key);
  if (!v.is_string()) throw InvalidInput(std::string("config field '") + key + "' must be a string");
  return v.get<std::string>();
}

bool boolField(const json& j, const char* key) {
  const auto& v = j.at(key);
  if (!v.is_boolean()) throw InvalidInput(std::string("config field '") + key + "' must be a boolean");
  return v.get<bool>();
}

std::vector<int> intList(const json& j, const char* key, int max) {
  const auto& v = j.at(key);
  if (v.is_string()) return parseDegreeList(v.get<std::string>());
  if (!v.is_array()) throw InvalidInput(std::string("config field '") + key + "' must be a list of integers");
  std::vector<int> out;
  for (const auto& e : v) {
    if (!e.is_number_integer()) throw InvalidInput(std::string("config field '") + key + "' must be a list of integers");
    const auto x = e.get<std::int64_t>();
    if (x <= 0 || x > max) throw InvalidInput(std::string("config field '") + key + "' has an out-of-range entry");
    out.push_back(static_cast<int>(x));
  }
  return out;
}

}  // namespace

unsigned defaultThreads() {
  const char* env = std::getenv("CILAB_THREADS");
  if (env == nullptr || *env == '\0') return 1;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 1 || v > 1024) return 1;
  return static_cast<unsigned>(v);
}

std::vector<int> parseDegreeList(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      throw InvalidInput("malformed integer list '" + text + "'");
    }
    if (used != item.size() || v <= 0) throw InvalidInput("malformed integer list '" + text + "'");
    out.push_back(v);
  }
  if (out.empty()) throw InvalidInput("empty integer list");
  return out;
}

RunConfig configFromJson(const json& j) {
  if (!j.is_object()) throw InvalidInput("config must be a JSON object");
  for (const auto& [key, value] : j.items())
    if (!kKeys.contains(key)) throw InvalidInput("unknown config field '" + key + "'");

  RunConfig c;
  if (!j.contains("command")) throw InvalidInput("config has no command");
  c.command = stringField(j, "command");
  if (j.contains("n")) c.n = static_cast<int>(positiveField(j, "n", 7));
  if (j.contains("degrees")) c.degrees = intList(j, "degrees", 64);
  if (j.contains("p")) c.p = static_cast<std::uint32_t>(positiveField(j, "p", 0xffffffffu));
  if (j.contains("q")) c.q = static_cast<std::uint32_t>(positiveField(j, "q", 0xffffffffu));
  if (j.contains("seed")) c.seed = unsignedField(j, "seed", UINT64_MAX);
  if (j.contains("samples")) c.samples = static_cast<std::uint32_t>(positiveField(j, "samples", 1'000'000));
  if (j.contains("budget")) c.budget = unsignedField(j, "budget", UINT64_MAX);
  c.threads = j.contains("threads") ? static_cast<unsigned>(positiveField(j, "threads", 1024)) : defaultThreads();
  if (j.contains("output")) c.output = stringField(j, "output");
  if (j.contains("kind")) c.kind = stringField(j, "kind");
  if (j.contains("curveKind")) c.curveKind = stringField(j, "curveKind");
  if (j.contains("fermat")) c.fermat = boolField(j, "fermat");
  if (j.contains("fixture")) c.fixture = stringField(j, "fixture");
  if (j.contains("curve")) {
    c.curve = j.at("curve");
    if (!c.curve.is_null() && !c.curve.is_object()) throw InvalidInput("config field 'curve' must be an object");
  }
  if (j.contains("gates")) c.gates = intList(j, "gates", 12);
  if (j.contains("injectFault") && !j.at("injectFault").is_null())
    c.injectFault = static_cast<int>(positiveField(j, "injectFault", 12));
  if (j.contains("wallclock")) c.wallclock = boolField(j, "wallclock");
  return c;
}

json toJson(const RunConfig& c) {
  json j;
  j["command"] = c.command;
  j["n"] = c.n ? json(*c.n) : json(nullptr);
  j["degrees"] = c.degrees;
  j["p"] = c.p;
  j["q"] = c.q;
  j["seed"] = c.seed;
  j["samples"] = c.samples;
  j["budget"] = c.budget;
  j["threads"] = c.threads;
  j["output"] = c.output;
  j["kind"] = c.kind;
  j["curveKind"] = c.curveKind;
  j["fermat"] = c.fermat;
  j["fixture"] = c.fixture;
  j["curve"] = c.curve;
  j["gates"] = c.gates;
  j["injectFault"] = c.injectFault ? json(*c.injectFault) : json(nullptr);
  j["wallclock"] = c.wallclock;
  return j;
}

json mergeConfig(const json& file, const json& flags) {
  if (!file.is_null() && !file.is_object()) throw InvalidInput("config file must hold a JSON object");
  if (!flags.is_null() && !flags.is_object()) throw InvalidInput("flags must form a JSON object");
  json out = file.is_null() ? json::object() : file;
  if (flags.is_object())
    for (const auto& [key, value] : flags.items()) out[key] = value;
  return out;
}

json readConfigFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot read config file " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw InvalidInput("config file " + path + " is not valid JSON: " + e.what());
  }
  if (!j.is_object()) throw InvalidInput("config file " + path + " must hold a JSON object");
  return j;
}

}  // namespace cilab::runner
