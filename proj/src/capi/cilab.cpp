#include "cilab/cilab.h"

#include <exception>
#include <string>

#include <json.hpp>

#include "common/error.hpp"
#include "common/version.hpp"
#include "runner/config.hpp"
#include "runner/run.hpp"

struct cilab_config {
  nlohmann::json file = nlohmann::json::object();
  nlohmann::json flags = nlohmann::json::object();
  std::string merged;
};

struct cilab_report {
  int exitCode = 0;
  std::string text;
};

namespace {

thread_local std::string lastError;

cilab_status fail(cilab_status status, std::string message) {
  lastError = std::move(message);
  return status;
}

cilab_status ok() {
  lastError.clear();
  return CILAB_OK;
}

template <class Body>
cilab_status guarded(Body&& body) {
  try {
    return body();
  } catch (const nlohmann::json::parse_error& e) {
    return fail(CILAB_ERR_INVALID_JSON, e.what());
  } catch (const cilab::InvalidInput& e) {
    return fail(CILAB_ERR_INVALID_CONFIG, e.what());
  } catch (const std::exception& e) {
    return fail(CILAB_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(CILAB_ERR_INTERNAL, "unknown exception");
  }
}

nlohmann::json parseObject(const char* text) {
  auto j = nlohmann::json::parse(text);
  if (!j.is_object()) throw cilab::InvalidInput("config JSON must be an object");
  return j;
}

}  // namespace

extern "C" {

const char* cilab_version(void) { return cilab::kToolVersion; }

const char* cilab_conventions(void) { return cilab::kConventionsTag; }

const char* cilab_status_string(cilab_status status) {
  switch (status) {
    case CILAB_OK: return "ok";
    case CILAB_ERR_NULL_ARGUMENT: return "null argument";
    case CILAB_ERR_INVALID_JSON: return "invalid JSON";
    case CILAB_ERR_INVALID_CONFIG: return "invalid config";
    case CILAB_ERR_IO: return "I/O error";
    case CILAB_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* cilab_last_error(void) { return lastError.c_str(); }

cilab_status cilab_config_new(const char* command, cilab_config** out) {
  if (out == nullptr || command == nullptr) return fail(CILAB_ERR_NULL_ARGUMENT, "null argument");
  return guarded([&] {
    auto config = new cilab_config;
    config->flags["command"] = command;
    *out = config;
    return ok();
  });
}

void cilab_config_free(cilab_config* config) { delete config; }

cilab_status cilab_config_load_file(cilab_config* config, const char* path) {
  if (config == nullptr || path == nullptr) return fail(CILAB_ERR_NULL_ARGUMENT, "null argument");
  return guarded([&] {
    try {
      config->file = cilab::runner::readConfigFile(path);
    } catch (const cilab::InvalidInput& e) {
      return fail(CILAB_ERR_IO, e.what());
    }
    return ok();
  });
}

cilab_status cilab_config_load_json(cilab_config* config, const char* json) {
  if (config == nullptr || json == nullptr) return fail(CILAB_ERR_NULL_ARGUMENT, "null argument");
  return guarded([&] {
    config->file = parseObject(json);
    return ok();
  });
}

cilab_status cilab_config_set(cilab_config* config, const char* key, const char* json_value) {
  if (config == nullptr || key == nullptr || json_value == nullptr)
    return fail(CILAB_ERR_NULL_ARGUMENT, "null argument");
  return guarded([&] {
    config->flags[key] = nlohmann::json::parse(json_value);
    return ok();
  });
}

const char* cilab_config_json(cilab_config* config) {
  if (config == nullptr) return "";
  try {
    config->merged = cilab::runner::mergeConfig(config->file, config->flags).dump();
  } catch (const std::exception& e) {
    lastError = e.what();
    config->merged.clear();
  }
  return config->merged.c_str();
}

cilab_status cilab_run(const cilab_config* config, cilab_report** out) {
  if (config == nullptr || out == nullptr) return fail(CILAB_ERR_NULL_ARGUMENT, "null argument");
  return guarded([&] {
    const auto merged = cilab::runner::mergeConfig(config->file, config->flags);
    const auto result = cilab::runner::runFromJson(merged);
    auto report = new cilab_report;
    report->exitCode = result.exitCode;
    report->text = cilab::runner::renderReport(result.report);
    *out = report;
    return ok();
  });
}

int cilab_report_exit_code(const cilab_report* report) {
  return report == nullptr ? CILAB_EXIT_FAULT : report->exitCode;
}

const char* cilab_report_json(const cilab_report* report) { return report == nullptr ? "" : report->text.c_str(); }

void cilab_report_free(cilab_report* report) { delete report; }

}  // extern "C"
