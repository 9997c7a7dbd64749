#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <string>

#include <json.hpp>

#include "cilab/cilab.h"

using nlohmann::json;

namespace {

struct Config {
  explicit Config(const char* command) { REQUIRE(cilab_config_new(command, &ptr) == CILAB_OK); }
  ~Config() { cilab_config_free(ptr); }
  cilab_config* ptr = nullptr;
};

struct Report {
  explicit Report(const cilab_config* config) { REQUIRE(cilab_run(config, &ptr) == CILAB_OK); }
  ~Report() { cilab_report_free(ptr); }
  json parsed() const { return json::parse(cilab_report_json(ptr)); }
  int exitCode() const { return cilab_report_exit_code(ptr); }
  cilab_report* ptr = nullptr;
};

}  // namespace

TEST_CASE("library identity") {
  CHECK(std::string(cilab_version()).size() > 0);
  CHECK(std::string(cilab_conventions()) == "cilab-conventions/1");
  CHECK(std::string(cilab_status_string(CILAB_ERR_INVALID_JSON)) == "invalid JSON");
}

TEST_CASE("run a command through the C API") {
  Config c("expected-dims");
  CHECK(cilab_config_set(c.ptr, "n", "4") == CILAB_OK);
  CHECK(cilab_config_set(c.ptr, "degrees", "[5]") == CILAB_OK);
  Report r(c.ptr);
  CHECK(r.exitCode() == CILAB_EXIT_OK);
  const auto rep = r.parsed();
  CHECK(rep["results"]["linesDim"] == 0);
  CHECK(rep["results"]["conicsDim"] == 0);
  CHECK(rep["conventions"] == cilab_conventions());
  CHECK(rep["warnings"].size() == 1);
  const std::string text = cilab_report_json(r.ptr);
  CHECK(text.back() == '\n');
  CHECK(text == rep.dump(2) + "\n");
}

TEST_CASE("explicit values override the file layer") {
  Config c("count-lines");
  CHECK(cilab_config_load_json(c.ptr, R"({"n": 3, "degrees": [3], "command": "expected-dims"})") == CILAB_OK);
  CHECK(cilab_config_set(c.ptr, "n", "4") == CILAB_OK);
  CHECK(cilab_config_set(c.ptr, "degrees", "\"2,2\"") == CILAB_OK);
  const auto merged = json::parse(cilab_config_json(c.ptr));
  CHECK(merged["command"] == "count-lines");
  CHECK(merged["n"] == 4);
  Report r(c.ptr);
  CHECK(r.exitCode() == CILAB_EXIT_OK);
  CHECK(r.parsed()["results"]["count"] == 16);
}

TEST_CASE("config file layer") {
  const std::string path = (std::filesystem::temp_directory_path() / "cilab_test_capi_config.json").string();
  {
    FILE* f = std::fopen(path.c_str(), "w");
    REQUIRE(f);
    std::fputs(R"({"n": 3, "degrees": [3], "q": 7, "fermat": true})", f);
    std::fclose(f);
  }
  Config c("enumerate-lines");
  CHECK(cilab_config_load_file(c.ptr, path.c_str()) == CILAB_OK);
  std::remove(path.c_str());
  Report r(c.ptr);
  CHECK(r.exitCode() == CILAB_EXIT_OK);
  CHECK(r.parsed()["results"]["lineCount"] == 27);

  CHECK(cilab_config_load_file(c.ptr, "/nonexistent/config.json") == CILAB_ERR_IO);
  CHECK(std::string(cilab_last_error()).find("/nonexistent/config.json") != std::string::npos);
}

TEST_CASE("call failures are status codes") {
  cilab_config* out = nullptr;
  CHECK(cilab_config_new(nullptr, &out) == CILAB_ERR_NULL_ARGUMENT);
  CHECK(cilab_config_new("verify", nullptr) == CILAB_ERR_NULL_ARGUMENT);
  CHECK(cilab_run(nullptr, nullptr) == CILAB_ERR_NULL_ARGUMENT);

  Config c("expected-dims");
  CHECK(cilab_config_set(c.ptr, "n", "{oops") == CILAB_ERR_INVALID_JSON);
  CHECK(std::string(cilab_last_error()).size() > 0);
  CHECK(cilab_config_load_json(c.ptr, "[1]") == CILAB_ERR_INVALID_CONFIG);
  CHECK(cilab_config_set(c.ptr, "n", "4") == CILAB_OK);
  CHECK(std::string(cilab_last_error()).empty());

  cilab_config_free(nullptr);
  cilab_report_free(nullptr);
  CHECK(cilab_report_exit_code(nullptr) == CILAB_EXIT_FAULT);
}

TEST_CASE("command outcomes are exit codes") {
  SUBCASE("malformed config") {
    Config c("expected-dims");
    CHECK(cilab_config_set(c.ptr, "n", "\"four\"") == CILAB_OK);
    Report r(c.ptr);
    CHECK(r.exitCode() == CILAB_EXIT_FAULT);
    CHECK(r.parsed()["status"] == "invalid-config");
  }
  SUBCASE("unknown command") {
    Config c("enumerate-quartics");
    Report r(c.ptr);
    CHECK(r.exitCode() == CILAB_EXIT_FAULT);
  }
  SUBCASE("budget refusal") {
    Config c("verify");
    CHECK(cilab_config_set(c.ptr, "budget", "0") == CILAB_OK);
    Report r(c.ptr);
    CHECK(r.exitCode() == CILAB_EXIT_BUDGET);
    for (const auto& g : r.parsed()["results"]["gates"]) CHECK(g["status"] == "skipped");
  }
  SUBCASE("fault injection") {
    Config c("verify");
    CHECK(cilab_config_set(c.ptr, "gates", "[7]") == CILAB_OK);
    CHECK(cilab_config_set(c.ptr, "injectFault", "7") == CILAB_OK);
    Report r(c.ptr);
    CHECK(r.exitCode() == CILAB_EXIT_FAULT);
    CHECK(r.parsed()["results"]["failedGates"] == json{"7 obstruction-detection"});
  }
}

TEST_CASE("identical configs give identical bytes") {
  const auto once = [] {
    Config c("smoothness-sample");
    cilab_config_set(c.ptr, "n", "5");
    cilab_config_set(c.ptr, "degrees", "[2,2]");
    cilab_config_set(c.ptr, "samples", "12");
    cilab_config_set(c.ptr, "seed", "424242");
    Report r(c.ptr);
    return std::string(cilab_report_json(r.ptr));
  };
  CHECK(once() == once());
}
