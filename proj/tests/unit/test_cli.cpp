#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

using nlohmann::json;

namespace {

struct Outcome {
  int exitCode = -1;
  std::string out;
};

// Runs the CLI through the shell; stderr goes to /dev/null unless captured.
Outcome cli(const std::string& args, const std::string& env = "", bool captureStderr = false) {
  const std::string cmd = env + (env.empty() ? "" : " ") + "'" + CILAB_CLI_PATH + "' " + args +
                          (captureStderr ? " 2>&1" : " 2>/dev/null");
  Outcome o;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  REQUIRE(pipe);
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) o.out.append(buf.data(), n);
  const int status = ::pclose(pipe);
  o.exitCode = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return o;
}

std::filesystem::path tempPath(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("cilab_test_cli_" + name);
}

}  // namespace

TEST_CASE("documented examples") {
  const auto dims = cli("expected-dims --n 4 --type 5");
  CHECK(dims.exitCode == 0);
  const auto d = json::parse(dims.out);
  CHECK(d["results"]["linesDim"] == 0);
  CHECK(d["results"]["conicsDim"] == 0);
  CHECK(d["warnings"].size() == 1);

  const auto scan = cli("lemma-scan --kind line-m --type 3 --q 3");
  CHECK(scan.exitCode == 0);
  const auto s = json::parse(scan.out);
  CHECK(s["results"]["totalHyperplanes"] == 40);
  CHECK(s["results"]["counterexamples"] == json::array());

  const auto lines = cli("enumerate-lines --n 3 --type 3 --q 7 --fermat");
  CHECK(lines.exitCode == 0);
  const auto l = json::parse(lines.out);
  CHECK(l["results"]["lineCount"] == 27);
  CHECK(l["results"]["allUnobstructed"] == true);
}

TEST_CASE("flags override the config file") {
  const auto path = tempPath("config.json");
  std::ofstream(path) << R"({"n": 3, "degrees": [3], "seed": 7})";
  const auto fromFile = json::parse(cli("count-lines --config " + path.string()).out);
  CHECK(fromFile["results"]["count"] == 27);
  CHECK(fromFile["config"]["seed"] == 7);
  const auto overridden = json::parse(cli("count-lines --config " + path.string() + " --n 4 --type 5").out);
  CHECK(overridden["results"]["count"] == 2875);
  CHECK(overridden["config"]["seed"] == 7);

  std::ofstream(path) << R"({"n": 3, "degrees": [3], "colour": "red"})";
  const auto bad = cli("count-lines --config " + path.string());
  CHECK(bad.exitCode == 1);
  CHECK(json::parse(bad.out)["status"] == "invalid-config");
  std::filesystem::remove(path);
}

TEST_CASE("thread count from the environment") {
  const auto r = json::parse(cli("expected-dims --n 3 --type 3", "CILAB_THREADS=3").out);
  CHECK(r["config"]["threads"] == 3);
  const auto flag = json::parse(cli("expected-dims --n 3 --type 3 --threads 2", "CILAB_THREADS=3").out);
  CHECK(flag["config"]["threads"] == 2);
}

TEST_CASE("byte-identical reports for a fixed seed") {
  const std::string args = "smoothness-sample --n 4 --type 3 --samples 10 --seed 31337";
  const auto a = cli(args);
  const auto b = cli(args);
  CHECK(a.exitCode == 0);
  CHECK(a.out == b.out);
  const auto threaded = cli(args, "CILAB_THREADS=4");
  CHECK(json::parse(threaded.out)["results"] == json::parse(a.out)["results"]);
}

TEST_CASE("output file") {
  const auto path = tempPath("report.json");
  const auto r = cli("count-conics --n 4 --type 5 --output " + path.string());
  CHECK(r.exitCode == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  const auto rep = json::parse(in);
  CHECK(rep["results"]["count"] == 609250);
  std::filesystem::remove(path);
}

TEST_CASE("analyze-curve with an inline curve") {
  const auto r = cli(std::string("analyze-curve --fixture ") + CILAB_FIXTURE_DIR +
                     "/quadric_surface_f3.json --curve '{\"kind\":\"line\",\"n\":3,\"rows\":[[1,0,0,0],[0,0,1,0]]}'");
  CHECK(r.exitCode == 0);
  const auto rep = json::parse(r.out);
  CHECK(rep["results"]["onX"] == true);
  CHECK(rep["results"]["cohomology"]["h0"] == 1);
  CHECK(rep["results"]["cohomology"]["h1"] == 0);

  const auto bad = cli("analyze-curve --n 3 --type 2 --curve '{oops'");
  CHECK(bad.exitCode == 1);
}

TEST_CASE("exit codes") {
  const auto budget = cli("verify --budget 0");
  CHECK(budget.exitCode == 2);
  const auto rep = json::parse(budget.out);
  CHECK(rep["results"]["skipped"] == 12);

  const auto fault = cli("verify --gates 10 --inject-fault 10", "", true);
  CHECK(fault.exitCode == 1);
  CHECK(fault.out.find("10 conic-census") != std::string::npos);

  CHECK(cli("enumerate-lines --n 3 --type 3 --q 7 --fermat --budget 5").exitCode == 2);
  CHECK(cli("count-lines --n 4 --type 6").exitCode == 1);
  CHECK(cli("no-such-command").exitCode == 1);
  CHECK(cli("expected-dims --n 4 --type 5 --frobnicate").exitCode == 1);
  CHECK(cli("--help").exitCode == 0);
}
