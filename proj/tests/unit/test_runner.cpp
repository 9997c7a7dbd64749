#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "common/error.hpp"
#include "common/version.hpp"
#include "incidence/fixture.hpp"
#include "runner/fixtures.hpp"
#include "runner/gates.hpp"
#include "runner/run.hpp"
#include "runner/smoothness.hpp"

using namespace cilab;
using namespace cilab::runner;
using nlohmann::json;

namespace {

RunResult run(json config) { return runFromJson(config); }

std::filesystem::path tempPath(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("cilab_test_runner_" + name);
}

// Keys of every object in the rendered text appear in sorted order.
bool keysSorted(const nlohmann::ordered_json& j) {
  if (j.is_object()) {
    std::string last;
    bool first = true;
    for (const auto& [key, value] : j.items()) {
      if (!first && key <= last) return false;
      first = false;
      last = key;
      if (!keysSorted(value)) return false;
    }
  } else if (j.is_array()) {
    for (const auto& v : j)
      if (!keysSorted(v)) return false;
  }
  return true;
}

struct ScopedEnv {
  ScopedEnv(const char* name, const char* value) : name_(name) {
    if (const char* old = std::getenv(name)) old_ = old;
    if (value) ::setenv(name, value, 1);
    else ::unsetenv(name);
  }
  ~ScopedEnv() {
    if (old_) ::setenv(name_, old_->c_str(), 1);
    else ::unsetenv(name_);
  }
  const char* name_;
  std::optional<std::string> old_;
};

}  // namespace

TEST_CASE("config parsing, validation and merging") {
  ScopedEnv env("CILAB_THREADS", nullptr);
  const auto c = configFromJson({{"command", "expected-dims"}, {"n", 4}, {"degrees", "2,2"}});
  CHECK(c.n == 4);
  CHECK(c.degrees == std::vector<int>{2, 2});
  CHECK(c.p == 32003);
  CHECK(c.q == 3);
  CHECK(c.samples == 100);
  CHECK(c.threads == 1);
  CHECK(c.budget == kDefaultBudget);

  CHECK_THROWS_AS(configFromJson({{"n", 4}}), InvalidInput);
  CHECK_THROWS_AS(configFromJson({{"command", "x"}, {"bogus", 1}}), InvalidInput);
  CHECK_THROWS_AS(configFromJson({{"command", "x"}, {"n", 0}}), InvalidInput);
  CHECK_THROWS_AS(configFromJson({{"command", "x"}, {"n", -3}}), InvalidInput);
  CHECK_THROWS_AS(configFromJson({{"command", "x"}, {"samples", 0}}), InvalidInput);
  CHECK_THROWS_AS(configFromJson({{"command", "x"}, {"degrees", {2, 0}}}), InvalidInput);
  CHECK_THROWS_AS(configFromJson({{"command", "x"}, {"degrees", "2,,3"}}), InvalidInput);
  CHECK_THROWS_AS(configFromJson({{"command", "x"}, {"fermat", 1}}), InvalidInput);
  CHECK_THROWS_AS(configFromJson({{"command", "x"}, {"curve", "line"}}), InvalidInput);
  CHECK_THROWS_AS(configFromJson(json::array()), InvalidInput);
  // a zero budget is a valid request that refuses all work
  CHECK(configFromJson({{"command", "x"}, {"budget", 0}}).budget == 0);

  const auto merged = mergeConfig({{"command", "count-lines"}, {"n", 3}, {"degrees", {3}}}, {{"n", 4}, {"degrees", "5"}});
  const auto m = configFromJson(merged);
  CHECK(m.command == "count-lines");
  CHECK(m.n == 4);
  CHECK(m.degrees == std::vector<int>{5});
  CHECK_THROWS_AS(mergeConfig(json::array(), json::object()), InvalidInput);

  const auto echo = toJson(c);
  CHECK(configFromJson(echo).degrees == c.degrees);
}

TEST_CASE("thread count default comes from the environment") {
  {
    ScopedEnv env("CILAB_THREADS", "3");
    CHECK(defaultThreads() == 3);
    CHECK(configFromJson({{"command", "x"}}).threads == 3);
    CHECK(configFromJson({{"command", "x"}, {"threads", 2}}).threads == 2);
  }
  {
    ScopedEnv env("CILAB_THREADS", "zero");
    CHECK(defaultThreads() == 1);
  }
  {
    ScopedEnv env("CILAB_THREADS", nullptr);
    CHECK(defaultThreads() == 1);
  }
}

TEST_CASE("config file reading") {
  const auto path = tempPath("config.json");
  {
    std::ofstream(path) << R"({"command": "expected-dims", "n": 3, "degrees": [3]})";
  }
  CHECK(readConfigFile(path.string())["n"] == 3);
  {
    std::ofstream(path) << "[1, 2]";
  }
  CHECK_THROWS_AS(readConfigFile(path.string()), InvalidInput);
  {
    std::ofstream(path) << "{not json";
  }
  CHECK_THROWS_AS(readConfigFile(path.string()), InvalidInput);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(readConfigFile(path.string()), InvalidInput);
}

TEST_CASE("expected-dims report for the quintic threefold") {
  const auto r = run({{"command", "expected-dims"}, {"n", 4}, {"degrees", {5}}});
  CHECK(r.exitCode == kExitOk);
  const auto& rep = r.report;
  CHECK(rep["status"] == "ok");
  CHECK(rep["conventions"] == kConventionsTag);
  CHECK(rep["tool"]["version"] == kToolVersion);
  CHECK(rep["config"]["n"] == 4);
  CHECK(rep["wallclockMs"].is_null());
  CHECK(rep["results"]["linesDim"] == 0);
  CHECK(rep["results"]["conicsDim"] == 0);
  CHECK(rep["results"]["conicThresholdDisagreement"] == true);
  REQUIRE(rep["warnings"].size() == 1);
  const std::string w = rep["warnings"][0];
  CHECK(w.find("(3n-2)/2") != std::string::npos);
  CHECK(w.find("(3n-1)/2") != std::string::npos);
  CHECK(w.find("n=4 d=(5)") != std::string::npos);

  const auto text = renderReport(rep);
  CHECK(text.back() == '\n');
  CHECK(keysSorted(nlohmann::ordered_json::parse(text)));
}

TEST_CASE("lemma-scan report") {
  const auto r = run({{"command", "lemma-scan"}, {"kind", "line-m"}, {"degrees", {3}}, {"q", 3}});
  CHECK(r.exitCode == kExitOk);
  CHECK(r.report["results"]["totalHyperplanes"] == 40);
  CHECK(r.report["results"]["totals"]["totalHyperplanes"] == 40);
  CHECK(r.report["results"]["counterexamples"] == json::array());
  CHECK(r.report["warnings"] == json::array());

  const auto bad = run({{"command", "lemma-scan"}, {"kind", "cusp-m"}, {"degrees", {3}}});
  CHECK(bad.exitCode == kExitFault);
  CHECK(bad.report["status"] == "invalid-config");
  const auto noKind = run({{"command", "lemma-scan"}, {"degrees", {3}}});
  CHECK(noKind.exitCode == kExitFault);

  const auto refused = run({{"command", "lemma-scan"}, {"kind", "line-m"}, {"degrees", {3}}, {"budget", 39}});
  CHECK(refused.exitCode == kExitBudget);
  CHECK(refused.report["status"] == "budget-refused");
  CHECK(refused.report["results"].is_null());
}

TEST_CASE("enumeration reports") {
  const auto lines = run({{"command", "enumerate-lines"}, {"n", 3}, {"degrees", {3}}, {"q", 7}, {"fermat", true}});
  REQUIRE(lines.exitCode == kExitOk);
  CHECK(lines.report["results"]["lineCount"] == 27);
  CHECK(lines.report["results"]["allUnobstructed"] == true);
  CHECK(lines.report["results"]["linesScanned"] == 2850);
  CHECK(lines.report["results"]["lines"].size() == 27);
  for (const auto& l : lines.report["results"]["lines"]) {
    CHECK(l["h0"] == 0);
    CHECK(l["h1"] == 0);
  }
  // the echoed CI reloads
  const auto x = incidence::ciFromJson(lines.report["results"]["ci"]);
  CHECK(x.type() == incidence::CIType{3, {3}});

  const auto conics = run({{"command", "enumerate-conics"},
                           {"fixture", std::string(CILAB_FIXTURE_DIR) + "/quadric_surface_f3.json"}});
  REQUIRE(conics.exitCode == kExitOk);
  CHECK(conics.report["results"]["conicCount"] == 40);
  CHECK(conics.report["results"]["planesScanned"] == 40);
  CHECK(conics.report["results"]["source"] == "fixture");

  const auto random = run({{"command", "enumerate-lines"}, {"n", 3}, {"degrees", {3}}, {"q", 5}, {"seed", 11}});
  CHECK(random.exitCode == kExitOk);
  CHECK(random.report["results"]["source"] == "random");

  const auto both = run({{"command", "enumerate-lines"}, {"fermat", true},
                         {"fixture", std::string(CILAB_FIXTURE_DIR) + "/quadric_surface_f3.json"}});
  CHECK(both.exitCode == kExitFault);
  const auto missing = run({{"command", "enumerate-conics"}, {"fixture", "/nonexistent/x.json"}});
  CHECK(missing.exitCode == kExitFault);
  const auto evenField = run({{"command", "enumerate-lines"}, {"n", 3}, {"degrees", {3}}, {"q", 4}});
  CHECK(evenField.exitCode == kExitFault);
  CHECK(evenField.report["status"] == "invalid-config");
}

TEST_CASE("count reports") {
  const auto lines = run({{"command", "count-lines"}, {"n", 4}, {"degrees", {5}}});
  REQUIRE(lines.exitCode == kExitOk);
  CHECK(lines.report["results"]["count"] == 2875);
  // the integral's Schur expansion: the coefficient of the point class is the count
  bool pointClass = false;
  for (const auto& t : lines.report["results"]["schur"])
    if (t["partition"] == json{3, 3}) pointClass = t["coefficient"] == 2875;
  CHECK(pointClass);

  const auto conics = run({{"command", "count-conics"}, {"n", 4}, {"degrees", {5}}});
  REQUIRE(conics.exitCode == kExitOk);
  CHECK(conics.report["results"]["count"] == 609250);
  CHECK(conics.report["results"]["viaSegre"] == 609250);
  CHECK(conics.report["results"]["viaRelation"] == 609250);
  CHECK(conics.report["results"]["pathsAgree"] == true);
  CHECK(conics.report["warnings"].size() == 1);

  const auto wrongDim = run({{"command", "count-lines"}, {"n", 4}, {"degrees", {6}}});
  CHECK(wrongDim.exitCode == kExitFault);
  CHECK(wrongDim.report["status"] == "domain-error");
  CHECK(wrongDim.report.contains("error"));
}

TEST_CASE("analyze-curve reports") {
  SUBCASE("obstructed line on the Fermat quintic") {
    const algebra::PrimeField f(32003);
    const auto path = tempPath("quintic.json");
    std::ofstream(path) << incidence::toJson(incidence::fermatHypersurface(f, 4, 5)).dump();
    const json curve{{"kind", "line"}, {"n", 4}, {"rows", {{1, -1, 0, 0, 0}, {0, 0, 1, -1, 0}}}};
    const auto r = run({{"command", "analyze-curve"}, {"fixture", path.string()}, {"curve", curve}});
    std::filesystem::remove(path);
    REQUIRE(r.exitCode == kExitOk);
    const auto& res = r.report["results"];
    CHECK(res["onX"] == true);
    CHECK(res["cohomology"]["h0"].get<int>() >= 1);
    CHECK(res["cohomology"]["h1"].get<int>() >= 1);
    CHECK(res["eulerHolds"] == true);
    CHECK(res["jacobianTangentDim"] == res["cohomology"]["h0"]);
  }
  SUBCASE("sampled pairs, every curve kind") {
    for (const char* kind : {"line", "smooth", "line-pair", "double-line"}) {
      const auto r = run({{"command", "analyze-curve"}, {"n", 4}, {"degrees", {3}}, {"curveKind", kind}, {"seed", 5}});
      REQUIRE(r.exitCode == kExitOk);
      const auto& res = r.report["results"];
      CHECK(res["source"] == "sampled");
      CHECK(res["onX"] == true);
      CHECK(res["eulerHolds"] == true);
      CHECK(res["rankAlongCurve"]["smoothAlongCurve"] == true);
      CHECK(res["jacobianMatchesH0"] == true);
      CHECK(res["cohomology"]["h1"] == 0);
    }
  }
  SUBCASE("curve not on X") {
    // x0 x3 - x1 x2 restricts to s t on this line
    const json curve{{"kind", "line"}, {"n", 3}, {"rows", {{1, 0, 0, 0}, {0, 0, 0, 1}}}};
    const auto r = run({{"command", "analyze-curve"},
                        {"fixture", std::string(CILAB_FIXTURE_DIR) + "/quadric_surface_f3.json"},
                        {"curve", curve}});
    REQUIRE(r.exitCode == kExitOk);
    CHECK(r.report["results"]["onX"] == false);
    CHECK(r.report["warnings"].size() == 1);
  }
  SUBCASE("fixture without a curve") {
    const auto r = run({{"command", "analyze-curve"},
                        {"fixture", std::string(CILAB_FIXTURE_DIR) + "/quadric_surface_f3.json"}});
    CHECK(r.exitCode == kExitFault);
  }
}

TEST_CASE("smoothness-sample report and grid") {
  const auto r = run({{"command", "smoothness-sample"}, {"n", 4}, {"degrees", {2, 2}}, {"samples", 10}});
  REQUIRE(r.exitCode == kExitOk);
  const auto& cells = r.report["results"]["cells"];
  REQUIRE(cells.size() == 4);
  for (const auto& c : cells) {
    CHECK(c["samples"] == 10);
    CHECK(c["eulerHolds"] == 10);
  }
  CHECK(r.report["warnings"] == json::array());

  // outside the smooth range: warned, and h1 is generically nonzero
  const auto out = run({{"command", "smoothness-sample"}, {"n", 4}, {"degrees", {6}}, {"samples", 10},
                        {"curveKind", "smooth"}});
  REQUIRE(out.exitCode == kExitOk);
  CHECK(out.report["warnings"].size() == 1);
  CHECK(out.report["results"]["allMeetThreshold"] == false);

  const auto refused = run({{"command", "smoothness-sample"}, {"n", 4}, {"degrees", {2, 2}}, {"samples", 10},
                            {"budget", 39}});
  CHECK(refused.exitCode == kExitBudget);

  const auto grid = smoothnessGrid();
  std::set<std::string> labels;
  for (const auto& e : grid) {
    int s = 0;
    for (int d : e.type.degrees) s += d;
    const int c = e.type.c();
    CHECK(e.type.n <= 6);
    CHECK(c <= 2);
    if (e.kind == CurveKind::Line) CHECK(s + c <= 2 * e.type.n - 2);
    else CHECK(2 * s + c <= 3 * e.type.n - 2);
    labels.insert(e.type.label() + curveKindName(e.kind));
  }
  CHECK(labels.size() == grid.size());
  CHECK(labels.contains("n=6 d=(4,4)line"));
  CHECK(labels.contains("n=3 d=(3)smooth"));
  CHECK(labels.contains("n=3 d=(3)line"));
  CHECK_FALSE(labels.contains("n=3 d=(4)line"));
  CHECK_FALSE(labels.contains("n=4 d=(5)smooth"));

  const incidence::CIType t{4, {2, 2}};
  CHECK(sampleSeed(1, t, CurveKind::Line, 0) != sampleSeed(1, t, CurveKind::Line, 1));
  CHECK(sampleSeed(1, t, CurveKind::Line, 0) != sampleSeed(1, t, CurveKind::LinePair, 0));
  CHECK(sampleSeed(1, t, CurveKind::Line, 0) != sampleSeed(2, t, CurveKind::Line, 0));
}

TEST_CASE("determinism across repeated runs and thread counts") {
  const std::vector<json> configs{
      {{"command", "expected-dims"}, {"n", 5}, {"degrees", {2, 3}}},
      {{"command", "smoothness-sample"}, {"n", 5}, {"degrees", {3}}, {"samples", 15}, {"seed", 99}},
      {{"command", "lemma-scan"}, {"kind", "double-m1"}, {"degrees", {2}}, {"q", 3}},
      {{"command", "enumerate-conics"}, {"n", 3}, {"degrees", {2}}, {"q", 3}, {"seed", 3}},
      {{"command", "analyze-curve"}, {"n", 5}, {"degrees", {2, 2}}, {"curveKind", "double-line"}, {"seed", 8}},
      {{"command", "count-conics"}, {"n", 5}, {"degrees", {3, 3}}},
  };
  for (const auto& cfg : configs) {
    CAPTURE(cfg.dump());
    const auto a = renderReport(run(cfg).report);
    const auto b = renderReport(run(cfg).report);
    CHECK(a == b);
    auto threaded = cfg;
    threaded["threads"] = 4;
    CHECK(run(threaded).report["results"] == run(cfg).report["results"]);
  }
  auto seeded = configs[4];
  seeded["seed"] = 100;
  CHECK(run(seeded).report["results"]["curve"] != run(configs[4]).report["results"]["curve"]);
}

TEST_CASE("wallclock only when requested") {
  const auto r = run({{"command", "expected-dims"}, {"n", 3}, {"degrees", {3}}, {"wallclock", true}});
  CHECK(r.report["wallclockMs"].is_number_integer());
}

TEST_CASE("report written to the output path") {
  const auto path = tempPath("report.json");
  const auto r = run({{"command", "count-lines"}, {"n", 3}, {"degrees", {3}}, {"output", path.string()}});
  REQUIRE(r.exitCode == kExitOk);
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == renderReport(r.report));
  std::filesystem::remove(path);

  const auto bad = run({{"command", "count-lines"}, {"n", 3}, {"degrees", {3}}, {"output", "/nonexistent/dir/r.json"}});
  CHECK(bad.exitCode == kExitFault);
  CHECK(bad.report["status"] == "error");
}

TEST_CASE("malformed and unknown commands") {
  const auto unknown = run({{"command", "enumerate-cubics"}});
  CHECK(unknown.exitCode == kExitFault);
  CHECK(unknown.report["status"] == "invalid-config");
  CHECK(std::string(unknown.report["error"]).find("enumerate-cubics") != std::string::npos);

  const auto malformed = run({{"command", "expected-dims"}, {"n", "four"}});
  CHECK(malformed.exitCode == kExitFault);
  CHECK(malformed.report["conventions"] == kConventionsTag);
  CHECK(malformed.report["config"]["n"] == "four");

  const auto missing = run({{"command", "expected-dims"}, {"n", 4}});
  CHECK(missing.exitCode == kExitFault);

  CHECK(commandNames().size() == 9);
}

TEST_CASE("embedded fixtures match the files") {
  REQUIRE(embeddedFixtures().size() == 3);
  for (const auto& f : embeddedFixtures()) {
    std::ifstream in(std::string(CILAB_FIXTURE_DIR) + "/" + f.name);
    REQUIRE(in);
    CHECK(json::parse(in) == json::parse(f.json));
  }
  CHECK_THROWS_AS(embeddedFixture("missing.json"), InvalidInput);
}

TEST_CASE("verify: budget refusal, fault injection and gate subsets") {
  SUBCASE("budget 0 skips every gate") {
    const auto r = run({{"command", "verify"}, {"budget", 0}});
    CHECK(r.exitCode == kExitBudget);
    CHECK(r.report["status"] == "budget-refused");
    const auto& gates = r.report["results"]["gates"];
    REQUIRE(gates.size() == 12);
    for (const auto& g : gates) CHECK(g["status"] == "skipped");
    CHECK(r.report["results"]["skipped"] == 12);
  }
  SUBCASE("corrupted fixture fails the named gate") {
    const auto r = run({{"command", "verify"}, {"gates", {1, 10}}, {"injectFault", 10}});
    CHECK(r.exitCode == kExitFault);
    CHECK(r.report["status"] == "gate-failure");
    CHECK(r.report["results"]["failedGates"] == json{"10 conic-census"});
    CHECK(r.report["results"]["gates"][0]["status"] == "pass");
    CHECK(r.report["results"]["gates"][1]["status"] == "fail");
    CHECK(r.report["warnings"] == json{"gate 10 conic-census failed"});
  }
  SUBCASE("every fixture gate can be corrupted") {
    for (int id : {2, 4, 7, 10}) {
      GateOptions o;
      o.budget = kDefaultBudget;
      o.injectFault = id;
      const auto suite = verifySuite({id}, o);
      CHECK(suite.exitCode == kExitFault);
      CHECK(suite.gates.front().status == GateStatus::Fail);
    }
  }
  SUBCASE("fault injection needs a fixture gate") {
    const auto r = run({{"command", "verify"}, {"injectFault", 3}});
    CHECK(r.exitCode == kExitFault);
    CHECK(r.report["status"] == "invalid-config");
  }
  SUBCASE("fast gates pass") {
    const auto r = run({{"command", "verify"}, {"gates", {1, 2, 3, 4, 7, 10, 11}}});
    CHECK(r.exitCode == kExitOk);
    CHECK(r.report["results"]["passed"] == 7);
  }
  SUBCASE("a partial budget skips the expensive gates") {
    const auto r = run({{"command", "verify"}, {"gates", {1, 2, 3}}, {"budget", 100}});
    CHECK(r.exitCode == kExitBudget);
    CHECK(r.report["results"]["gates"][1]["status"] == "skipped");
    CHECK(r.report["results"]["passed"] == 2);
  }
  CHECK(gateTable().size() == 12);
  CHECK_THROWS_AS(runGate(13, GateOptions{}), InvalidInput);
}
