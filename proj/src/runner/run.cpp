#include "runner/run.hpp"

#include <chrono>
#include <fstream>
#include <functional>
#include <map>
#include <random>

#include "common/error.hpp"
#include "common/version.hpp"
#include "incidence/census.hpp"
#include "incidence/fixture.hpp"
#include "incidence/sample.hpp"
#include "multlab/scan.hpp"
#include "runner/gates.hpp"
#include "runner/smoothness.hpp"
#include "schubert/counts.hpp"

namespace cilab::runner {

using nlohmann::json;
using incidence::CIType;
using incidence::CompleteIntersection;

namespace {

struct Payload {
  json results;
  std::vector<std::string> warnings;
  int exitCode = kExitOk;
  std::string status = "ok";
};

CIType requireType(const RunConfig& c) {
  if (!c.n) throw InvalidInput(c.command + " needs n");
  if (c.degrees.empty()) throw InvalidInput(c.command + " needs degrees (the type)");
  CIType t{*c.n, c.degrees};
  t.validate();
  return t;
}

json typeJson(const CIType& t) { return {{"n", t.n}, {"degrees", t.degrees}}; }

json bigJson(const schubert::BigInt& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
    return static_cast<std::int64_t>(v);
  return v.str();
}

json schurJson(const schubert::SchurTerms& terms) {
  json out = json::array();
  for (const auto& [partition, coeff] : terms) out.push_back({{"partition", partition}, {"coefficient", bigJson(coeff)}});
  return out;
}

json cohomologyJson(const incidence::Cohomology& c) {
  return {{"h0", c.h0}, {"h1", c.h1}, {"expectedDim", c.expectedDim}, {"reliable", c.reliable}};
}

json rankJson(const incidence::RankReport& r) {
  json witnesses = json::array();
  for (const auto& w : r.witnesses)
    witnesses.push_back({{"branch", w.branch},
                         {"extensionDegree", w.extensionDegree},
                         {"parameter", w.parameter},
                         {"coordinates", w.coordinates},
                         {"rank", w.rank}});
  return {{"c", r.c},
          {"minRank", r.minRank},
          {"smoothAlongCurve", r.smoothAlongCurve},
          {"witnessesComplete", r.witnessesComplete},
          {"witnesses", witnesses}};
}

/// The complete intersection of an enumeration run: fixture, Fermat or seeded random.
std::pair<CompleteIntersection, std::string> enumerationTarget(const RunConfig& c) {
  if (!c.fixture.empty()) {
    if (c.fermat) throw InvalidInput("fixture and fermat are exclusive");
    return {incidence::loadCiFixture(c.fixture), "fixture"};
  }
  const auto type = requireType(c);
  const algebra::PrimeField field(c.q);
  if (c.fermat) {
    if (type.c() != 1) throw InvalidInput("fermat needs a single degree");
    return {incidence::fermatHypersurface(field, type.n, type.degrees.front()), "fermat"};
  }
  return {incidence::randomCompleteIntersection(field, type, c.seed), "random"};
}

Payload expectedDimsCommand(const RunConfig& c) {
  const auto type = requireType(c);
  const auto e = incidence::expectedDims(type);
  Payload p;
  p.results = {{"type", typeJson(type)},
               {"linesDim", e.linesDim},
               {"conicsDim", e.conicsDim},
               {"linesEmptyForGeneral", e.linesEmptyForGeneral},
               {"linesSmoothInRange", e.linesSmoothInRange},
               {"linesConnectedInRange", e.linesConnectedInRange},
               {"conicsSmoothInRange", e.conicsSmoothInRange},
               {"conicsConnectedInRange", e.conicsConnectedInRange},
               {"conicsConnectedAltRange", e.conicsConnectedAltRange},
               {"thresholdConicEmptyFlag", e.thresholdConicEmptyFlag},
               {"consistencyConicEmptyFlag", e.consistencyConicEmptyFlag},
               {"conicThresholdDisagreement", e.conicThresholdDisagreement},
               {"connectedRangeDisagreement", e.connectedRangeDisagreement}};
  p.warnings = e.warnings;
  return p;
}

Payload smoothnessCommand(const RunConfig& c) {
  const auto type = requireType(c);
  const std::string kindName = c.curveKind.empty() ? "all" : c.curveKind;
  const auto kinds = kindName == "all" ? allCurveKinds() : std::vector<CurveKind>{parseCurveKind(kindName)};
  if (static_cast<std::uint64_t>(c.samples) * kinds.size() > c.budget)
    throw BudgetExceeded(std::to_string(c.samples * kinds.size()) + " samples exceed the budget of " +
                         std::to_string(c.budget));
  const auto dims = incidence::expectedDims(type);
  Payload p;
  json cells = json::array();
  bool allMeet = true;
  for (auto k : kinds) {
    const bool isLine = k == CurveKind::Line;
    if (isLine ? !dims.linesSmoothInRange : !dims.conicsSmoothInRange)
      p.warnings.push_back(type.label() + " is outside the smooth range for " +
                           (isLine ? std::string("lines") : std::string("conics")));
    const auto cell = sampleSmoothness(c.p, type, k, c.seed, c.samples, c.budget, c.threads);
    allMeet = allMeet && cell.meetsThreshold();
    cells.push_back(toJson(cell));
  }
  p.results = {{"type", typeJson(type)}, {"p", c.p}, {"cells", cells}, {"allMeetThreshold", allMeet}};
  return p;
}

Payload lemmaScanCommand(const RunConfig& c) {
  if (c.kind.empty()) throw InvalidInput("lemma-scan needs kind");
  if (c.degrees.empty()) throw InvalidInput("lemma-scan needs degrees");
  const auto kind = multlab::parseKind(c.kind);
  const auto report = multlab::exhaustiveDichotomyScan(kind, c.degrees, c.q, c.budget, c.threads);
  Payload p;
  p.results = multlab::toJson(report);
  p.results["totalHyperplanes"] = report.totalHyperplanes;
  if (report.counterexampleCount > 0)
    p.warnings.push_back(std::to_string(report.counterexampleCount) +
                         " hyperplanes drop codimension without a witness point");
  return p;
}

Payload enumerateLinesCommand(const RunConfig& c) {
  const auto [x, source] = enumerationTarget(c);
  const auto census = incidence::enumerateLinesOnX(x, c.budget);
  json lines = json::array();
  for (const auto& rec : census.lines) {
    json line = cohomologyJson(rec.cohomology);
    line["rows"] = incidence::matrixJson(rec.line.rows);
    lines.push_back(std::move(line));
  }
  Payload p;
  p.results = {{"source", source},
               {"q", x.field().modulus()},
               {"type", typeJson(x.type())},
               {"ci", incidence::toJson(x)},
               {"linesScanned", census.linesScanned},
               {"lineCount", census.lines.size()},
               {"allUnobstructed", census.allUnobstructed},
               {"lines", lines}};
  return p;
}

Payload enumerateConicsCommand(const RunConfig& c) {
  const auto [x, source] = enumerationTarget(c);
  const auto census = incidence::enumerateConicsOnX(x, c.budget);
  json conics = json::array();
  std::map<std::string, int> perKind;
  for (const auto& rec : census.conics) {
    json conic = cohomologyJson(rec.cohomology);
    conic["plane"] = incidence::matrixJson(rec.conic.plane);
    conic["quadric"] = rec.conic.quadric;
    conic["conicKind"] = moduli::conicKindName(rec.kind);
    ++perKind[moduli::conicKindName(rec.kind)];
    conics.push_back(std::move(conic));
  }
  json planes = json::array();
  for (const auto& m : census.containedPlanes) planes.push_back(incidence::matrixJson(m));
  Payload p;
  if (!census.containedPlanes.empty())
    p.warnings.push_back(std::to_string(census.containedPlanes.size()) +
                         " planes lie in X; their conics are not listed");
  p.results = {{"source", source},
               {"q", x.field().modulus()},
               {"type", typeJson(x.type())},
               {"ci", incidence::toJson(x)},
               {"planesScanned", census.planesScanned},
               {"containedPlanes", planes},
               {"conicCount", census.conics.size()},
               {"conicsPerKind", perKind},
               {"conics", conics}};
  return p;
}

Payload countLinesCommand(const RunConfig& c) {
  const auto type = requireType(c);
  const auto d = schubert::lineCountDetail(type);
  Payload p;
  p.results = {{"type", typeJson(type)},
               {"count", bigJson(d.count)},
               {"integrand", d.integrand.toString()},
               {"schur", schurJson(d.schur)}};
  return p;
}

Payload countConicsCommand(const RunConfig& c) {
  const auto type = requireType(c);
  const auto d = schubert::conicCountDetail(type);
  Payload p;
  p.results = {{"type", typeJson(type)},
               {"count", bigJson(d.count)},
               {"viaSegre", bigJson(d.viaSegre)},
               {"viaRelation", bigJson(d.viaRelation)},
               {"pathsAgree", d.pathsAgree},
               {"pushforward", d.pushforward.toString()},
               {"schur", schurJson(d.schur)}};
  p.warnings = incidence::expectedDims(type).warnings;
  return p;
}

Payload analyzeCurveCommand(const RunConfig& c) {
  std::optional<CompleteIntersection> x;
  std::optional<incidence::CurveModel> curve;
  std::string source;
  if (!c.fixture.empty()) {
    if (c.curve.is_null()) throw InvalidInput("analyze-curve on a fixture needs a curve");
    x = incidence::loadCiFixture(c.fixture);
    curve = incidence::curveFromJson(x->field(), c.curve);
    source = "fixture";
  } else {
    const auto type = requireType(c);
    const algebra::PrimeField field(c.p);
    std::mt19937_64 rng(c.seed);
    if (!c.curve.is_null()) {
      curve = incidence::curveFromJson(field, c.curve);
    } else {
      const auto kind = parseCurveKind(c.curveKind.empty() ? "line" : c.curveKind);
      curve = kind == CurveKind::Line
                  ? incidence::CurveModel::fromLine(field, incidence::randomLine(field, type.n, rng))
                  : incidence::CurveModel::fromConic(field, incidence::randomConic(field, type.n, conicKindOf(kind), rng));
    }
    x = incidence::sampleThroughCurve(type, *curve, rng());
    source = "sampled";
  }

  Payload p;
  const bool onX = incidence::containsCurve(*x, *curve);
  p.results = {{"source", source},
               {"ci", incidence::toJson(*x)},
               {"curve", incidence::toJson(*curve)},
               {"onX", onX}};
  if (!onX) {
    p.warnings.push_back("the curve does not lie on X; nothing further to analyze");
    return p;
  }
  const auto dec = incidence::decomposeAlongCurve(*x, *curve);
  const auto map = incidence::sectionMap(dec);
  const auto coh = incidence::normalBundleCohomology(*x, *curve);
  const int jac = incidence::jacobianTangentDim(*x, *curve);
  p.results["sectionMap"] = {{"source", map.source}, {"target", map.target}, {"rank", map.rank}};
  p.results["cohomology"] = cohomologyJson(coh);
  p.results["rankAlongCurve"] = rankJson(coh.rank);
  p.results["jacobianTangentDim"] = jac;
  p.results["eulerHolds"] = coh.h0 - coh.h1 == coh.expectedDim;
  // the oracle comparison is only meaningful when X is smooth along C
  p.results["jacobianMatchesH0"] = coh.rank.smoothAlongCurve ? json(jac == coh.h0) : json(nullptr);
  if (!coh.rank.smoothAlongCurve) p.warnings.push_back("X is singular along the curve");
  return p;
}

Payload verifyCommand(const RunConfig& c) {
  GateOptions o;
  o.budget = c.budget;
  o.threads = c.threads;
  o.seed = c.seed;
  o.injectFault = c.injectFault;
  const auto suite = verifySuite(c.gates, o);
  Payload p;
  json gates = json::array();
  int passed = 0, failed = 0, skipped = 0;
  for (const auto& g : suite.gates) {
    gates.push_back(toJson(g));
    passed += g.status == GateStatus::Pass;
    failed += g.status == GateStatus::Fail;
    skipped += g.status == GateStatus::Skipped;
  }
  p.results = {{"gates", gates},
               {"passed", passed},
               {"failed", failed},
               {"skipped", skipped},
               {"failedGates", suite.failedGates}};
  p.exitCode = suite.exitCode;
  if (suite.exitCode == kExitFault) p.status = "gate-failure";
  if (suite.exitCode == kExitBudget) p.status = "budget-refused";
  for (const auto& name : suite.failedGates) p.warnings.push_back("gate " + name + " failed");
  return p;
}

const std::vector<std::pair<std::string, std::function<Payload(const RunConfig&)>>>& dispatchTable() {
  static const std::vector<std::pair<std::string, std::function<Payload(const RunConfig&)>>> table{
      {"expected-dims", expectedDimsCommand},
      {"smoothness-sample", smoothnessCommand},
      {"lemma-scan", lemmaScanCommand},
      {"enumerate-lines", enumerateLinesCommand},
      {"enumerate-conics", enumerateConicsCommand},
      {"count-lines", countLinesCommand},
      {"count-conics", countConicsCommand},
      {"analyze-curve", analyzeCurveCommand},
      {"verify", verifyCommand},
  };
  return table;
}

json envelope(const std::string& command, json config) {
  return {{"command", command},
          {"config", std::move(config)},
          {"conventions", kConventionsTag},
          {"tool", {{"name", "cilab"}, {"version", kToolVersion}}},
          {"warnings", json::array()},
          {"results", nullptr},
          {"wallclockMs", nullptr}};
}

void fail(json& report, const std::string& status, const std::string& message) {
  report["status"] = status;
  report["error"] = message;
}

}  // namespace

const std::vector<std::string>& commandNames() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, fn] : dispatchTable()) out.push_back(name);
    return out;
  }();
  return names;
}

RunResult runCommand(const RunConfig& config) {
  RunResult out;
  out.report = envelope(config.command, toJson(config));
  const auto start = std::chrono::steady_clock::now();
  try {
    const auto& table = dispatchTable();
    auto it = std::find_if(table.begin(), table.end(), [&](const auto& e) { return e.first == config.command; });
    if (it == table.end()) throw InvalidInput("unknown command '" + config.command + "'");
    auto payload = it->second(config);
    out.report["results"] = std::move(payload.results);
    out.report["warnings"] = std::move(payload.warnings);
    out.report["status"] = payload.status;
    out.exitCode = payload.exitCode;
  } catch (const BudgetExceeded& e) {
    fail(out.report, "budget-refused", e.what());
    out.exitCode = kExitBudget;
  } catch (const InvalidInput& e) {
    fail(out.report, "invalid-config", e.what());
    out.exitCode = kExitFault;
  } catch (const DomainError& e) {
    fail(out.report, "domain-error", e.what());
    out.exitCode = kExitFault;
  } catch (const std::exception& e) {
    fail(out.report, "error", e.what());
    out.exitCode = kExitFault;
  }
  if (config.wallclock)
    out.report["wallclockMs"] = std::chrono::duration_cast<std::chrono::milliseconds>(
                                    std::chrono::steady_clock::now() - start)
                                    .count();
  out.report["exitCode"] = out.exitCode;
  return out;
}

RunResult runFromJson(const json& config) {
  RunResult out;
  try {
    out = runCommand(configFromJson(config));
  } catch (const std::exception& e) {
    const std::string command =
        config.is_object() && config.contains("command") && config["command"].is_string()
            ? config["command"].get<std::string>()
            : std::string();
    out.report = envelope(command, config);
    fail(out.report, "invalid-config", e.what());
    out.exitCode = kExitFault;
    out.report["exitCode"] = out.exitCode;
    return out;
  }
  const auto& path = out.report["config"]["output"];
  if (path.is_string() && !path.get<std::string>().empty()) {
    std::ofstream file(path.get<std::string>(), std::ios::binary);
    file << renderReport(out.report);
    if (!file) {
      // the report on stdout still says what went wrong
      fail(out.report, "error", "cannot write report to " + path.get<std::string>());
      out.exitCode = kExitFault;
      out.report["exitCode"] = out.exitCode;
    }
  }
  return out;
}

std::string renderReport(const json& report) { return report.dump(2) + "\n"; }

}  // namespace cilab::runner
