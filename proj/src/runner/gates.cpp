#include "runner/gates.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

#include "common/error.hpp"
#include "incidence/census.hpp"
#include "incidence/fixture.hpp"
#include "moduli/charts.hpp"
#include "multlab/scan.hpp"
#include "runner/fixtures.hpp"
#include "runner/run.hpp"
#include "runner/smoothness.hpp"
#include "schubert/counts.hpp"

namespace cilab::runner {

using nlohmann::json;
using incidence::CIType;
using incidence::CompleteIntersection;

namespace {

// Values frozen from the Bott-residue oracle (tests/oracles/counts.json).
constexpr long kLinesOnQuintic = 2875;
constexpr long kLinesOnQuadricPair = 16;
constexpr long kLinesOnCubicSurface = 27;
constexpr long kConicsOnQuintic = 609250;

constexpr std::uint32_t kSamplingPrime = 32003;
constexpr std::uint32_t kSamplesPerCell = 100;
constexpr std::uint32_t kScanQ = 3;
constexpr std::uint32_t kMinJacobianPairs = 300;

const std::vector<std::vector<int>> kScanDegrees{{2}, {3}, {2, 2}, {2, 3}, {3, 3}};

// Gates that load a complete intersection fixture.
const std::vector<int> kFixtureGates{2, 4, 7, 10};

/// Thrown inside a gate body to report a failed check.
struct CheckFailed {
  std::string reason;
  json detail = json::object();
};

void require(bool ok, const std::string& what) {
  if (!ok) throw CheckFailed{what};
}

/// Grid sampling shared by gates 6, 8 and 9.
struct SuiteContext {
  std::optional<std::vector<SmoothnessCell>> grid;
};

/// Every fixture goes through its JSON form, which fault injection corrupts.
CompleteIntersection loadFixture(json doc, bool corrupt) {
  if (corrupt) doc["conventions"] = "cilab-conventions/corrupted";
  return incidence::ciFromJson(doc);
}

std::string typeLabel(const CIType& t) { return t.label(); }

json gateFormulas() {
  const auto cubic = incidence::expectedDims({3, {3}});
  const auto quintic = incidence::expectedDims({4, {5}});
  const auto quadric = incidence::expectedDims({3, {2}});
  require(cubic.linesDim == 0, "cubic surface: lines dimension " + std::to_string(cubic.linesDim));
  require(quintic.linesDim == 0 && quintic.conicsDim == 0, "quintic threefold: dimensions not (0, 0)");
  require(quadric.linesDim == 1, "quadric surface: lines dimension " + std::to_string(quadric.linesDim));
  require(quintic.conicThresholdDisagreement, "quintic threefold: conic threshold disagreement not flagged");
  const bool named = std::any_of(quintic.warnings.begin(), quintic.warnings.end(), [](const std::string& w) {
    return w.find("(3n-2)/2") != std::string::npos && w.find("(3n-1)/2") != std::string::npos &&
           w.find(CIType{4, {5}}.label()) != std::string::npos;
  });
  require(named, "quintic threefold: warning does not name both inequalities and the type");

  // emptiness flags against the inequalities, over a grid of types
  int checked = 0;
  for (int n = 2; n <= 8; ++n) {
    for (int c = 1; c <= std::min(3, n); ++c) {
      std::vector<int> degrees(c, 2);
      for (;;) {
        int s = 0;
        for (int d : degrees) s += d;
        const CIType type{n, degrees};
        const auto e = incidence::expectedDims(type);
        require(e.linesDim == 2 * n - 2 - s - c && e.conicsDim == 3 * n - 1 - 2 * s - c,
                typeLabel(type) + ": dimension formula");
        require(e.linesEmptyForGeneral == (s + c > 2 * n - 2), typeLabel(type) + ": line emptiness flag");
        require(e.thresholdConicEmptyFlag == (2 * s + c > 3 * n - 2), typeLabel(type) + ": conic threshold flag");
        require(e.consistencyConicEmptyFlag == (e.conicsDim < 0), typeLabel(type) + ": conic consistency flag");
        require(e.conicThresholdDisagreement == (e.thresholdConicEmptyFlag != e.consistencyConicEmptyFlag),
                typeLabel(type) + ": disagreement flag");
        ++checked;
        int i = c - 1;
        while (i >= 0 && degrees[i] == 6) --i;
        if (i < 0) break;
        ++degrees[i];
        for (int k = i + 1; k < c; ++k) degrees[k] = degrees[i];
      }
    }
  }
  return {{"typesChecked", checked}, {"quinticWarnings", quintic.warnings}};
}

json gateCubicSurface(const GateOptions& o, bool corrupt) {
  const algebra::PrimeField f7(7);
  const auto x = loadFixture(incidence::toJson(incidence::fermatHypersurface(f7, 3, 3)), corrupt);
  const auto census = incidence::enumerateLinesOnX(x, o.budget);
  int unobstructed = 0;
  for (const auto& rec : census.lines)
    if (rec.cohomology.reliable && rec.cohomology.h0 == 0 && rec.cohomology.h1 == 0) ++unobstructed;
  const auto schubert = schubert::lineCount({3, {3}});
  require(static_cast<long>(census.lines.size()) == kLinesOnCubicSurface,
          "found " + std::to_string(census.lines.size()) + " lines on the Fermat cubic over F_7");
  require(unobstructed == kLinesOnCubicSurface, std::to_string(unobstructed) + " lines have h0 = h1 = 0");
  require(schubert == kLinesOnCubicSurface, "line count integral gives " + schubert.str());
  return {{"linesScanned", census.linesScanned},
          {"lineCount", census.lines.size()},
          {"unobstructed", unobstructed},
          {"schubertCount", schubert.str()}};
}

json gateSchubertLines() {
  const auto quintic = schubert::lineCount({4, {5}});
  const auto pair = schubert::lineCount({4, {2, 2}});
  require(quintic == kLinesOnQuintic, "lines on the quintic: " + quintic.str());
  require(pair == kLinesOnQuadricPair, "lines on the (2,2) threefold: " + pair.str());
  return {{"quintic", quintic.str()}, {"quadricPair", pair.str()}};
}

json gateQuadricRulings(const GateOptions& o, bool corrupt) {
  const algebra::PrimeField f5(5);
  const auto x = loadFixture(incidence::toJson(incidence::splitQuadricSurface(f5)), corrupt);
  const auto census = incidence::enumerateLinesOnX(x, o.budget);
  const int expected = 2 * (5 + 1);
  int good = 0;
  for (const auto& rec : census.lines)
    if (rec.cohomology.reliable && rec.cohomology.h0 == 1 && rec.cohomology.h1 == 0) ++good;
  const int dim = incidence::expectedDims({3, {2}}).linesDim;
  require(static_cast<int>(census.lines.size()) == expected,
          "found " + std::to_string(census.lines.size()) + " lines on the split quadric over F_5");
  require(good == expected, std::to_string(good) + " lines have h0 = 1, h1 = 0");
  require(dim == 1, "lines dimension " + std::to_string(dim));
  return {{"lineCount", census.lines.size()}, {"h0OneH1Zero", good}, {"linesDim", dim}};
}

std::uint64_t scanCost() {
  const algebra::PrimeField f(kScanQ);
  std::uint64_t total = 0;
  for (auto kind : multlab::allKinds())
    for (const auto& d : kScanDegrees)
      total += multlab::hyperplaneCount(multlab::makeLayout(f, kind, d).targetTotal, kScanQ);
  return total;
}

json gateLemmaScans(const GateOptions& o) {
  json scans = json::array();
  std::vector<std::string> failing;
  std::uint64_t hyperplanes = 0;
  std::uint64_t remaining = o.budget;
  for (auto kind : multlab::allKinds()) {
    for (const auto& d : kScanDegrees) {
      const auto report = multlab::exhaustiveDichotomyScan(kind, d, kScanQ, remaining, o.threads);
      remaining -= report.totalHyperplanes;
      hyperplanes += report.totalHyperplanes;
      std::ostringstream label;
      label << multlab::kindInfo(kind).name << " (";
      for (std::size_t i = 0; i < d.size(); ++i) label << (i ? "," : "") << d[i];
      label << ")";
      if (report.counterexampleCount != 0)
        failing.push_back(label.str() + ": " + std::to_string(report.counterexampleCount));
      scans.push_back({{"scan", label.str()},
                       {"hyperplanes", report.totalHyperplanes},
                       {"counterexamples", report.counterexampleCount}});
    }
  }
  json detail{{"scans", scans}, {"hyperplanes", hyperplanes}};
  if (!failing.empty()) {
    std::string reason = "counterexamples in";
    for (const auto& f : failing) reason += " " + f + ";";
    reason.pop_back();
    throw CheckFailed{reason, detail};
  }
  return detail;
}

const std::vector<SmoothnessCell>& gridCells(const GateOptions& o, SuiteContext& ctx) {
  if (!ctx.grid) {
    const auto grid = smoothnessGrid();
    const std::uint64_t need = static_cast<std::uint64_t>(kSamplesPerCell) * grid.size();
    if (need > o.budget) throw BudgetExceeded("grid sampling needs " + std::to_string(need) + " samples");
    std::vector<SmoothnessCell> cells;
    for (const auto& entry : grid)
      cells.push_back(sampleSmoothness(kSamplingPrime, entry.type, entry.kind, o.seed, kSamplesPerCell, o.budget,
                                       o.threads));
    ctx.grid = std::move(cells);
  }
  return *ctx.grid;
}

std::string cellLabel(const SmoothnessCell& c) { return c.type.label() + " " + curveKindName(c.kind); }

json gateSmoothness(const GateOptions& o, SuiteContext& ctx) {
  const auto& cells = gridCells(o, ctx);
  std::vector<std::string> failing;
  std::map<std::string, int> perKind;
  std::uint32_t worst = kSamplesPerCell;
  for (const auto& c : cells) {
    ++perKind[curveKindName(c.kind)];
    worst = std::min(worst, c.h1Zero);
    if (!c.meetsThreshold()) failing.push_back(cellLabel(c) + " (" + std::to_string(c.h1Zero) + "/100)");
  }
  require(perKind.size() == 4, "grid does not cover lines and all three conic kinds");
  if (!failing.empty()) {
    std::string reason = "below 99/100 with h1 = 0:";
    for (const auto& f : failing) reason += " " + f;
    throw CheckFailed{reason};
  }
  return {{"cells", cells.size()}, {"cellsPerCurveKind", perKind}, {"minH1Zero", worst}};
}

json gateJacobian(const GateOptions& o, SuiteContext& ctx) {
  const auto& cells = gridCells(o, ctx);
  std::uint64_t compared = 0, agree = 0;
  std::vector<std::string> failing;
  for (const auto& c : cells) {
    compared += c.jacobianCompared;
    agree += c.jacobianAgree;
    if (c.jacobianAgree != c.jacobianCompared) failing.push_back(cellLabel(c));
  }
  require(failing.empty(), "Jacobian tangent dimension differs from h0 in " + std::to_string(failing.size()) +
                               " cells, first " + (failing.empty() ? "" : failing.front()));
  require(compared >= kMinJacobianPairs, "only " + std::to_string(compared) + " pairs smooth along the curve");
  return {{"pairsCompared", compared}, {"agree", agree}};
}

json gateEuler(const GateOptions& o, SuiteContext& ctx) {
  const auto& cells = gridCells(o, ctx);
  std::uint64_t pairs = 0;
  std::map<std::string, std::uint64_t> perKind;
  for (const auto& c : cells) {
    require(c.eulerHolds == c.samples, cellLabel(c) + ": h0 - h1 != expected dimension on " +
                                           std::to_string(c.samples - c.eulerHolds) + " samples");
    pairs += c.samples;
    perKind[curveKindName(c.kind)] += c.samples;
  }
  require(perKind.size() == 4, "grid does not cover lines and all three conic kinds");
  return {{"pairs", pairs}, {"pairsPerCurveKind", perKind}};
}

json gateObstruction(bool corrupt) {
  const algebra::PrimeField field(kSamplingPrime);
  const auto x = loadFixture(incidence::toJson(incidence::fermatHypersurface(field, 4, 5)), corrupt);
  const auto line =
      moduli::LineChartPoint::fromSpan(field, algebra::fromRows(field, {{1, -1, 0, 0, 0}, {0, 0, 1, -1, 0}}));
  const auto curve = incidence::CurveModel::fromLine(field, line);
  const auto coh = incidence::normalBundleCohomology(x, curve);
  require(coh.h0 >= 1 && coh.h1 >= 1,
          "h0 = " + std::to_string(coh.h0) + ", h1 = " + std::to_string(coh.h1) + " on the Fermat quintic line");
  return {{"h0", coh.h0}, {"h1", coh.h1}, {"expectedDim", coh.expectedDim}};
}

json gateConicCensus(const GateOptions& o, bool corrupt) {
  json perFixture = json::object();
  std::uint64_t budget = o.budget;
  for (const auto& fixture : embeddedFixtures()) {
    const auto x = loadFixture(json::parse(fixture.json), corrupt);
    const auto census = incidence::enumerateConicsOnX(x, budget, false);
    budget -= std::min(budget, census.planesScanned);
    std::size_t sound = 0;
    for (const auto& rec : census.conics) {
      const auto coeffs = incidence::restrictToConic(x, rec.conic);
      bool zero = true;
      for (const auto& form : coeffs)
        for (auto v : form) zero = zero && v == 0;
      if (zero) ++sound;
    }
    require(sound == census.conics.size(), std::string(fixture.name) + ": " +
                                               std::to_string(census.conics.size() - sound) +
                                               " emitted conics are not on X");
    if (std::string(fixture.name) == "quadric_surface_f3.json")
      require(census.conics.size() == 40, "quadric surface over F_3: " + std::to_string(census.conics.size()) +
                                              " conics, expected 40");
    perFixture[fixture.name] = {{"planesScanned", census.planesScanned},
                                {"conics", census.conics.size()},
                                {"containedPlanes", census.containedPlanes.size()}};
  }
  return perFixture;
}

json gateConicCount() {
  const auto detail = schubert::conicCountDetail({4, {5}});
  require(detail.pathsAgree, "pushforward paths disagree: " + detail.viaSegre.str() + " vs " +
                                 detail.viaRelation.str());
  require(detail.count == kConicsOnQuintic, "conics on the quintic: " + detail.count.str());
  return {{"count", detail.count.str()}, {"viaSegre", detail.viaSegre.str()},
          {"viaRelation", detail.viaRelation.str()}};
}

std::vector<json> determinismConfigs(const GateOptions& o) {
  const auto base = [&](json j) {
    j["budget"] = o.budget;
    j["threads"] = o.threads;
    j["seed"] = o.seed;
    return j;
  };
  return {
      base({{"command", "expected-dims"}, {"n", 4}, {"degrees", {5}}}),
      base({{"command", "lemma-scan"}, {"kind", "line-m"}, {"degrees", {3}}, {"q", 3}}),
      base({{"command", "enumerate-lines"}, {"n", 3}, {"degrees", {3}}, {"q", 7}, {"fermat", true}}),
      base({{"command", "enumerate-conics"}, {"n", 3}, {"degrees", {2}}, {"q", 3}}),
      base({{"command", "count-lines"}, {"n", 4}, {"degrees", {5}}}),
      base({{"command", "count-conics"}, {"n", 4}, {"degrees", {5}}}),
      base({{"command", "smoothness-sample"}, {"n", 4}, {"degrees", {2, 2}}, {"samples", 20}, {"curveKind", "all"}}),
      base({{"command", "analyze-curve"}, {"n", 4}, {"degrees", {3}}, {"curveKind", "line-pair"}}),
  };
}

json gateDeterminism(const GateOptions& o) {
  json runs = json::array();
  for (const auto& cfg : determinismConfigs(o)) {
    const auto first = runFromJson(cfg);
    const auto second = runFromJson(cfg);
    const auto a = renderReport(first.report);
    const auto b = renderReport(second.report);
    const std::string command = cfg.at("command").get<std::string>();
    if (first.exitCode == kExitBudget) throw BudgetExceeded(command + " refused by the budget");
    require(first.exitCode == kExitOk, command + " exited with " + std::to_string(first.exitCode));
    require(a == b, command + ": repeated runs differ");
    runs.push_back({{"command", command}, {"bytes", a.size()}});
  }
  // the thread count must not change the results
  auto cfg = determinismConfigs(o)[6];
  cfg["threads"] = 1;
  const auto single = runFromJson(cfg).report.at("results");
  cfg["threads"] = 3;
  const auto multi = runFromJson(cfg).report.at("results");
  require(single == multi, "smoothness-sample results depend on the thread count");
  return {{"runs", runs}, {"threadCountsCompared", {1, 3}}};
}

json runGateBody(int id, const GateOptions& o, SuiteContext& ctx) {
  const bool corrupt = o.injectFault && *o.injectFault == id;
  switch (id) {
    case 1: return gateFormulas();
    case 2: return gateCubicSurface(o, corrupt);
    case 3: return gateSchubertLines();
    case 4: return gateQuadricRulings(o, corrupt);
    case 5: return gateLemmaScans(o);
    case 6: return gateSmoothness(o, ctx);
    case 7: return gateObstruction(corrupt);
    case 8: return gateJacobian(o, ctx);
    case 9: return gateEuler(o, ctx);
    case 10: return gateConicCensus(o, corrupt);
    case 11: return gateConicCount();
    case 12: return gateDeterminism(o);
    default: break;
  }
  throw InvalidInput("unknown gate " + std::to_string(id));
}

GateResult runGateIn(int id, const GateOptions& o, SuiteContext& ctx) {
  const auto& table = gateTable();
  if (id < 1 || id > static_cast<int>(table.size())) throw InvalidInput("unknown gate " + std::to_string(id));
  GateResult r;
  r.id = id;
  r.name = table[id - 1].name;
  r.cost = gateCost(id);
  if (r.cost > o.budget) {
    r.status = GateStatus::Skipped;
    r.reason = "needs " + std::to_string(r.cost) + " work units, budget is " + std::to_string(o.budget);
    return r;
  }
  try {
    r.detail = runGateBody(id, o, ctx);
    r.status = GateStatus::Pass;
  } catch (const CheckFailed& f) {
    r.status = GateStatus::Fail;
    r.reason = f.reason;
    r.detail = f.detail;
  } catch (const BudgetExceeded& e) {
    r.status = GateStatus::Skipped;
    r.reason = e.what();
  } catch (const std::exception& e) {
    r.status = GateStatus::Fail;
    r.reason = std::string("error: ") + e.what();
  }
  return r;
}

}  // namespace

const char* gateStatusName(GateStatus status) {
  switch (status) {
    case GateStatus::Pass: return "pass";
    case GateStatus::Fail: return "fail";
    case GateStatus::Skipped: return "skipped";
  }
  return "?";
}

const std::vector<GateInfo>& gateTable() {
  static const std::vector<GateInfo> table{
      {1, "formula-gates", "expected dimensions, emptiness flags and the conic threshold warning"},
      {2, "cubic-surface-lines", "27 unobstructed lines on the Fermat cubic over F_7 and by Schubert calculus"},
      {3, "schubert-line-counts", "2875 lines on the quintic threefold, 16 on the (2,2) threefold"},
      {4, "quadric-rulings", "12 lines with h0 = 1, h1 = 0 on the split quadric over F_5"},
      {5, "lemma-dichotomy-scans", "no counterexample hyperplane for any kind, c <= 2, d_i in {2,3}, q = 3"},
      {6, "generic-smoothness", ">= 99 of 100 samples with h1 = 0 per in-range type and curve kind"},
      {7, "obstruction-detection", "h0 >= 1 and h1 >= 1 for [s:-s:t:-t:0] on the Fermat quintic"},
      {8, "jacobian-oracle", "Jacobian tangent dimension equals h0 on >= 300 pairs smooth along the curve"},
      {9, "euler-identity", "h0 - h1 equals the expected dimension on every sampled pair"},
      {10, "conic-census", "emitted conics lie on X; 40 conics on the quadric surface over F_3"},
      {11, "quintic-conics", "609250 conics on the quintic, both pushforward paths agreeing"},
      {12, "determinism", "repeated runs produce byte-identical reports"},
  };
  return table;
}

std::uint64_t gateCost(int id) {
  switch (id) {
    case 2: return moduli::lineCountOverFq(3, 7);
    case 4: return moduli::lineCountOverFq(3, 5);
    case 5: return scanCost();
    case 6:
    case 8:
    case 9: return static_cast<std::uint64_t>(kSamplesPerCell) * smoothnessGrid().size();
    case 10: return 2 * moduli::planeCountOverFq(3, 3) + moduli::planeCountOverFq(4, 3);
    case 12: return 2 * moduli::lineCountOverFq(3, 7) + 2 * 40 + 2 * 20 * 4;
    default: return 1;
  }
}

GateResult runGate(int id, const GateOptions& options) {
  SuiteContext ctx;
  return runGateIn(id, options, ctx);
}

SuiteResult verifySuite(std::vector<int> ids, const GateOptions& options) {
  if (options.injectFault &&
      std::find(kFixtureGates.begin(), kFixtureGates.end(), *options.injectFault) == kFixtureGates.end())
    throw InvalidInput("gate " + std::to_string(*options.injectFault) + " loads no fixture (2, 4, 7 or 10)");
  if (ids.empty())
    for (const auto& g : gateTable()) ids.push_back(g.id);
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());

  SuiteResult suite;
  SuiteContext ctx;
  bool skipped = false;
  for (int id : ids) {
    auto r = runGateIn(id, options, ctx);
    if (r.status == GateStatus::Fail) suite.failedGates.push_back(std::to_string(r.id) + " " + r.name);
    skipped = skipped || r.status == GateStatus::Skipped;
    suite.gates.push_back(std::move(r));
  }
  suite.exitCode = !suite.failedGates.empty() ? kExitFault : skipped ? kExitBudget : kExitOk;
  return suite;
}

json toJson(const GateResult& r) {
  json j{{"id", r.id}, {"name", r.name}, {"status", gateStatusName(r.status)}, {"cost", r.cost}, {"detail", r.detail}};
  if (!r.reason.empty()) j["reason"] = r.reason;
  return j;
}

}  // namespace cilab::runner
