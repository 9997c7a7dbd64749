#include <doctest.h>

#include <random>

#include "algebra/matrix.hpp"
#include "algebra/roots.hpp"
#include "common/error.hpp"
#include "incidence/census.hpp"
#include "incidence/fixture.hpp"
#include "incidence/normal.hpp"
#include "incidence/sample.hpp"

using namespace cilab;
using namespace cilab::incidence;
using algebra::ExtensionField;

namespace {

ExactMatrix rows(const PrimeField& f, std::vector<std::vector<std::int64_t>> r) {
  return algebra::fromRows(f, r);
}

LineChartPoint line(const PrimeField& f, std::vector<std::vector<std::int64_t>> r) {
  return LineChartPoint::fromSpan(f, rows(f, std::move(r)));
}

ConicChartPoint conic(const PrimeField& f, std::vector<std::vector<std::int64_t>> r, moduli::QuadricCoeffs q) {
  return ConicChartPoint::make(f, rows(f, std::move(r)), q);
}

bool allZero(const std::vector<std::vector<Residue>>& v) {
  for (const auto& row : v)
    for (auto c : row)
      if (c) return false;
  return true;
}

// Quadric plane section {x3 = 0} with L2 = vw.
ConicChartPoint quadricLinePairConic(const PrimeField& f) {
  return conic(f, {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}}, {0, 0, 0, 0, 1, 0});
}

// Points of C over F_{p^2} where the Jacobian of X has rank < c, from partial
// derivatives in the original coordinates.
int bruteForceDropCount(const CompleteIntersection& x, const CurveModel& curve) {
  const auto& ext = algebra::extensionField(x.field(), 2);
  const int vars = x.n() + 1;
  std::vector<std::vector<MultiPoly>> partials;
  for (const auto& f : x.forms()) {
    partials.emplace_back();
    for (int k = 0; k < vars; ++k) partials.back().push_back(f.partial(k));
  }
  MultiPoly quadric = curve.isConic() ? moduli::quadricForm(x.field(), curve.conicPoint().quadric)
                                      : MultiPoly(x.field(), 3);
  int drops = 0;
  auto check = [&](const std::vector<ExtensionField::Elem>& z) {
    if (curve.isConic() && !ext.isZero(quadric.evaluateIn(ext, std::span<const ExtensionField::Elem>(z)))) return;
    std::vector<ExtensionField::Elem> pt(vars, ext.zero());
    for (int col = 0; col < vars; ++col)
      for (std::size_t k = 0; k < z.size(); ++k)
        pt[col] = ext.add(pt[col], ext.mul(ext.embed(curve.span()(k, col)), z[k]));
    algebra::BasicMatrix<ExtensionField::Elem> j(partials.size(), vars, ext.zero());
    for (std::size_t i = 0; i < partials.size(); ++i)
      for (int k = 0; k < vars; ++k)
        j(i, k) = partials[i][k].evaluateIn(ext, std::span<const ExtensionField::Elem>(pt));
    if (algebra::rankOf(ext, j) < partials.size()) ++drops;
  };
  const std::uint64_t q = ext.order();
  if (!curve.isConic()) {
    check({ext.zero(), ext.one()});
    for (std::uint64_t i = 0; i < q; ++i) check({ext.one(), ext.fromIndex(i)});
  } else {
    check({ext.zero(), ext.zero(), ext.one()});
    for (std::uint64_t i = 0; i < q; ++i) check({ext.zero(), ext.one(), ext.fromIndex(i)});
    for (std::uint64_t i = 0; i < q; ++i)
      for (std::uint64_t k = 0; k < q; ++k) check({ext.one(), ext.fromIndex(i), ext.fromIndex(k)});
  }
  return drops;
}

int witnessesUpTo2(const RankReport& r) {
  int n = 0;
  for (const auto& w : r.witnesses) n += w.extensionDegree <= 2;
  return n;
}

}  // namespace

TEST_CASE("expected dimensions and range flags") {
  auto d = expectedDims({3, {3}});
  CHECK(d.linesDim == 0);
  CHECK_FALSE(d.linesEmptyForGeneral);

  d = expectedDims({4, {5}});
  CHECK(d.linesDim == 0);
  CHECK(d.conicsDim == 0);
  CHECK(d.thresholdConicEmptyFlag);
  CHECK_FALSE(d.consistencyConicEmptyFlag);
  CHECK(d.conicThresholdDisagreement);
  CHECK_FALSE(d.warnings.empty());

  d = expectedDims({3, {2}});
  CHECK(d.linesDim == 1);
  CHECK(d.conicsDim == 3);
  CHECK(d.conicsSmoothInRange);
  CHECK_FALSE(d.conicThresholdDisagreement);

  // lines empty for general X exactly when the dimension is negative
  for (int n = 2; n <= 7; ++n)
    for (int a = 2; a <= 6; ++a)
      for (int b = 0; b <= 6; b = b ? b + 1 : 2) {
        CIType t{n, b ? std::vector<int>{a, b} : std::vector<int>{a}};
        if (t.c() > n) continue;
        const auto e = expectedDims(t);
        CHECK(e.linesEmptyForGeneral == (e.linesDim < 0));
        CHECK(e.consistencyConicEmptyFlag == (e.conicsDim < 0));
        CHECK(e.conicThresholdDisagreement == (e.thresholdConicEmptyFlag != e.consistencyConicEmptyFlag));
        CHECK(e.conicThresholdDisagreement == (2 * t.degreeSum() + t.c() == 3 * n - 1));
      }

  CHECK_THROWS_AS(CIType({1, {2}}).validate(), InvalidInput);
  CHECK_THROWS_AS(CIType({3, {1}}).validate(), InvalidInput);
  CHECK_THROWS_AS(CIType({3, {}}).validate(), InvalidInput);
  CHECK(CIType({4, {2, 2}}).label() == "n=4 d=(2,2)");
}

TEST_CASE("restriction to lines") {
  PrimeField f7(7);
  const auto cubic = fermatHypersurface(f7, 3, 3);
  auto r = restrictToLine(cubic, line(f7, {{1, -1, 0, 0}, {0, 0, 1, -1}}));
  REQUIRE(r.size() == 1);
  CHECK(r[0].size() == 4);
  CHECK(allZero(r));

  r = restrictToLine(cubic, line(f7, {{1, 0, 0, 0}, {0, 1, 0, 0}}));
  CHECK_FALSE(allZero(r));
  // s^3 + t^3 on x0, x1: coefficients by t-exponent
  CHECK(r[0] == std::vector<Residue>{1, 0, 0, 1});

  PrimeField f5(5);
  const auto quadric = splitQuadricSurface(f5);
  r = restrictToLine(quadric, line(f5, {{0, 0, 1, 0}, {0, 0, 0, 1}}));
  CHECK(r[0].size() == 3);
  CHECK(allZero(r));

  // brute-force point check when sum d_i < q
  std::mt19937_64 rng(7);
  PrimeField f11(11);
  for (int trial = 0; trial < 40; ++trial) {
    const auto l = randomLine(f11, 3, rng);
    const auto x = trial % 2 ? sampleThroughCurve({3, {3}}, CurveModel::fromLine(f11, l), trial)
                             : CompleteIntersection({3, {3}}, {algebra::randomForm(f11, 4, 3, rng)});
    bool allPoints = true;
    for (std::int64_t s = 0; s <= 11 && allPoints; ++s) {
      std::vector<Residue> pt(4);
      const Residue a = s == 11 ? 0 : 1, b = s == 11 ? 1 : static_cast<Residue>(s);
      for (int col = 0; col < 4; ++col) pt[col] = f11.add(f11.mul(a, l.rows(0, col)), f11.mul(b, l.rows(1, col)));
      allPoints = x.forms()[0].evaluate(pt) == 0;
    }
    CHECK(allZero(restrictToLine(x, l)) == allPoints);
    CHECK(allPoints == (trial % 2 == 1 || allZero(restrictToLine(x, l))));
  }
}

TEST_CASE("restriction to conics") {
  PrimeField f5(5);
  const auto quadric = splitQuadricSurface(f5);
  const auto pair = quadricLinePairConic(f5);
  auto r = restrictToConic(quadric, pair);
  REQUIRE(r.size() == 1);
  CHECK(r[0].size() == 5);
  CHECK(allZero(r));

  const auto smooth = conic(f5, {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}}, {0, 0, 1, f5.fromInt(-1), 0, 0});
  CHECK(moduli::classifyConic(f5, smooth.quadric) == ConicKind::SmoothConic);
  CHECK_FALSE(allZero(restrictToConic(quadric, smooth)));

  // the double line {x3 = 0, x1^2 = 0} is not on X although its support is
  const auto dbl = conic(f5, {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}}, {0, 0, 0, 1, 0, 0});
  CHECK_FALSE(allZero(restrictToConic(quadric, dbl)));
  // ... while x3^2 - x1^2 x? : the cone x1^2 - x0 x3 contains {x3 = x1^2 = 0}
  const CompleteIntersection cone({3, {2}}, {MultiPoly::fromExponents(f5, 4, {{1, {0, 2, 0, 0}}, {-1, {1, 0, 0, 1}}})});
  CHECK(allZero(restrictToConic(cone, dbl)));
}

TEST_CASE("decomposition along curves") {
  PrimeField f5(5);
  const auto quadric = splitQuadricSurface(f5);
  const auto pairCurve = CurveModel::fromConic(f5, quadricLinePairConic(f5));
  auto dec = decomposeAlongCurve(quadric, pairCurve);
  REQUIRE(dec.columns() == 2);
  // adapted variables: y0 = x3, then (u, v, w) = (x0, x1, x2)
  CHECK(dec.cofactors[0][0] == MultiPoly::variable(f5, 4, 1));
  CHECK(dec.cofactors[0][1] == MultiPoly::constant(f5, 4, f5.fromInt(-1)));

  const auto lineCurve = CurveModel::fromLine(f5, line(f5, {{0, 0, 1, 0}, {0, 0, 0, 1}}));
  dec = decomposeAlongCurve(quadric, lineCurve);
  // adapted variables: y0 = x0, y1 = x1, (s, t) = (x2, x3)
  CHECK(dec.cofactors[0][0] == MultiPoly::variable(f5, 4, 3));
  CHECK(dec.cofactors[0][1] == -MultiPoly::variable(f5, 4, 2));

  PrimeField f7(7);
  const auto cubic = fermatHypersurface(f7, 3, 3);
  const auto fermatLine = CurveModel::fromLine(f7, line(f7, {{1, -1, 0, 0}, {0, 0, 1, -1}}));
  dec = decomposeAlongCurve(cubic, fermatLine);
  CHECK(dec.reassemble(0) == fermatLine.toAdapted(cubic.forms()[0]));
  CHECK(dec.cofactors[0][0].degree() == 2);

  CHECK_THROWS_AS(decomposeAlongCurve(cubic, CurveModel::fromLine(f7, line(f7, {{1, 0, 0, 0}, {0, 1, 0, 0}}))),
                  DomainError);
}

TEST_CASE("decomposition identity and order independence on random samples") {
  PrimeField f(101);
  std::mt19937_64 rng(11);
  const std::vector<CIType> types{{3, {3}}, {4, {2, 2}}, {5, {2, 3}}, {4, {4}}};
  for (int trial = 0; trial < 32; ++trial) {
    const auto& t = types[trial % types.size()];
    const int kind = trial % 4;
    const auto curve = kind == 0 ? CurveModel::fromLine(f, randomLine(f, t.n, rng))
                                 : CurveModel::fromConic(f, randomConic(f, t.n, static_cast<ConicKind>(kind - 1), rng));
    const auto x = sampleThroughCurve(t, curve, 1000 + trial);
    CHECK(allZero(restrictToCurve(x, curve)));
    std::vector<int> order(curve.normalCount());
    for (int j = 0; j < curve.normalCount(); ++j) order[j] = curve.normalCount() - 1 - j;
    const auto a = decomposeAlongCurve(x, curve);
    const auto b = decomposeAlongCurve(x, curve, order);
    for (std::size_t i = 0; i < x.forms().size(); ++i) {
      CHECK(a.reassemble(i) == curve.toAdapted(x.forms()[i]));
      CHECK(b.reassemble(i) == curve.toAdapted(x.forms()[i]));
      for (int j = 0; j < a.columns(); ++j) {
        const int deg = t.degrees[i] - (j < curve.normalCount() ? 1 : 2);
        CHECK(a.cofactors[i][j].degree() <= deg);
        const auto ra = a.restrictedCofactor(i, j), rb = b.restrictedCofactor(i, j);
        if (curve.isConic()) {
          const auto& fr = curve.frame();
          CHECK(fr.normalForm(fr.toFrame(ra), deg) == fr.normalForm(fr.toFrame(rb), deg));
        } else {
          CHECK(ra == rb);
        }
      }
    }
  }
}

TEST_CASE("sampling through curves") {
  PrimeField f(101);
  std::mt19937_64 rng(3);
  const auto l = CurveModel::fromLine(f, randomLine(f, 3, rng));
  const auto x1 = sampleThroughCurve({3, {3}}, l, 1);
  const auto x1again = sampleThroughCurve({3, {3}}, l, 1);
  const auto x2 = sampleThroughCurve({3, {3}}, l, 2);
  CHECK(allZero(restrictToLine(x1, l.linePoint())));
  CHECK(x1.forms() == x1again.forms());
  CHECK_FALSE(x1.forms() == x2.forms());

  const auto dbl = CurveModel::fromConic(f, randomConic(f, 5, ConicKind::DoubleLine, rng));
  CHECK(dbl.kind() == ConicKind::DoubleLine);
  const auto x = sampleThroughCurve({5, {2, 2}}, dbl, 9);
  CHECK(allZero(restrictToConic(x, dbl.conicPoint())));

  for (auto k : {ConicKind::SmoothConic, ConicKind::LinePair, ConicKind::DoubleLine})
    CHECK(moduli::classifyConic(f, randomConic(f, 4, k, rng).quadric) == k);
  CHECK_THROWS_AS(sampleThroughCurve({4, {3}}, l, 1), InvalidInput);
}

TEST_CASE("normal bundle cohomology examples") {
  PrimeField f5(5);
  const auto quadric = splitQuadricSurface(f5);
  const auto l = CurveModel::fromLine(f5, line(f5, {{0, 0, 1, 0}, {0, 0, 0, 1}}));
  auto h = normalBundleCohomology(quadric, l);
  CHECK(h.h0 == 1);
  CHECK(h.h1 == 0);
  CHECK(h.expectedDim == 1);
  CHECK(h.reliable);
  CHECK(h.rank.minRank == 1);
  CHECK(h.rank.witnesses.empty());
  CHECK(jacobianTangentDim(quadric, l) == 1);
  const auto map = sectionMap(decomposeAlongCurve(quadric, l));
  CHECK(map.source == 4);
  CHECK(map.target == 3);
  CHECK(map.rank == 3);

  const auto pair = CurveModel::fromConic(f5, quadricLinePairConic(f5));
  h = normalBundleCohomology(quadric, pair);
  CHECK(h.h0 == 3);
  CHECK(h.h1 == 0);
  CHECK(h.reliable);
  CHECK(jacobianTangentDim(quadric, pair) == 3);
  const auto pmap = sectionMap(decomposeAlongCurve(quadric, pair));
  CHECK(pmap.source == 8);
  CHECK(pmap.target == 5);

  PrimeField f11(11);
  const auto quintic = fermatHypersurface(f11, 4, 5);
  const auto ql = CurveModel::fromLine(f11, line(f11, {{1, -1, 0, 0, 0}, {0, 0, 1, -1, 0}}));
  REQUIRE(containsCurve(quintic, ql));
  h = normalBundleCohomology(quintic, ql);
  CHECK(h.expectedDim == 0);
  CHECK(h.h0 >= 1);
  CHECK(h.h1 >= 1);
  CHECK(h.h0 - h.h1 == 0);
  CHECK(jacobianTangentDim(quintic, ql) >= 1);
  CHECK(jacobianTangentDim(quintic, ql) == h.h0);

  PrimeField f7(7);
  const auto cubic = fermatHypersurface(f7, 3, 3);
  h = normalBundleCohomology(cubic, CurveModel::fromLine(f7, line(f7, {{1, -1, 0, 0}, {0, 0, 1, -1}})));
  CHECK(h.h0 == 0);
  CHECK(h.h1 == 0);

  CHECK_THROWS_AS(normalBundleCohomology(cubic, CurveModel::fromLine(f7, line(f7, {{1, 0, 0, 0}, {0, 1, 0, 0}}))),
                  DomainError);
}

TEST_CASE("rank drop at a constructed point") {
  PrimeField f7(7);
  // f = x2 (x1^2 + x0 x2) + x3 (x0 x1 + x3^2): both cofactors vanish at [1:0:0:0]
  const CompleteIntersection x({3, {3}}, {MultiPoly::fromExponents(f7, 4, {{1, {0, 2, 1, 0}},
                                                                       {1, {1, 0, 2, 0}},
                                                                       {1, {1, 1, 0, 1}},
                                                                       {1, {0, 0, 0, 3}}})});
  const auto l = CurveModel::fromLine(f7, line(f7, {{1, 0, 0, 0}, {0, 1, 0, 0}}));
  const auto h = normalBundleCohomology(x, l);
  CHECK_FALSE(h.reliable);
  CHECK(h.rank.minRank == 0);
  REQUIRE(h.rank.witnesses.size() == 1);
  CHECK(h.rank.witnesses[0].coordinates == std::vector<std::string>{"1", "0", "0", "0"});
  CHECK(h.rank.witnesses[0].extensionDegree == 1);
  CHECK(h.rank.witnessesComplete);
}

TEST_CASE("rank along curves agrees with a brute-force Jacobian scan") {
  for (std::uint32_t p : {3u, 5u}) {
    PrimeField f(p);
    std::mt19937_64 rng(p);
    int drops = 0;
    for (int trial = 0; trial < 24; ++trial) {
      const bool isConic = trial % 2;
      const CIType t = trial % 3 == 0 ? CIType{4, {2, 2}} : CIType{3, {3}};
      const auto curve = isConic ? CurveModel::fromConic(f, randomConic(f, t.n, ConicKind::SmoothConic, rng))
                                 : CurveModel::fromLine(f, randomLine(f, t.n, rng));
      const auto x = sampleThroughCurve(t, curve, 50 + trial);
      const auto report = rankAlongCurve(x, decomposeAlongCurve(x, curve));
      const int brute = bruteForceDropCount(x, curve);
      CHECK(witnessesUpTo2(report) == brute);
      if (brute > 0) CHECK_FALSE(report.smoothAlongCurve);
      if (report.smoothAlongCurve) CHECK(report.minRank == t.c());
      drops += brute > 0;
    }
    CHECK(drops > 0);
  }
}

TEST_CASE("Euler identity and Jacobian oracle on random samples") {
  PrimeField f(32003);
  std::mt19937_64 rng(5);
  const std::vector<CIType> types{{3, {3}}, {4, {2, 2}}, {4, {3}}, {5, {2, 3}}, {3, {2}}, {4, {4}}};
  int agreements = 0;
  for (int trial = 0; trial < 48; ++trial) {
    const auto& t = types[trial % types.size()];
    const int kind = (trial / static_cast<int>(types.size())) % 4;
    const auto curve = kind == 0 ? CurveModel::fromLine(f, randomLine(f, t.n, rng))
                                 : CurveModel::fromConic(f, randomConic(f, t.n, static_cast<ConicKind>(kind - 1), rng));
    const auto x = sampleThroughCurve(t, curve, trial);
    const auto h = normalBundleCohomology(x, curve);
    CHECK(h.h0 - h.h1 == h.expectedDim);
    if (h.rank.minRank == t.c()) {
      CHECK(jacobianTangentDim(x, curve) == h.h0);
      ++agreements;
    }
  }
  CHECK(agreements >= 40);
}

TEST_CASE("line census") {
  PrimeField f7(7);
  const auto cubic = fermatHypersurface(f7, 3, 3);
  auto census = enumerateLinesOnX(cubic, 1'000'000);
  CHECK(census.linesScanned == 2850);
  CHECK(census.lines.size() == 27);
  for (const auto& rec : census.lines) {
    CHECK(rec.cohomology.h0 == 0);
    CHECK(rec.cohomology.h1 == 0);
  }
  CHECK(census.allUnobstructed);

  PrimeField f5(5);
  census = enumerateLinesOnX(splitQuadricSurface(f5), 1'000'000);
  CHECK(census.lines.size() == 12);
  for (const auto& rec : census.lines) {
    CHECK(rec.cohomology.h0 == 1);
    CHECK(rec.cohomology.h1 == 0);
  }
  CHECK_THROWS_AS(enumerateLinesOnX(cubic, 100), BudgetExceeded);

  std::mt19937_64 rng(1);
  for (int seed = 0; seed < 3; ++seed) {
    const CompleteIntersection generic({3, {3}}, {algebra::randomForm(f7, 4, 3, rng)});
    const auto c = enumerateLinesOnX(generic, 1'000'000);
    CHECK(c.lines.size() <= 27);
  }
}

TEST_CASE("conic census") {
  PrimeField f3(3);
  auto census = enumerateConicsOnX(splitQuadricSurface(f3), 1'000'000);
  CHECK(census.planesScanned == 40);
  CHECK(census.conics.size() == 40);
  CHECK(census.containedPlanes.empty());
  for (const auto& rec : census.conics) {
    CHECK(allZero(restrictToConic(splitQuadricSurface(f3), rec.conic)));
    CHECK(rec.cohomology.h0 == 3);
    CHECK(rec.cohomology.h1 == 0);
  }

  // a plane inside X is flagged and skipped
  const CompleteIntersection planePair({3, {2}}, {MultiPoly::fromExponents(f3, 4, {{1, {1, 0, 0, 1}}})});
  census = enumerateConicsOnX(planePair, 1'000'000, false);
  CHECK(census.containedPlanes.size() == 2);
  for (const auto& rec : census.conics) CHECK(allZero(restrictToConic(planePair, rec.conic)));

  PrimeField f7(7);
  const auto cubic = fermatHypersurface(f7, 3, 3);
  census = enumerateConicsOnX(cubic, 1'000'000, false);
  CHECK_FALSE(census.conics.empty());
  for (const auto& rec : census.conics) CHECK(allZero(restrictToConic(cubic, rec.conic)));
  CHECK_THROWS_AS(enumerateConicsOnX(cubic, 100), BudgetExceeded);
}

TEST_CASE("fixtures round-trip and census soundness") {
  const std::string dir = CILAB_FIXTURE_DIR;
  int total = 0;
  for (const char* name : {"quadric_surface_f3.json", "intersection_22_p4_f3.json", "cubic_surface_f3.json"}) {
    const auto x = loadCiFixture(dir + "/" + name);
    CHECK(x.field().modulus() == 3);
    const auto again = ciFromJson(toJson(x));
    CHECK(again.forms() == x.forms());
    CHECK(again.type() == x.type());
    const auto census = enumerateConicsOnX(x, 10'000'000);
    for (const auto& rec : census.conics) {
      CHECK(allZero(restrictToConic(x, rec.conic)));
      CHECK(rec.cohomology.h0 - rec.cohomology.h1 == rec.cohomology.expectedDim);
    }
    total += static_cast<int>(census.conics.size());
    if (std::string(name) == "quadric_surface_f3.json") CHECK(census.conics.size() == 40);
    if (std::string(name) == "intersection_22_p4_f3.json") CHECK(census.planesScanned == 1210);
  }
  CHECK(total > 40);

  PrimeField f(7);
  std::mt19937_64 rng(2);
  for (auto k : {ConicKind::SmoothConic, ConicKind::LinePair, ConicKind::DoubleLine}) {
    const auto c = CurveModel::fromConic(f, randomConic(f, 4, k, rng));
    const auto back = curveFromJson(f, toJson(c));
    CHECK(back.span() == c.span());
    CHECK(back.conicPoint().quadric == c.conicPoint().quadric);
  }
  const auto l = CurveModel::fromLine(f, randomLine(f, 4, rng));
  CHECK(curveFromJson(f, toJson(l)).span() == l.span());

  auto bad = toJson(fermatHypersurface(f, 3, 3));
  bad["conventions"] = "other";
  CHECK_THROWS_AS(ciFromJson(bad), InvalidInput);
  CHECK_THROWS_AS(ciFromJson(nlohmann::json{{"field", 7}}), InvalidInput);
  CHECK_THROWS_AS(loadCiFixture(dir + "/missing.json"), InvalidInput);
}
