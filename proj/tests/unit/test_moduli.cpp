#include <random>
#include <set>

#include "algebra/poly.hpp"
#include "common/error.hpp"
#include "doctest.h"
#include "moduli/charts.hpp"
#include "moduli/conic.hpp"

using namespace cilab;
using namespace cilab::algebra;
using namespace cilab::moduli;

namespace {

QuadricCoeffs quad(const PrimeField& f, std::array<std::int64_t, 6> c) {
  QuadricCoeffs q{};
  for (int i = 0; i < 6; ++i) q[i] = f.fromInt(c[i]);
  return q;
}

// uw - v^2, vw, u^2
const std::array<std::int64_t, 6> kSmooth{0, 0, 1, -1, 0, 0};
const std::array<std::int64_t, 6> kPair{0, 0, 0, 0, 1, 0};
const std::array<std::int64_t, 6> kDouble{1, 0, 0, 0, 0, 0};

QuadricCoeffs randomQuadricOfKind(const PrimeField& f, ConicKind kind, std::mt19937_64& rng) {
  for (;;) {
    QuadricCoeffs q{};
    for (auto& c : q) c = rng() % f.modulus();
    bool zero = true;
    for (auto c : q) zero = zero && c == 0;
    if (zero) continue;
    if (kind == ConicKind::SmoothConic && classifyConic(f, q) == kind) return q;
    if (kind == ConicKind::LinePair) {
      // product of two random distinct lines
      std::vector<Residue> a(3), b(3);
      for (auto& c : a) c = rng() % f.modulus();
      for (auto& c : b) c = rng() % f.modulus();
      const auto prod = MultiPoly::linearForm(f, a) * MultiPoly::linearForm(f, b);
      if (prod.isZero()) continue;
      const auto qc = quadricCoeffs(prod);
      if (classifyConic(f, qc) == kind) return qc;
    }
    if (kind == ConicKind::DoubleLine) {
      std::vector<Residue> a(3);
      for (auto& c : a) c = rng() % f.modulus();
      const auto l = MultiPoly::linearForm(f, a);
      if (l.isZero()) continue;
      return quadricCoeffs(l * l.scaled(1 + rng() % (f.modulus() - 1)));
    }
  }
}

}  // namespace

TEST_CASE("classifyConic") {
  PrimeField f(7);
  CHECK(classifyConic(f, quad(f, kSmooth)) == ConicKind::SmoothConic);
  CHECK(classifyConic(f, quad(f, kPair)) == ConicKind::LinePair);
  CHECK(classifyConic(f, quad(f, kDouble)) == ConicKind::DoubleLine);
  CHECK_THROWS_AS(classifyConic(f, QuadricCoeffs{}), InvalidInput);
  CHECK(std::string(conicKindName(ConicKind::LinePair)) == "line-pair");
}

TEST_CASE("classifyConic is invariant under coordinate changes") {
  PrimeField f(11);
  std::mt19937_64 rng(23);
  for (auto kind : {ConicKind::SmoothConic, ConicKind::LinePair, ConicKind::DoubleLine}) {
    for (int trial = 0; trial < 30; ++trial) {
      const auto q = randomQuadricOfKind(f, kind, rng);
      REQUIRE(classifyConic(f, q) == kind);
      ExactMatrix g(3, 3);
      do {
        for (std::size_t i = 0; i < 3; ++i)
          for (std::size_t j = 0; j < 3; ++j) g(i, j) = rng() % 11;
      } while (rank(f, g) < 3);
      std::vector<MultiPoly> forms;
      for (std::size_t r = 0; r < 3; ++r) forms.push_back(MultiPoly::linearForm(f, g.row(r)));
      const auto moved = quadricForm(f, q).substitute(forms);
      CHECK(classifyConic(f, quadricCoeffs(moved)) == kind);
    }
  }
}

TEST_CASE("quadric normalization") {
  PrimeField f(7);
  const auto q = normalizeQuadric(f, quad(f, {0, 3, 1, 0, 0, 2}));
  CHECK(q[0] == 0);
  CHECK(q[1] == 1);
  CHECK(q[2] == f.div(1, 3));
  CHECK_THROWS_AS(normalizeQuadric(f, QuadricCoeffs{}), InvalidInput);
}

TEST_CASE("section basis sizes") {
  PrimeField f(7);
  const auto b1 = sectionBasis(f, quad(f, kSmooth), 1);
  REQUIRE(b1.monomials.size() == 3);
  CHECK(sectionBasisMonomials(2).size() == 5);
  CHECK(sectionBasisMonomials(3).size() == 7);
  for (int d = 1; d <= 6; ++d) {
    for (const auto& k : {kSmooth, kPair, kDouble}) {
      CHECK(sectionBasis(f, quad(f, k), d).monomials.size() == static_cast<std::size_t>(2 * d + 1));
    }
  }
}

TEST_CASE("normal forms: reduction is modulo the quadric and has rank 2d+1") {
  PrimeField f(13);
  std::mt19937_64 rng(29);
  for (auto kind : {ConicKind::SmoothConic, ConicKind::LinePair, ConicKind::DoubleLine}) {
    for (int trial = 0; trial < 6; ++trial) {
      const auto q = randomQuadricOfKind(f, kind, rng);
      const ConicFrame frame(f, q);
      CHECK(frame.frameQuadric().coefficient(Monomial::variable(2, 2)) != 0);
      CHECK(frame.fromFrame(frame.toFrame(quadricForm(f, q))) == quadricForm(f, q));
      const auto fq = frame.frameQuadric();
      for (int d = 1; d <= 4; ++d) {
        const auto forms = monomialsOfDegree(3, d);
        ExactMatrix nf(2 * d + 1, forms.size());
        for (std::size_t col = 0; col < forms.size(); ++col) {
          const auto m = MultiPoly::monomial(f, 3, forms[col], 1);
          const auto red = frame.reduce(m);
          for (const auto& [mono, c] : red.terms()) CHECK(mono.exponent(2) <= 1);
          if (d >= 2) CHECK((m - red).divideExact(fq).has_value());
          const auto v = frame.normalForm(m, d);
          for (std::size_t r = 0; r < v.size(); ++r) nf(r, col) = v[r];
        }
        CHECK(rank(f, nf) == static_cast<std::size_t>(2 * d + 1));
      }
      const auto nq = frame.normalForm(fq, 2);
      CHECK(std::all_of(nq.begin(), nq.end(), [](Residue c) { return c == 0; }));
    }
  }
}

TEST_CASE("line pair: glued description") {
  PrimeField f(7);
  for (int d = 1; d <= 4; ++d) {
    const auto m = gluedPairBasis(f, quad(f, kPair), d);
    CHECK(m.gluedDimension == 2 * d + 1);
    CHECK(m.rank == static_cast<std::size_t>(2 * d + 1));
    CHECK(m.nodeValuesAgree);
    CHECK(m.extensionDegree == 1);
  }
  // u^2 - 3 v^2 over F_7: 3 is a non-residue, the lines are conjugate
  const auto conj = gluedPairBasis(f, quad(f, {1, 0, 0, -3, 0, 0}), 2);
  CHECK(conj.extensionDegree == 2);
  CHECK(conj.rank == 5);
  CHECK(conj.nodeValuesAgree);
  CHECK_THROWS_AS(gluedPairBasis(f, quad(f, kSmooth), 1), InvalidInput);
}

TEST_CASE("line pair glued description on random pairs") {
  PrimeField f(11);
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    const auto q = randomQuadricOfKind(f, ConicKind::LinePair, rng);
    const auto m = gluedPairBasis(f, q, 1 + trial % 4);
    CHECK(m.rank == static_cast<std::size_t>(m.gluedDimension));
    CHECK(m.nodeValuesAgree);
  }
}

TEST_CASE("double line: s1 + t s2 description") {
  PrimeField f(7);
  CHECK_THROWS_AS(dualNumberBasis(f, quad(f, kPair), 1), InvalidInput);
  for (int d = 1; d <= 4; ++d) {
    const auto m = dualNumberBasis(f, quad(f, kDouble), d);
    CHECK(m.coordinates.rows() == static_cast<std::size_t>((d + 1) + d));
    CHECK(m.rank == static_cast<std::size_t>(2 * d + 1));
  }
}

TEST_CASE("double line multiplication rule") {
  PrimeField f(13);
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 12; ++trial) {
    const auto q = randomQuadricOfKind(f, ConicKind::DoubleLine, rng);
    const int a = 1 + trial % 3, b = 1 + (trial / 3) % 3;
    const ConicFrame frame(f, q);
    const auto ma = dualNumberBasis(f, q, a);
    const auto mb = dualNumberBasis(f, q, b);
    const auto mab = dualNumberBasis(f, q, a + b);
    const auto A = randomForm(f, 3, a, rng);
    const auto B = randomForm(f, 3, b, rng);
    const auto ca = dualNumberCoordinates(frame, ma, A, a);
    const auto cb = dualNumberCoordinates(frame, mb, B, b);
    const auto cab = dualNumberCoordinates(frame, mab, A * B, a + b);
    // s1 s1' and s2 s1' + s1 s2' as binary forms indexed by z-exponent
    std::vector<Residue> expect(2 * (a + b) + 1, 0);
    auto s1 = [](const std::vector<Residue>& c, int d, int j) { return c[j]; };
    auto s2 = [](const std::vector<Residue>& c, int d, int j) { return c[d + 1 + j]; };
    for (int i = 0; i <= a; ++i)
      for (int j = 0; j <= b; ++j) expect[i + j] = f.add(expect[i + j], f.mul(s1(ca, a, i), s1(cb, b, j)));
    for (int i = 0; i < a; ++i)
      for (int j = 0; j <= b; ++j)
        expect[a + b + 1 + i + j] = f.add(expect[a + b + 1 + i + j], f.mul(s2(ca, a, i), s1(cb, b, j)));
    for (int i = 0; i <= a; ++i)
      for (int j = 0; j < b; ++j)
        expect[a + b + 1 + i + j] = f.add(expect[a + b + 1 + i + j], f.mul(s1(ca, a, i), s2(cb, b, j)));
    CHECK(cab == expect);
  }
}

TEST_CASE("chart points") {
  PrimeField f(7);
  const auto l = LineChartPoint::fromSpan(f, fromRows(f, {{2, 4, 0, 2}, {0, 0, 1, 1}}));
  CHECK(l.pivots == std::array<int, 2>{0, 2});
  CHECK(l.rows(0, 1) == 2);
  CHECK(l.chartDimension() == 4);
  CHECK(l.chartCoordinates().size() == 4);
  CHECK_THROWS_AS(LineChartPoint::fromSpan(f, fromRows(f, {{1, 1, 1}, {2, 2, 2}})), DomainError);
  const auto c = ConicChartPoint::make(f, fromRows(f, {{1, 0, 0, 0, 3}, {0, 1, 0, 0, 0}, {0, 0, 0, 1, 2}}),
                                       quad(f, {0, 2, 0, 0, 0, 0}));
  CHECK(c.chartDimension() == 3 * 4 - 1);
  CHECK(c.planeChartCoordinates().size() == 6);
  CHECK(c.quadric[1] == 1);
}

TEST_CASE("enumeration counts") {
  PrimeField f7(7), f3(3), f2(2, true);
  CHECK(lineCountOverFq(3, 7) == 2850);
  CHECK(lineCountOverFq(2, 2) == 7);
  CHECK(planeCountOverFq(3, 3) == 40);
  CHECK(quadricCountOverFq(3) == 364);

  std::uint64_t count = 0;
  std::set<std::vector<Residue>> seen;
  forEachLine(f7, 3, 1'000'000, [&](const LineChartPoint& l) {
    ++count;
    std::vector<Residue> key;
    for (std::size_t r = 0; r < 2; ++r)
      for (std::size_t j = 0; j < 4; ++j) key.push_back(l.rows(r, j));
    seen.insert(key);
  });
  CHECK(count == 2850);
  CHECK(seen.size() == 2850);

  count = 0;
  forEachLine(f2, 2, 100, [&](const LineChartPoint&) { ++count; });
  CHECK(count == 7);

  count = 0;
  forEachConic(f3, 3, 1'000'000, [&](const ConicChartPoint&) { ++count; });
  CHECK(count == 40 * 364);

  CHECK_THROWS_AS(forEachLine(f7, 3, 100, [](const LineChartPoint&) {}), BudgetExceeded);
}

TEST_CASE("enumeration matches Gaussian binomials for small q and n") {
  for (std::uint32_t q : {2u, 3u}) {
    PrimeField f(q, true);
    for (int n = 2; n <= 4; ++n) {
      for (int k = 1; k <= 3 && k <= n; ++k) {
        std::uint64_t count = 0;
        std::set<std::vector<Residue>> seen;
        forEachSubspace(f, n, k, 10'000'000, [&](const ExactMatrix& m, const std::vector<int>&) {
          ++count;
          std::vector<Residue> key;
          for (std::size_t r = 0; r < m.rows(); ++r)
            for (std::size_t j = 0; j < m.cols(); ++j) key.push_back(m(r, j));
          seen.insert(key);
          // the emitted matrix is its own RREF
          CHECK(rrefBasis(f, m).first == m);
        });
        CHECK(count == gaussianBinomial(n + 1, k, q));
        CHECK(seen.size() == count);
      }
    }
  }
}
