#include "incidence/census.hpp"

#include <set>

#include "algebra/gcd.hpp"
#include "common/error.hpp"

namespace cilab::incidence {

LineCensus enumerateLinesOnX(const CompleteIntersection& x, std::uint64_t budget) {
  const auto& field = x.field();
  LineCensus census;
  moduli::forEachLine(field, x.n(), budget, [&](const LineChartPoint& line) {
    ++census.linesScanned;
    const auto curve = CurveModel::fromLine(field, line);
    for (const auto& f : x.forms())
      if (!curve.restrictToSpan(f).isZero()) return;
    LineRecord rec{line, normalBundleCohomology(x, curve)};
    census.allUnobstructed = census.allUnobstructed && rec.cohomology.h1 == 0;
    census.lines.push_back(std::move(rec));
  });
  return census;
}

namespace {

std::vector<MultiPoly> linearForms(const PrimeField& field) {
  std::vector<MultiPoly> out;
  const std::uint32_t q = field.modulus();
  for (int lead = 0; lead < 3; ++lead) {
    const int freeCount = 2 - lead;
    std::uint64_t total = 1;
    for (int i = 0; i < freeCount; ++i) total *= q;
    for (std::uint64_t idx = 0; idx < total; ++idx) {
      std::vector<Residue> c(3, 0);
      c[lead] = 1;
      std::uint64_t rest = idx;
      for (int i = 0; i < freeCount; ++i) {
        c[lead + 1 + i] = static_cast<Residue>(rest % q);
        rest /= q;
      }
      out.push_back(MultiPoly::linearForm(field, c));
    }
  }
  return out;
}

}  // namespace

ConicCensus enumerateConicsOnX(const CompleteIntersection& x, std::uint64_t budget, bool withCohomology) {
  const auto& field = x.field();
  const std::uint64_t q = field.modulus();
  const std::uint64_t planes = moduli::planeCountOverFq(x.n(), q);
  if (planes > budget) throw BudgetExceeded("conic census over " + std::to_string(planes) + " planes exceeds budget");
  std::uint64_t spent = planes;
  ConicCensus census;
  std::vector<MultiPoly> lines;
  std::vector<MultiPoly> quadrics;
  moduli::forEachPlane(field, x.n(), budget, [&](const ExactMatrix& plane, const std::vector<int>& piv) {
    ++census.planesScanned;
    std::vector<MultiPoly> restricted;
    for (const auto& f : x.forms()) {
      std::vector<MultiPoly> forms;
      for (int c = 0; c <= x.n(); ++c) {
        std::vector<Residue> col{plane(0, c), plane(1, c), plane(2, c)};
        forms.push_back(MultiPoly::linearForm(field, col));
      }
      restricted.push_back(f.substitute(forms));
    }
    const auto g = algebra::bivariateGcd(restricted);
    if (g.planeContained) {
      census.containedPlanes.push_back(plane);
      return;
    }
    const int deg = g.gcd.degree();
    if (deg < 2) return;
    std::set<moduli::QuadricCoeffs> found;
    if (deg == 2) {
      found.insert(moduli::normalizeQuadric(field, moduli::quadricCoeffs(g.gcd)));
    } else if (deg == 3) {
      if (lines.empty()) lines = linearForms(field);
      for (const auto& l : lines) {
        if (auto r = g.gcd.divideExact(l)) found.insert(moduli::normalizeQuadric(field, moduli::quadricCoeffs(*r)));
      }
    } else {
      if (quadrics.empty()) {
        moduli::forEachQuadric(field, [&](const moduli::QuadricCoeffs& qc) {
          quadrics.push_back(moduli::quadricForm(field, qc));
        });
      }
      spent += quadrics.size();
      if (spent > budget) throw BudgetExceeded("conic trial division exceeds budget");
      for (const auto& qf : quadrics)
        if (g.gcd.divideExact(qf)) found.insert(moduli::quadricCoeffs(qf));
    }
    for (const auto& qc : found) {
      ConicRecord rec;
      rec.conic.n = x.n();
      rec.conic.pivots = {piv[0], piv[1], piv[2]};
      rec.conic.plane = plane;
      rec.conic.quadric = qc;
      rec.kind = moduli::classifyConic(field, qc);
      if (withCohomology) rec.cohomology = normalBundleCohomology(x, CurveModel::fromConic(field, rec.conic));
      census.conics.push_back(std::move(rec));
    }
  });
  return census;
}

}  // namespace cilab::incidence
