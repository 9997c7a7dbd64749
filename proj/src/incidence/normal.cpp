#include "incidence/normal.hpp"

#include <algorithm>

#include "algebra/roots.hpp"
#include "common/error.hpp"

namespace cilab::incidence {

using algebra::BasicMatrix;
using algebra::Monomial;
using algebra::UPoly;
using Ext = ExtensionField;
using BForm = UPoly<Ext>;

namespace {

int cofactorDegree(const CurveDecomposition& dec, std::size_t i, std::size_t j) {
  return dec.degrees[i] - (static_cast<int>(j) < dec.curve.normalCount() ? 1 : 2);
}

// Coefficients of a form in the span variables, scattered into column `col`.
void scatterBinary(const MultiPoly& g, std::size_t rowOffset, std::size_t col, ExactMatrix& m) {
  for (const auto& [mono, c] : g.terms()) m(rowOffset + mono.exponent(1), col) = c;
}

void scatterNormalForm(const moduli::ConicFrame& frame, const MultiPoly& planeForm, int degree,
                       std::size_t rowOffset, std::size_t col, ExactMatrix& m) {
  if (planeForm.isZero()) return;
  const auto v = frame.normalForm(frame.toFrame(planeForm), degree);
  for (std::size_t r = 0; r < v.size(); ++r) m(rowOffset + r, col) = v[r];
}

std::vector<std::size_t> targetOffsets(const std::vector<int>& degrees, bool conic) {
  std::vector<std::size_t> off{0};
  for (int d : degrees) off.push_back(off.back() + static_cast<std::size_t>(conic ? 2 * d + 1 : d + 1));
  return off;
}

// planeForm(spanForms): a binary form of degree deg(planeForm) * branch degree.
BForm compose(const Ext& ext, const MultiPoly& planeForm, const CurveBranch& br) {
  if (planeForm.isZero()) return {};
  const int vars = planeForm.nvars();
  const int maxExp = planeForm.degree();
  std::vector<std::vector<BForm>> powers(vars);
  for (int v = 0; v < vars; ++v) {
    powers[v].push_back(BForm{ext.one()});
    for (int e = 1; e <= maxExp; ++e) powers[v].push_back(algebra::mulPoly(ext, powers[v].back(), br.spanForms[v]));
  }
  BForm out;
  for (const auto& [mono, c] : planeForm.terms()) {
    BForm term{ext.embed(c)};
    for (int v = 0; v < vars; ++v) {
      const int e = mono.exponent(v);
      if (e > 0) term = algebra::mulPoly(ext, term, powers[v][e]);
    }
    out = algebra::addPoly(ext, out, term);
  }
  return out;
}

// Value at [0 : 1] of a binary form of the given degree.
Ext::Elem valueAtInfinity(const Ext& ext, const BForm& f, int degree) {
  return static_cast<int>(f.size()) == degree + 1 ? f.back() : ext.zero();
}

BForm embedForm(const Ext& to, const BForm& f) {
  BForm out;
  for (const auto& c : f) out.push_back(to.embed(c[0]));
  return out;
}

BForm determinant(const Ext& ext, const std::vector<std::vector<BForm>>& e, std::size_t row,
                  const std::vector<std::size_t>& cols) {
  if (cols.size() == 1) return e[row][cols[0]];
  BForm det;
  for (std::size_t k = 0; k < cols.size(); ++k) {
    if (e[row][cols[k]].empty()) continue;
    std::vector<std::size_t> rest;
    for (std::size_t l = 0; l < cols.size(); ++l)
      if (l != k) rest.push_back(cols[l]);
    const BForm term = algebra::mulPoly(ext, e[row][cols[k]], determinant(ext, e, row + 1, rest));
    det = k % 2 == 0 ? algebra::addPoly(ext, det, term) : algebra::subPoly(ext, det, term);
  }
  return det;
}

void forEachSubset(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
                   const std::function<void(const std::vector<std::size_t>&)>& visit) {
  if (cur.size() == k) {
    visit(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    forEachSubset(n, k, i + 1, cur, visit);
    cur.pop_back();
  }
}

int multiplicityOf(const Ext& ext, BForm g, const Ext::Elem& root) {
  int mult = 0;
  const BForm lin{ext.neg(root), ext.one()};
  for (;;) {
    auto [q, r] = algebra::divModPoly(ext, g, lin);
    if (!r.empty()) return mult;
    ++mult;
    g = std::move(q);
  }
}

struct BranchEntries {
  std::vector<std::vector<BForm>> forms;   // c x cols
  std::vector<std::vector<int>> degrees;   // binary degrees
};

CurvePoint makePoint(const CurveModel& curve, const CurveBranch& br, int branchIndex, const Ext& ext,
                     const Ext& brExt, bool atInfinity, const Ext::Elem& tau, int rank) {
  CurvePoint p;
  p.branch = branchIndex;
  p.extensionDegree = ext.minimalDegree(tau);
  p.parameter = atInfinity ? "inf" : ext.toString(tau);
  std::vector<Ext::Elem> z;
  for (const auto& f : br.spanForms) {
    const BForm lifted = &ext == &brExt ? f : embedForm(ext, f);
    z.push_back(atInfinity ? valueAtInfinity(ext, lifted, br.degree) : algebra::evalPoly(ext, lifted, tau));
  }
  for (int col = 0; col <= curve.n(); ++col) {
    Ext::Elem acc = ext.zero();
    for (std::size_t k = 0; k < z.size(); ++k) acc = ext.add(acc, ext.mul(ext.embed(curve.span()(k, col)), z[k]));
    p.coordinates.push_back(ext.toString(acc));
  }
  p.rank = rank;
  return p;
}

int rankAt(const Ext& ext, const BranchEntries& be, bool atInfinity, const Ext::Elem& tau, bool lift) {
  const std::size_t c = be.forms.size();
  const std::size_t cols = c ? be.forms[0].size() : 0;
  BasicMatrix<Ext::Elem> m(c, cols, ext.zero());
  for (std::size_t i = 0; i < c; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      const BForm f = lift ? embedForm(ext, be.forms[i][j]) : be.forms[i][j];
      m(i, j) = atInfinity ? valueAtInfinity(ext, f, be.degrees[i][j]) : algebra::evalPoly(ext, f, tau);
    }
  }
  return static_cast<int>(algebra::rankOf(ext, m));
}

}  // namespace

SectionMap sectionMap(const CurveDecomposition& dec) {
  const auto& curve = dec.curve;
  const auto& field = curve.field();
  const int m = curve.normalCount();
  const std::size_t c = dec.cofactors.size();
  const bool conic = curve.isConic();
  const auto off = targetOffsets(dec.degrees, conic);
  SectionMap map;
  map.source = conic ? static_cast<std::size_t>(3 * m + 5) : static_cast<std::size_t>(2 * m);
  map.target = off.back();
  map.matrix = ExactMatrix(map.target, map.source, 0);
  for (std::size_t i = 0; i < c; ++i) {
    const int d = dec.degrees[i];
    for (int j = 0; j < m; ++j) {
      const auto r = dec.restrictedCofactor(i, j);
      if (conic) {
        for (int k = 0; k < 3; ++k) {
          const auto g = r * curve.frame().fromFrame(curve.frame().basisForm(1, k));
          scatterNormalForm(curve.frame(), g, d, off[i], 3 * j + k, map.matrix);
        }
      } else {
        for (int z = 0; z < 2; ++z) scatterBinary(r * MultiPoly::variable(field, 2, z), off[i], 2 * j + z, map.matrix);
      }
    }
    if (conic) {
      const auto r = dec.restrictedCofactor(i, m);
      for (int k = 0; k < 5; ++k) {
        const auto g = r * curve.frame().fromFrame(curve.frame().basisForm(2, k));
        scatterNormalForm(curve.frame(), g, d, off[i], 3 * m + k, map.matrix);
      }
    }
  }
  map.rank = algebra::rank(field, map.matrix);
  return map;
}

std::vector<CurveBranch> curveBranches(const CurveModel& curve) {
  const auto& field = curve.field();
  std::vector<CurveBranch> out;
  if (!curve.isConic()) {
    const Ext& e = algebra::extensionField(field, 1);
    out.push_back(CurveBranch{1, 1, {BForm{e.one()}, BForm{e.zero(), e.one()}}});
    return out;
  }
  const auto& q = curve.conicPoint().quadric;
  const auto gram = moduli::gramMatrix(field, q);
  switch (curve.kind()) {
    case ConicKind::SmoothConic: {
      const Ext& e = algebra::extensionField(field, 1);
      const auto p0 = moduli::rationalPointOnConic(field, q);
      int k = 0;
      while (p0[k] == 0) ++k;
      const int i = k == 0 ? 1 : 0;
      const int j = k == 2 ? 1 : 2;
      // second intersection of the line through p0 in direction D = sigma e_i + tau e_j:
      // -Q(D) p0 + beta(p0, D) D with beta the polar form
      Residue gp[3];
      for (int r = 0; r < 3; ++r) {
        gp[r] = 0;
        for (int s = 0; s < 3; ++s) gp[r] = field.add(gp[r], field.mul(gram(r, s), p0[s]));
      }
      BForm qd{e.embed(gram(i, i)), e.embed(field.add(gram(i, j), gram(i, j))), e.embed(gram(j, j))};
      BForm beta{e.embed(field.add(gp[i], gp[i])), e.embed(field.add(gp[j], gp[j]))};
      CurveBranch br{1, 2, {}};
      for (int l = 0; l < 3; ++l) {
        BForm f = algebra::scalePoly(e, qd, e.embed(field.neg(p0[l])));
        if (l == i) f = algebra::addPoly(e, f, beta);
        if (l == j) f = algebra::addPoly(e, f, algebra::mulPoly(e, beta, BForm{e.zero(), e.one()}));
        br.spanForms.push_back(f);
      }
      out.push_back(std::move(br));
      break;
    }
    case ConicKind::LinePair: {
      const auto geo = moduli::linePairGeometry(field, q);
      const Ext& e = algebra::extensionField(field, geo.extensionDegree);
      for (int b = 0; b < 2; ++b) {
        CurveBranch br{geo.extensionDegree, 1, {}};
        for (int l = 0; l < 3; ++l) {
          BForm f{e.embed(geo.node[l]), geo.points[b][l]};
          algebra::trim(e, f);
          br.spanForms.push_back(f);
        }
        out.push_back(std::move(br));
      }
      break;
    }
    case ConicKind::DoubleLine: {
      const Ext& e = algebra::extensionField(field, 1);
      ExactMatrix row(1, 3);
      for (int r = 0; r < 3; ++r) {
        bool nonzero = false;
        for (int c = 0; c < 3; ++c) nonzero = nonzero || gram(r, c) != 0;
        if (!nonzero) continue;
        for (int c = 0; c < 3; ++c) row(0, c) = gram(r, c);
        break;
      }
      const auto ker = algebra::kernelBasis(field, row);
      CurveBranch br{1, 1, {}};
      for (int l = 0; l < 3; ++l) {
        BForm f{e.embed(ker[0][l]), e.embed(ker[1][l])};
        algebra::trim(e, f);
        br.spanForms.push_back(f);
      }
      out.push_back(std::move(br));
      break;
    }
  }
  return out;
}

RankReport rankAlongCurve(const CompleteIntersection& x, const CurveDecomposition& dec) {
  const auto& curve = dec.curve;
  const auto& field = x.field();
  const std::size_t c = dec.cofactors.size();
  const std::size_t cols = static_cast<std::size_t>(dec.columns());
  RankReport report;
  report.c = static_cast<int>(c);
  report.minRank = static_cast<int>(c);
  const auto branches = curveBranches(curve);
  for (std::size_t b = 0; b < branches.size(); ++b) {
    const auto& br = branches[b];
    const Ext& ext = algebra::extensionField(field, br.extensionDegree);
    BranchEntries be;
    for (std::size_t i = 0; i < c; ++i) {
      be.forms.emplace_back();
      be.degrees.emplace_back();
      for (std::size_t j = 0; j < cols; ++j) {
        be.forms[i].push_back(compose(ext, dec.restrictedCofactor(i, j), br));
        be.degrees[i].push_back(cofactorDegree(dec, i, j) * br.degree);
      }
    }
    auto record = [&](const Ext& e, bool inf, const Ext::Elem& tau, bool lift) {
      const int r = rankAt(e, be, inf, tau, lift);
      if (r < static_cast<int>(c)) {
        report.smoothAlongCurve = false;
        report.minRank = std::min(report.minRank, r);
        report.witnesses.push_back(makePoint(curve, br, static_cast<int>(b), e, ext, inf, tau, r));
      }
      return r;
    };
    record(ext, true, ext.zero(), false);

    BForm g;
    std::vector<std::size_t> cur;
    forEachSubset(cols, c, 0, cur, [&](const std::vector<std::size_t>& s) {
      g = algebra::gcdPoly(ext, g, determinant(ext, be.forms, 0, s));
    });
    if (g.empty()) {
      // every minor vanishes identically: the rank drops along the whole branch
      report.smoothAlongCurve = false;
      report.witnessesComplete = false;
      if (record(ext, false, ext.zero(), false) >= static_cast<int>(c)) report.minRank = std::min<int>(report.minRank, static_cast<int>(c) - 1);
      continue;
    }
    const int deg = algebra::degreeOf<Ext>(g);
    if (deg <= 0) continue;
    report.smoothAlongCurve = false;
    int located = 0;
    if (br.extensionDegree == 1) {
      algebra::UPoly<PrimeField> gp;
      for (const auto& coef : g) gp.push_back(coef[0]);
      for (const auto& root : algebra::univariateRootsInExtension(field, gp, Ext::kMaxDegree)) {
        const Ext& re = algebra::extensionField(field, root.extensionDegree);
        record(re, false, root.value, root.extensionDegree != 1);
        located += root.multiplicity;
      }
    } else {
      for (const auto& root : algebra::distinctRootsIn(ext, g)) {
        record(ext, false, root, false);
        located += multiplicityOf(ext, g, root);
      }
    }
    if (located < deg) {
      report.witnessesComplete = false;
      report.minRank = std::min<int>(report.minRank, static_cast<int>(c) - 1);
    }
  }
  return report;
}

Cohomology normalBundleCohomology(const CompleteIntersection& x, const CurveModel& curve) {
  const auto dec = decomposeAlongCurve(x, curve);
  const auto map = sectionMap(dec);
  Cohomology h;
  h.h0 = static_cast<int>(map.source - map.rank);
  h.h1 = static_cast<int>(map.target - map.rank);
  const auto dims = expectedDims(x.type());
  h.expectedDim = curve.isConic() ? dims.conicsDim : dims.linesDim;
  h.smoothPoint = h.h1 == 0;
  h.localDim = h.h0;
  h.rank = rankAlongCurve(x, dec);
  h.reliable = h.rank.smoothAlongCurve;
  return h;
}

int jacobianTangentDim(const CompleteIntersection& x, const CurveModel& curve) {
  if (!containsCurve(x, curve)) throw DomainError("curve is not contained in X");
  const auto& field = x.field();
  const auto& degrees = x.type().degrees;
  const bool conic = curve.isConic();
  const auto off = targetOffsets(degrees, conic);
  const int k = curve.spanDim();
  const auto coords = conic ? curve.conicPoint().planeChartCoordinates() : curve.linePoint().chartCoordinates();
  std::vector<std::vector<MultiPoly>> partials(degrees.size());
  for (std::size_t i = 0; i < degrees.size(); ++i)
    for (int col = 0; col <= x.n(); ++col) partials[i].push_back(curve.restrictToSpan(x.forms()[i].partial(col)));

  const std::size_t columns = static_cast<std::size_t>(curve.chartDimension());
  ExactMatrix jac(off.back(), columns, 0);
  // moving entry (r, col) of the span moves the curve by z_r e_col
  for (std::size_t idx = 0; idx < coords.size(); ++idx) {
    const auto [r, col] = coords[idx];
    for (std::size_t i = 0; i < degrees.size(); ++i) {
      const auto g = partials[i][col] * MultiPoly::variable(field, k, r);
      if (conic) scatterNormalForm(curve.frame(), g, degrees[i], off[i], idx, jac);
      else scatterBinary(g, off[i], idx, jac);
    }
  }
  if (conic) {
    // the quadric chart is q_lead = 1; f_i|P = A_i L_2 gives d(f_i|P) - A_i dL_2 in (L_2)
    const auto& q = curve.conicPoint().quadric;
    const auto quadric = moduli::quadricForm(field, q);
    int lead = 0;
    while (q[lead] == 0) ++lead;
    std::vector<MultiPoly> cof;
    for (const auto& f : x.forms()) {
      auto a = curve.restrictToSpan(f).divideExact(quadric);
      if (!a) throw DomainError("conic is not contained in X");
      cof.push_back(*a);
    }
    std::size_t idx = coords.size();
    for (int qi = 0; qi < 6; ++qi) {
      if (qi == lead) continue;
      for (std::size_t i = 0; i < degrees.size(); ++i) {
        const auto g = -(cof[i] * MultiPoly::monomial(field, 3, moduli::quadricMonomial(qi), 1));
        scatterNormalForm(curve.frame(), g, degrees[i], off[i], idx, jac);
      }
      ++idx;
    }
  }
  return static_cast<int>(columns - algebra::rank(field, jac));
}

}  // namespace cilab::incidence
