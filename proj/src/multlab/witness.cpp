#include "multlab/witness.hpp"

#include <algorithm>
#include <functional>

#include "algebra/roots.hpp"
#include "algebra/upoly.hpp"
#include "common/error.hpp"

namespace cilab::multlab {

using algebra::ExtensionField;
using Ext = ExtensionField;
using PPoly = algebra::UPoly<PrimeField>;

namespace {

struct Context {
  const PrimeField& field;
  const MultLayout& layout;
  const KindInfo& info;
  std::vector<std::vector<Residue>> kernel;       // basis of m^{-1}(V)
  std::vector<std::vector<Residue>> dependences;  // left kernel of the stacked rows
  int branches = 1;
};

Ext::Elem evalForm(const Ext& ext, std::span<const Residue> form, bool inf, const Ext::Elem& x) {
  if (inf) return ext.embed(form.back());
  Ext::Elem acc = ext.zero();
  for (auto it = form.rbegin(); it != form.rend(); ++it) acc = ext.add(ext.mul(acc, x), ext.embed(*it));
  return acc;
}

Ext::Elem evalSection(const Ext& ext, CurveShape shape, int degree, std::span<const Residue> s, int branch, bool inf,
                      const Ext::Elem& x) {
  const auto forms = branchForms(shape, degree, s);
  return evalForm(ext, forms[static_cast<std::size_t>(branch)], inf, x);
}

int rankAtPoint(const Context& ctx, const Ext& ext, int branch, bool inf, const Ext::Elem& x) {
  const std::size_t c = ctx.layout.degrees.size();
  algebra::BasicMatrix<Ext::Elem> m(ctx.kernel.size(), c, ext.zero());
  for (std::size_t i = 0; i < ctx.kernel.size(); ++i)
    for (std::size_t j = 0; j < c; ++j) {
      const std::span<const Residue> comp(ctx.kernel[i].data() + ctx.layout.sourceOffset[j],
                                          static_cast<std::size_t>(sectionDim(ctx.info.shape, ctx.layout.sourceDegrees[j])));
      m(i, j) = evalSection(ext, ctx.info.shape, ctx.layout.sourceDegrees[j], comp, branch, inf, x);
    }
  return static_cast<int>(algebra::rankOf(ext, m));
}

int multiplicityAt(const Context& ctx, const Ext& ext, int branch, bool inf, const Ext::Elem& x) {
  int count = 0;
  bool anyNonzero = false;
  for (const auto& lambda : ctx.dependences) {
    const bool zero = ext.isZero(evalSection(ext, ctx.info.shape, ctx.info.multiplierDegree, lambda, branch, inf, x));
    count += zero;
    anyNonzero = anyNonzero || !zero;
  }
  // the values span at most a line, so the vanishing subspace has dimension
  // (#dependences) or (#dependences - 1)
  return anyNonzero ? static_cast<int>(ctx.dependences.size()) - 1 : static_cast<int>(ctx.dependences.size());
}

WitnessPoint makeWitness(const Context& ctx, const Ext& ext, int branch, bool inf, const Ext::Elem& x, int rank,
                         bool fromDependence) {
  WitnessPoint w;
  const bool node = ctx.info.shape == CurveShape::Nodal && !inf && ext.isZero(x);
  w.branch = node ? 0 : branch;
  w.atInfinity = inf;
  w.extensionDegree = inf ? 1 : ext.minimalDegree(x);
  // callers pass x in its smallest field, so equal points compare equal
  w.x = x;
  w.point = inf ? "[1:0]" : "[" + ext.toString(x) + ":1]";
  w.rank = rank;
  w.multiplicity = multiplicityAt(ctx, ext, branch, inf, x);
  w.fromDependence = fromDependence;
  return w;
}

void addUnique(std::vector<WitnessPoint>& out, WitnessPoint w) {
  if (std::find(out.begin(), out.end(), w) == out.end()) out.push_back(std::move(w));
}

// Tries the candidate; returns true when it is a witness.
bool tryPoint(const Context& ctx, const Ext& ext, int branch, bool inf, const Ext::Elem& x, bool fromDependence,
              std::vector<WitnessPoint>& out) {
  const int r = rankAtPoint(ctx, ext, branch, inf, x);
  if (r >= static_cast<int>(ctx.layout.degrees.size())) return false;
  addUnique(out, makeWitness(ctx, ext, branch, inf, x, r, fromDependence));
  return true;
}

void tryRootsOf(const Context& ctx, PPoly g, int homogeneousDegree, int branch, bool fromDependence,
                std::vector<WitnessPoint>& out) {
  const auto& base = algebra::extensionField(ctx.field, 1);
  if (algebra::degreeOf<PrimeField>(g) < homogeneousDegree) tryPoint(ctx, base, branch, true, base.zero(), fromDependence, out);
  algebra::trim(ctx.field, g);
  if (algebra::degreeOf<PrimeField>(g) <= 0) return;
  for (const auto& root : algebra::univariateRootsInExtension(ctx.field, g, Ext::kMaxDegree)) {
    const Ext& ext = algebra::extensionField(ctx.field, root.extensionDegree);
    tryPoint(ctx, ext, branch, false, root.value, fromDependence, out);
  }
}

PPoly determinant(const PrimeField& f, const std::vector<std::vector<PPoly>>& m, std::vector<std::size_t> rows,
                  const std::vector<std::size_t>& cols) {
  if (rows.size() == 1) return m[rows[0]][cols[0]];
  PPoly acc;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    auto rest = rows;
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(k));
    const std::vector<std::size_t> subCols(cols.begin() + 1, cols.end());
    auto term = algebra::mulPoly(f, m[rows[k]][cols[0]], determinant(f, m, rest, subCols));
    acc = k % 2 ? algebra::subPoly(f, acc, term) : algebra::addPoly(f, acc, term);
  }
  return acc;
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

// Exact search: on each branch, the kernel evaluation as a c x r matrix of
// polynomials in x; the rank drops exactly at common roots of its c x c minors.
bool exactSearch(const Context& ctx, std::vector<WitnessPoint>& out) {
  const std::size_t c = ctx.layout.degrees.size();
  const std::size_t r = ctx.kernel.size();
  const auto& base = algebra::extensionField(ctx.field, 1);
  if (r < c) {
    // rank < c everywhere
    tryPoint(ctx, base, 0, false, base.zero(), false, out);
    return false;
  }
  bool beyond = false;
  for (int b = 0; b < ctx.branches; ++b) {
    tryPoint(ctx, base, b, true, base.zero(), false, out);
    std::vector<std::vector<PPoly>> m(c, std::vector<PPoly>(r));
    for (std::size_t j = 0; j < c; ++j)
      for (std::size_t i = 0; i < r; ++i) {
        const std::span<const Residue> comp(ctx.kernel[i].data() + ctx.layout.sourceOffset[j],
                                            static_cast<std::size_t>(sectionDim(ctx.info.shape, ctx.layout.sourceDegrees[j])));
        PPoly p = branchForms(ctx.info.shape, ctx.layout.sourceDegrees[j], comp)[static_cast<std::size_t>(b)];
        algebra::trim(ctx.field, p);
        m[j][i] = std::move(p);
      }
    PPoly g;
    std::vector<std::size_t> cur, rows(c);
    for (std::size_t j = 0; j < c; ++j) rows[j] = j;
    forEachSubset(r, c, 0, cur, [&](const std::vector<std::size_t>& cols) {
      g = algebra::gcdPoly(ctx.field, g, determinant(ctx.field, m, rows, cols));
    });
    if (g.empty()) {
      // rank < c along the whole branch
      tryPoint(ctx, base, b, false, base.zero(), false, out);
      continue;
    }
    const int deg = algebra::degreeOf<PrimeField>(g);
    if (deg <= 0) continue;
    int located = 0;
    for (const auto& root : algebra::univariateRootsInExtension(ctx.field, g, Ext::kMaxDegree)) {
      const Ext& ext = algebra::extensionField(ctx.field, root.extensionDegree);
      tryPoint(ctx, ext, b, false, root.value, false, out);
      located += root.multiplicity;
    }
    beyond = beyond || located < deg;
  }
  return beyond;
}

Context makeContext(const PrimeField& field, const MultLayout& layout, const ExactMatrix& stacked) {
  Context ctx{field, layout, kindInfo(layout.kind), algebra::kernelBasis(field, stacked),
              algebra::kernelBasis(field, stacked.transposed()), 1};
  ctx.branches = ctx.info.shape == CurveShape::Nodal ? 2 : 1;
  return ctx;
}

std::vector<WitnessPoint> search(const Context& ctx, bool& beyond) {
  std::vector<WitnessPoint> out;
  for (const auto& lambda : ctx.dependences) {
    const auto forms = branchForms(ctx.info.shape, ctx.info.multiplierDegree, lambda);
    for (int b = 0; b < ctx.branches; ++b) {
      PPoly g = forms[static_cast<std::size_t>(b)];
      PPoly trimmed = g;
      algebra::trim(ctx.field, trimmed);
      if (trimmed.empty()) continue;
      tryRootsOf(ctx, trimmed, ctx.info.multiplierDegree, b, true, out);
    }
  }
  beyond = false;
  if (out.empty()) beyond = exactSearch(ctx, out);
  return out;
}

}  // namespace

const char* verdictName(Verdict v) {
  switch (v) {
    case Verdict::FullCodim: return "FullCodim";
    case Verdict::WitnessedDrop: return "WitnessedDrop";
    case Verdict::Counterexample: return "Counterexample";
  }
  return "?";
}

std::vector<WitnessPoint> findWitnesses(const PrimeField& field, const MultLayout& layout, std::span<const Residue> a) {
  const auto stacked = buildStackedFunctionals(field, layout, a);
  if (static_cast<int>(algebra::rank(field, stacked)) == kindInfo(layout.kind).expectedCodim)
    throw DomainError("the preimage has full codimension; there is no dependence to solve");
  bool beyond = false;
  return search(makeContext(field, layout, stacked), beyond);
}

std::vector<WitnessPoint> findWitnesses(const PrimeField& field, MultMapKind kind, const std::vector<int>& degrees,
                                        std::span<const Residue> a) {
  return findWitnesses(field, makeLayout(field, kind, degrees), a);
}

DichotomyReport analyzeHyperplane(const PrimeField& field, const MultLayout& layout, std::span<const Residue> a) {
  const auto stacked = buildStackedFunctionals(field, layout, a);
  DichotomyReport rep;
  rep.expectedCodim = kindInfo(layout.kind).expectedCodim;
  rep.actualCodim = static_cast<int>(algebra::rank(field, stacked));
  if (rep.actualCodim == rep.expectedCodim) return rep;
  rep.witnesses = search(makeContext(field, layout, stacked), rep.dropBeyondSearch);
  rep.verdict = rep.witnesses.empty() ? Verdict::Counterexample : Verdict::WitnessedDrop;
  return rep;
}

std::vector<WitnessPoint> exhaustivePointScan(const PrimeField& field, const MultLayout& layout,
                                              std::span<const Residue> a, int maxDegree) {
  const auto ctx = makeContext(field, layout, buildStackedFunctionals(field, layout, a));
  std::vector<WitnessPoint> out;
  for (int b = 0; b < ctx.branches; ++b) {
    const auto& base = algebra::extensionField(field, 1);
    tryPoint(ctx, base, b, true, base.zero(), false, out);
    for (int k = 1; k <= maxDegree; ++k) {
      const Ext& ext = algebra::extensionField(field, k);
      for (std::uint64_t i = 0; i < ext.order(); ++i) {
        const auto x = ext.fromIndex(i);
        if (ext.minimalDegree(x) != k) continue;
        tryPoint(ctx, ext, b, false, x, false, out);
      }
    }
  }
  return out;
}

}  // namespace cilab::multlab
