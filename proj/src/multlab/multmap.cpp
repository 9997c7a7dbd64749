#include "multlab/multmap.hpp"

#include "common/error.hpp"

namespace cilab::multlab {

namespace {

const std::vector<KindInfo> kKinds{
    {MultMapKind::LineM, "line-m", CurveShape::Line, 1, 2, 2},
    {MultMapKind::SmoothM2, "smooth-m2", CurveShape::Line, 2, 3, 3},
    {MultMapKind::SmoothM4, "smooth-m4", CurveShape::Line, 4, 5, 5},
    {MultMapKind::NodalM1, "nodal-m1", CurveShape::Nodal, 1, 3, 3},
    {MultMapKind::NodalM2, "nodal-m2", CurveShape::Nodal, 2, 5, 5},
    {MultMapKind::DoubleM1, "double-m1", CurveShape::Double, 1, 3, 3},
    {MultMapKind::DoubleM2, "double-m2", CurveShape::Double, 2, 5, 5},
};

std::vector<Residue> mulPlain(const PrimeField& f, std::span<const Residue> a, std::span<const Residue> b) {
  if (a.empty() || b.empty()) return {};
  std::vector<Residue> out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = f.add(out[i + j], f.mul(a[i], b[j]));
  return out;
}

}  // namespace

const KindInfo& kindInfo(MultMapKind kind) { return kKinds.at(static_cast<std::size_t>(kind)); }

const std::vector<MultMapKind>& allKinds() {
  static const std::vector<MultMapKind> all{MultMapKind::LineM,   MultMapKind::SmoothM2, MultMapKind::SmoothM4,
                                            MultMapKind::NodalM1, MultMapKind::NodalM2,  MultMapKind::DoubleM1,
                                            MultMapKind::DoubleM2};
  return all;
}

MultMapKind parseKind(std::string_view name) {
  for (const auto& k : kKinds)
    if (name == k.name) return k.kind;
  throw InvalidInput("unknown multiplication map kind " + std::string(name));
}

int sectionDim(CurveShape shape, int degree) {
  if (degree < 0) return 0;
  return shape == CurveShape::Line ? degree + 1 : 2 * degree + 1;
}

std::vector<std::vector<Residue>> branchForms(CurveShape shape, int degree, std::span<const Residue> s) {
  const std::size_t n = static_cast<std::size_t>(degree) + 1;
  if (s.size() != static_cast<std::size_t>(sectionDim(shape, degree))) throw InvalidInput("section length mismatch");
  std::vector<Residue> first(s.begin(), s.begin() + n);
  if (shape != CurveShape::Nodal) return {first};
  std::vector<Residue> second(n);
  second[0] = s[0];
  for (std::size_t j = 1; j < n; ++j) second[j] = s[n + j - 1];
  return {first, second};
}

std::vector<Residue> multiplySections(const PrimeField& field, CurveShape shape, int degA, std::span<const Residue> a,
                                      int degB, std::span<const Residue> b) {
  const std::size_t na = static_cast<std::size_t>(degA) + 1, nb = static_cast<std::size_t>(degB) + 1;
  switch (shape) {
    case CurveShape::Line:
      return mulPlain(field, a, b);
    case CurveShape::Nodal: {
      const auto fa = branchForms(shape, degA, a), fb = branchForms(shape, degB, b);
      auto out = mulPlain(field, fa[0], fb[0]);
      const auto second = mulPlain(field, fa[1], fb[1]);
      out.insert(out.end(), second.begin() + 1, second.end());
      return out;
    }
    case CurveShape::Double: {
      // (s1 + t s2)(s1' + t s2') = s1 s1' + t (s2 s1' + s1 s2')
      const std::span<const Residue> a1 = a.first(na), a2 = a.subspan(na), b1 = b.first(nb), b2 = b.subspan(nb);
      auto out = mulPlain(field, a1, b1);
      std::vector<Residue> tail(na + nb - 2, 0);
      for (const auto& part : {mulPlain(field, a2, b1), mulPlain(field, a1, b2)})
        for (std::size_t k = 0; k < part.size(); ++k) tail[k] = field.add(tail[k], part[k]);
      out.insert(out.end(), tail.begin(), tail.end());
      return out;
    }
  }
  return {};
}

MultLayout makeLayout(const PrimeField& field, MultMapKind kind, const std::vector<int>& degrees) {
  const auto& info = kindInfo(kind);
  if (degrees.empty()) throw InvalidInput("at least one degree is required");
  MultLayout L;
  L.kind = kind;
  L.degrees = degrees;
  for (int d : degrees) {
    if (d < 1 || info.sourceDegree(d) < 0)
      throw InvalidInput(std::string("degree ") + std::to_string(d) + " is too small for " + info.name);
    L.targetDegrees.push_back(info.targetDegree(d));
    L.sourceDegrees.push_back(info.sourceDegree(d));
    L.targetOffset.push_back(L.targetTotal);
    L.sourceOffset.push_back(L.sourceTotal);
    L.targetTotal += static_cast<std::size_t>(sectionDim(info.shape, L.targetDegrees.back()));
    L.sourceTotal += static_cast<std::size_t>(sectionDim(info.shape, L.sourceDegrees.back()));
  }
  const int k = sectionDim(info.shape, info.multiplierDegree);
  L.products.assign(static_cast<std::size_t>(k), {});
  for (int r = 0; r < k; ++r) {
    std::vector<Residue> g(static_cast<std::size_t>(k), 0);
    g[static_cast<std::size_t>(r)] = 1;
    for (std::size_t i = 0; i < degrees.size(); ++i) {
      const int sd = sectionDim(info.shape, L.sourceDegrees[i]);
      for (int e = 0; e < sd; ++e) {
        std::vector<Residue> basis(static_cast<std::size_t>(sd), 0);
        basis[static_cast<std::size_t>(e)] = 1;
        const auto prod = multiplySections(field, info.shape, info.multiplierDegree, g, L.sourceDegrees[i], basis);
        std::vector<std::pair<std::size_t, Residue>> sparse;
        for (std::size_t t = 0; t < prod.size(); ++t)
          if (prod[t]) sparse.emplace_back(L.targetOffset[i] + t, prod[t]);
        L.products[static_cast<std::size_t>(r)].push_back(std::move(sparse));
      }
    }
  }
  return L;
}

ExactMatrix buildStackedFunctionals(const PrimeField& field, const MultLayout& L, std::span<const Residue> a) {
  if (a.size() != L.targetTotal) throw InvalidInput("functional length does not match the target dimension");
  ExactMatrix m(L.products.size(), L.sourceTotal);
  for (std::size_t r = 0; r < L.products.size(); ++r)
    for (std::size_t col = 0; col < L.sourceTotal; ++col) {
      Residue acc = 0;
      for (const auto& [t, c] : L.products[r][col]) acc = field.add(acc, field.mul(a[t], c));
      m(r, col) = acc;
    }
  return m;
}

ExactMatrix buildStackedFunctionals(const PrimeField& field, MultMapKind kind, const std::vector<int>& degrees,
                                    std::span<const Residue> a) {
  return buildStackedFunctionals(field, makeLayout(field, kind, degrees), a);
}

int preimageCodim(const PrimeField& field, MultMapKind kind, const std::vector<int>& degrees,
                  std::span<const Residue> a) {
  return static_cast<int>(algebra::rank(field, buildStackedFunctionals(field, kind, degrees, a)));
}

}  // namespace cilab::multlab
