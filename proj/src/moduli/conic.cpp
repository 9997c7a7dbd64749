#include "moduli/conic.hpp"

#include <algorithm>

#include "algebra/roots.hpp"
#include "algebra/upoly.hpp"
#include "common/error.hpp"

namespace cilab::moduli {

using algebra::BasicMatrix;
using algebra::ExtensionField;
using algebra::Monomial;

namespace {

Residue evalQuadric(const PrimeField& f, const QuadricCoeffs& q, const std::array<Residue, 3>& p) {
  const Residue vals[6] = {f.mul(p[0], p[0]), f.mul(p[0], p[1]), f.mul(p[0], p[2]),
                           f.mul(p[1], p[1]), f.mul(p[1], p[2]), f.mul(p[2], p[2])};
  Residue acc = 0;
  for (int i = 0; i < 6; ++i) acc = f.add(acc, f.mul(q[i], vals[i]));
  return acc;
}

std::vector<MultiPoly> linearSubstitution(const PrimeField& f, const ExactMatrix& m) {
  // variable r of the source becomes sum_c m(r, c) * y_c
  std::vector<MultiPoly> forms;
  for (std::size_t r = 0; r < m.rows(); ++r) forms.push_back(MultiPoly::linearForm(f, m.row(r)));
  return forms;
}

// Deterministic search for a plane point off the conic: a fixed short list,
// then all of P^2(F_p) in order (a nonzero conic has at most 2p + 1 points).
std::array<Residue, 3> pointOffConic(const PrimeField& f, const QuadricCoeffs& q) {
  const std::int64_t fixed[][3] = {{0, 0, 1}, {1, 0, 0}, {0, 1, 0}, {1, 0, 1}, {0, 1, 1},
                                   {1, 1, 0}, {1, 1, 1}, {1, -1, 0}, {1, 0, -1}, {0, 1, -1}};
  for (const auto& c : fixed) {
    std::array<Residue, 3> p{f.fromInt(c[0]), f.fromInt(c[1]), f.fromInt(c[2])};
    if (evalQuadric(f, q, p) != 0) return p;
  }
  const std::uint32_t m = f.modulus();
  for (int lead = 2; lead >= 0; --lead) {
    const std::uint64_t count = lead == 2 ? std::uint64_t{m} * m : (lead == 1 ? m : 1);
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      std::array<Residue, 3> p{};
      p[lead] = 1;
      std::uint64_t rest = idx;
      for (int i = 0; i < lead; ++i) {
        p[i] = static_cast<Residue>(rest % m);
        rest /= m;
      }
      if (evalQuadric(f, q, p) != 0) return p;
    }
  }
  throw InvalidInput("the zero quadric does not define a conic");
}

}  // namespace

ConicFrame::ConicFrame(const PrimeField& field, const QuadricCoeffs& q)
    : field_(field), quadric_(normalizeQuadric(field, q)), frameQuadric_(field, 3) {
  const auto p = pointOffConic(field_, quadric_);
  int last = 2;
  while (p[last] == 0) --last;
  toOld_ = ExactMatrix(3, 3, 0);
  int col = 0;
  for (int i = 0; i < 3; ++i) {
    if (i == last) continue;
    toOld_(i, col++) = 1;
  }
  for (int i = 0; i < 3; ++i) toOld_(i, 2) = p[i];
  toNew_ = algebra::inverse(field_, toOld_);
  frameQuadric_ = toFrame(quadricForm(field_, quadric_));
  leadInv_ = field_.inv(frameQuadric_.coefficient(Monomial::variable(2, 2)));
}

MultiPoly ConicFrame::toFrame(const MultiPoly& planeForm) const {
  const auto forms = linearSubstitution(field_, toOld_);
  return planeForm.substitute(forms);
}

MultiPoly ConicFrame::fromFrame(const MultiPoly& frameForm) const {
  const auto forms = linearSubstitution(field_, toNew_);
  return frameForm.substitute(forms);
}

MultiPoly ConicFrame::reduce(const MultiPoly& frameForm) const {
  MultiPoly r = frameForm;
  const Monomial w2 = Monomial::variable(2, 2);
  for (;;) {
    const MultiPoly::Term* top = nullptr;
    for (const auto& t : r.terms()) {
      if (t.first.exponent(2) >= 2 && (!top || t.first.exponent(2) > top->first.exponent(2))) top = &t;
    }
    if (!top) return r;
    const Monomial m = top->first / w2;
    const Residue c = field_.mul(top->second, leadInv_);
    r -= frameQuadric_.mulMonomial(m, c);
  }
}

std::vector<Residue> ConicFrame::normalForm(const MultiPoly& frameForm, int degree) const {
  const MultiPoly r = reduce(frameForm);
  if (!r.isZero() && (r.degree() != degree || !r.isHomogeneous())) {
    throw InvalidInput("normalForm: form is not homogeneous of the stated degree");
  }
  const auto basis = sectionBasisMonomials(degree);
  std::vector<Residue> out(basis.size(), 0);
  for (std::size_t i = 0; i < basis.size(); ++i) out[i] = r.coefficient(basis[i]);
  return out;
}

MultiPoly ConicFrame::basisForm(int degree, int index) const {
  return MultiPoly::monomial(field_, 3, sectionBasisMonomials(degree).at(index), 1);
}

std::vector<Monomial> sectionBasisMonomials(int degree) {
  if (degree < 0) throw InvalidInput("negative section degree");
  std::vector<Monomial> out;
  for (int j = 0; j <= degree; ++j) {
    const int e[3] = {degree - j, j, 0};
    out.emplace_back(std::span<const int>(e, 3));
  }
  for (int j = 0; j < degree; ++j) {
    const int e[3] = {degree - 1 - j, j, 1};
    out.emplace_back(std::span<const int>(e, 3));
  }
  return out;
}

SectionBasis sectionBasis(const PrimeField& field, const QuadricCoeffs& q, int degree) {
  return SectionBasis{ConicFrame(field, q), degree, sectionBasisMonomials(degree)};
}

namespace {

using Ext = ExtensionField;
using BinaryForm = algebra::UPoly<Ext>;  // index = exponent of tau

BinaryForm binaryPow(const Ext& e, const BinaryForm& base, int power) {
  BinaryForm r{e.one()};
  for (int i = 0; i < power; ++i) r = algebra::mulPoly(e, r, base);
  return r;
}

}  // namespace

LinePairGeometry linePairGeometry(const PrimeField& field, const QuadricCoeffs& q) {
  if (classifyConic(field, q) != ConicKind::LinePair) throw InvalidInput("expected a line pair");
  const auto kernel = algebra::kernelBasis(field, gramMatrix(field, q));
  LinePairGeometry geo;
  geo.node = {kernel[0][0], kernel[0][1], kernel[0][2]};
  // two unit vectors completing the node to a basis span a line avoiding the node
  std::array<Residue, 3> a{}, b{};
  for (int i = 0; i < 3; ++i) {
    if (geo.node[i] != 0) {
      a[(i + 1) % 3] = 1;
      b[(i + 2) % 3] = 1;
      break;
    }
  }
  const Residue qa = evalQuadric(field, q, a);
  const Residue qb = evalQuadric(field, q, b);
  std::array<Residue, 3> ab{};
  for (int i = 0; i < 3; ++i) ab[i] = field.add(a[i], b[i]);
  const Residue polar = field.sub(field.sub(evalQuadric(field, q, ab), qa), qb);
  // q(x a + b) = qa x^2 + polar x + qb; a root at infinity means a lies on C
  algebra::UPoly<PrimeField> phi{qb, polar, qa};
  algebra::trim(field, phi);
  const auto roots = algebra::univariateRootsInExtension(field, phi, 2);
  int k = 1;
  for (const auto& r : roots) k = std::max(k, r.extensionDegree);
  const Ext& ext = algebra::extensionField(field, k);
  geo.extensionDegree = k;
  std::vector<std::array<Ext::Elem, 3>> points;
  for (const auto& r : roots) {
    const auto x = r.extensionDegree == k ? r.value : ext.embed(r.value[0]);
    points.push_back({ext.add(ext.mul(x, ext.embed(a[0])), ext.embed(b[0])),
                      ext.add(ext.mul(x, ext.embed(a[1])), ext.embed(b[1])),
                      ext.add(ext.mul(x, ext.embed(a[2])), ext.embed(b[2]))});
  }
  if (points.size() == 1) points.push_back({ext.embed(a[0]), ext.embed(a[1]), ext.embed(a[2])});
  if (points.size() != 2) throw Error("line pair restriction did not yield two points");
  geo.points = {points[0], points[1]};
  return geo;
}

std::array<Residue, 3> rationalPointOnConic(const PrimeField& field, const QuadricCoeffs& q) {
  // points (1, v, w): q5 w^2 + (q2 + q4 v) w + (q0 + q1 v + q3 v^2) = 0
  for (std::uint64_t vi = 0; vi < field.modulus(); ++vi) {
    const Residue v = static_cast<Residue>(vi);
    const Residue a = q[5];
    const Residue b = field.add(q[2], field.mul(q[4], v));
    const Residue c = field.add(field.add(q[0], field.mul(q[1], v)), field.mul(q[3], field.mul(v, v)));
    algebra::UPoly<PrimeField> g{c, b, a};
    algebra::trim(field, g);
    if (g.empty()) return {1, v, 0};
    if (g.size() == 1) continue;
    const auto roots = algebra::univariateRootsInExtension(field, g, 1);
    if (!roots.empty()) return {1, v, roots.front().value[0]};
  }
  // points with u = 0
  for (std::uint64_t wi = 0; wi < field.modulus(); ++wi) {
    const std::array<Residue, 3> p{0, 1, static_cast<Residue>(wi)};
    if (evalQuadric(field, q, p) == 0) return p;
  }
  if (evalQuadric(field, q, {0, 0, 1}) == 0) return {0, 0, 1};
  throw DomainError("conic has no rational point");
}

GluedPairModel gluedPairBasis(const PrimeField& field, const QuadricCoeffs& q, int degree) {
  if (classifyConic(field, q) != ConicKind::LinePair) throw InvalidInput("gluedPairBasis needs a line pair");
  const auto geo = linePairGeometry(field, q);
  const int k = geo.extensionDegree;
  const Ext& ext = algebra::extensionField(field, k);
  const auto& node = geo.node;
  const auto& points = geo.points;

  ConicFrame frame(field, q);
  const auto basis = sectionBasisMonomials(degree);
  GluedPairModel model;
  model.extensionDegree = k;
  model.degree = degree;
  model.gluedDimension = 2 * (degree + 1) - 1;
  model.restriction = BasicMatrix<Ext::Elem>(2 * (degree + 1), basis.size(), ext.zero());
  for (int branch = 0; branch < 2; ++branch) {
    // frame coordinates of sigma * node + tau * P_b
    std::array<BinaryForm, 3> lin;
    for (int i = 0; i < 3; ++i) {
      Ext::Elem s = ext.zero(), t = ext.zero();
      for (int j = 0; j < 3; ++j) {
        s = ext.add(s, ext.mul(ext.embed(frame.toNew()(i, j)), ext.embed(node[j])));
        t = ext.add(t, ext.mul(ext.embed(frame.toNew()(i, j)), points[branch][j]));
      }
      lin[i] = BinaryForm{s, t};
    }
    for (std::size_t col = 0; col < basis.size(); ++col) {
      BinaryForm prod{ext.one()};
      for (int v = 0; v < 3; ++v) prod = algebra::mulPoly(ext, prod, binaryPow(ext, lin[v], basis[col].exponent(v)));
      for (std::size_t j = 0; j < prod.size() && j <= static_cast<std::size_t>(degree); ++j) {
        model.restriction(branch * (degree + 1) + j, col) = prod[j];
      }
    }
  }
  model.rank = algebra::rankOf(ext, model.restriction);
  model.nodeValuesAgree = true;
  for (std::size_t col = 0; col < basis.size(); ++col) {
    if (!ext.equal(model.restriction(0, col), model.restriction(degree + 1, col))) model.nodeValuesAgree = false;
  }
  return model;
}

std::vector<Residue> dualNumberCoordinates(const ConicFrame& frame, const DualNumberModel& model,
                                           const MultiPoly& frameForm, int degree) {
  const PrimeField& f = frame.field();
  const MultiPoly old = frame.fromFrame(frameForm);
  const auto back = algebra::inverse(f, model.toTYZ);
  std::vector<MultiPoly> forms;
  for (int r = 0; r < 3; ++r) forms.push_back(MultiPoly::linearForm(f, back.row(r)));
  const MultiPoly tyz = old.substitute(forms);
  std::vector<Residue> out(static_cast<std::size_t>(2 * degree + 1), 0);
  for (const auto& [m, c] : tyz.terms()) {
    const int te = m.exponent(0);
    const int ze = m.exponent(2);
    if (te == 0) out[ze] = c;
    else if (te == 1) out[degree + 1 + ze] = c;
  }
  return out;
}

DualNumberModel dualNumberBasis(const PrimeField& field, const QuadricCoeffs& q, int degree) {
  if (classifyConic(field, q) != ConicKind::DoubleLine) throw InvalidInput("dualNumberBasis needs a double line");
  const auto gram = gramMatrix(field, q);
  DualNumberModel model;
  model.degree = degree;
  for (int r = 0; r < 3 && model.reducedLine == std::array<Residue, 3>{}; ++r) {
    for (int c = 0; c < 3; ++c) model.reducedLine[c] = gram(r, c);
  }
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      ExactMatrix m(3, 3, 0);
      for (int c = 0; c < 3; ++c) m(0, c) = model.reducedLine[c];
      m(1, i) = 1;
      m(2, j) = 1;
      if (algebra::rank(field, m) == 3) {
        model.toTYZ = m;
        i = j = 3;
      }
    }
  }
  ConicFrame frame(field, q);
  const auto basis = sectionBasisMonomials(degree);
  model.coordinates = ExactMatrix(basis.size(), basis.size(), 0);
  for (std::size_t col = 0; col < basis.size(); ++col) {
    const auto coords = dualNumberCoordinates(frame, model, frame.basisForm(degree, static_cast<int>(col)), degree);
    for (std::size_t r = 0; r < coords.size(); ++r) model.coordinates(r, col) = coords[r];
  }
  model.rank = algebra::rank(field, model.coordinates);
  return model;
}

}  // namespace cilab::moduli
