#pragma once

#include <vector>

#include "algebra/extension.hpp"
#include "algebra/matrix.hpp"
#include "algebra/poly.hpp"
#include "moduli/charts.hpp"

namespace cilab::moduli {

/// Plane coordinates adapted to a conic: new coordinates (u', v', w') with
/// old = toOld * new, chosen so the quadric has a nonzero w'^2 coefficient.
/// Plane forms reduce modulo the quadric to a unique representative of
/// w'-degree <= 1; those representatives are the section normal forms.
///
/// The basis of H^0(C, O(d)) is ordered as
///   u'^d, u'^(d-1) v', ..., v'^d, u'^(d-1) w', ..., v'^(d-1) w'
/// which has 2d + 1 elements for every conic kind.
class ConicFrame {
 public:
  ConicFrame(const PrimeField& field, const QuadricCoeffs& q);

  const PrimeField& field() const noexcept { return field_; }
  const QuadricCoeffs& quadric() const noexcept { return quadric_; }
  const ExactMatrix& toOld() const noexcept { return toOld_; }
  const ExactMatrix& toNew() const noexcept { return toNew_; }
  /// The quadric in frame coordinates.
  const MultiPoly& frameQuadric() const noexcept { return frameQuadric_; }

  /// Plane form in (u, v, w) rewritten in frame coordinates, and back.
  MultiPoly toFrame(const MultiPoly& planeForm) const;
  MultiPoly fromFrame(const MultiPoly& frameForm) const;

  /// Representative of w'-degree <= 1 (frame coordinates in and out).
  MultiPoly reduce(const MultiPoly& frameForm) const;
  /// Coordinates of the reduction of a degree-d frame form in the section basis.
  std::vector<Residue> normalForm(const MultiPoly& frameForm, int degree) const;
  /// Section basis element as a frame form.
  MultiPoly basisForm(int degree, int index) const;

 private:
  PrimeField field_;
  QuadricCoeffs quadric_;
  ExactMatrix toOld_;
  ExactMatrix toNew_;
  MultiPoly frameQuadric_;
  Residue leadInv_ = 0;
};

std::vector<algebra::Monomial> sectionBasisMonomials(int degree);

struct SectionBasis {
  ConicFrame frame;
  int degree;
  std::vector<algebra::Monomial> monomials;
};

SectionBasis sectionBasis(const PrimeField& field, const QuadricCoeffs& q, int degree);

/// LinePair: sections restricted to the two lines, each parametrized as
/// sigma * node + tau * P_b so the node sits at tau = 0. Rows 0..d hold
/// branch 0 coefficients by tau-exponent, rows d+1..2d+1 branch 1; columns
/// follow the section basis. Works over F_p, or F_{p^2} when the lines are
/// conjugate.
struct GluedPairModel {
  int extensionDegree = 1;
  int degree = 0;
  algebra::BasicMatrix<algebra::ExtensionField::Elem> restriction;
  std::size_t rank = 0;
  bool nodeValuesAgree = false;
  /// dimension of {(g0, g1) : g0(node) = g1(node)}
  int gluedDimension = 0;
};

/// DoubleLine: with t the reduced line's linear form and (y, z) complementary
/// coordinates, each section is s1(y, z) + t * s2(y, z) modulo t^2. Rows
/// 0..d hold s1 (by z-exponent), rows d+1..2d hold s2.
struct DualNumberModel {
  int degree = 0;
  ExactMatrix coordinates;
  std::size_t rank = 0;
  /// coefficients of t in the plane coordinates (u, v, w)
  std::array<Residue, 3> reducedLine{};
  ExactMatrix toTYZ;  // (t, y, z) = toTYZ * (u, v, w)
};

/// Node and one point on each line of a line pair. The lines are defined
/// over F_p or are conjugate over F_{p^2}; points live in that field.
struct LinePairGeometry {
  int extensionDegree = 1;
  std::array<Residue, 3> node{};
  std::array<std::array<algebra::ExtensionField::Elem, 3>, 2> points{};
};

LinePairGeometry linePairGeometry(const PrimeField& field, const QuadricCoeffs& q);

/// An F_p-rational point of a smooth conic (deterministic search).
std::array<Residue, 3> rationalPointOnConic(const PrimeField& field, const QuadricCoeffs& q);

GluedPairModel gluedPairBasis(const PrimeField& field, const QuadricCoeffs& q, int degree);
DualNumberModel dualNumberBasis(const PrimeField& field, const QuadricCoeffs& q, int degree);

/// (s1, s2) pair of a frame-coordinate plane form of the given degree on a
/// double line, in the layout of DualNumberModel.
std::vector<Residue> dualNumberCoordinates(const ConicFrame& frame, const DualNumberModel& model,
                                           const MultiPoly& frameForm, int degree);

}  // namespace cilab::moduli
