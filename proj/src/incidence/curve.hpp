#pragma once

#include <optional>
#include <vector>

#include "incidence/ci.hpp"
#include "moduli/charts.hpp"
#include "moduli/conic.hpp"

namespace cilab::incidence {

using algebra::ExactMatrix;
using moduli::ConicChartPoint;
using moduli::ConicKind;
using moduli::LineChartPoint;

/// A line or conic in P^n together with coordinates adapted to it.
///
/// Adapted coordinates y satisfy x = B y. The first m columns of B are unit
/// vectors at the non-pivot positions (the normal coordinates y_0..y_{m-1},
/// m = n-1 for a line, n-2 for a conic); the remaining columns are the RREF
/// span rows, so y_m.. are the span coordinates (s, t) or (u, v, w). The curve
/// is y_0 = ... = y_{m-1} = 0, plus L_2(u, v, w) = 0 for a conic.
class CurveModel {
 public:
  static CurveModel fromLine(const PrimeField& field, const LineChartPoint& line);
  static CurveModel fromConic(const PrimeField& field, const ConicChartPoint& conic);

  bool isConic() const noexcept { return conic_.has_value(); }
  int n() const noexcept { return n_; }
  const PrimeField& field() const noexcept { return field_; }
  const ExactMatrix& span() const noexcept { return span_; }
  int spanDim() const noexcept { return static_cast<int>(span_.rows()); }
  int normalCount() const noexcept { return n_ + 1 - spanDim(); }
  int chartDimension() const noexcept;
  const ExactMatrix& adapted() const noexcept { return adapted_; }
  const ExactMatrix& adaptedInverse() const noexcept { return adaptedInverse_; }

  const LineChartPoint& linePoint() const;
  const ConicChartPoint& conicPoint() const;
  ConicKind kind() const;
  const moduli::ConicFrame& frame() const;

  /// f(sum_k z_k span_k): a form in spanDim() variables.
  MultiPoly restrictToSpan(const MultiPoly& f) const;
  /// f(B y) in n+1 variables.
  MultiPoly toAdapted(const MultiPoly& f) const;
  /// g(B^{-1} x) in n+1 variables.
  MultiPoly fromAdapted(const MultiPoly& g) const;
  /// The span-coordinate quadric L_2 written in the n+1 adapted variables.
  MultiPoly adaptedQuadric() const;

 private:
  CurveModel(const PrimeField& field, int n, ExactMatrix span, std::vector<int> pivots);

  PrimeField field_;
  int n_;
  ExactMatrix span_;
  std::vector<int> pivots_;
  ExactMatrix adapted_;
  ExactMatrix adaptedInverse_;
  std::optional<LineChartPoint> line_;
  std::optional<ConicChartPoint> conic_;
  std::optional<moduli::ConicFrame> frame_;
};

/// Coefficients of f_i(s, t) on the parametrized line, d_i + 1 per form,
/// index k holding the coefficient of s^(d_i-k) t^k. All zero iff L is on X.
std::vector<std::vector<Residue>> restrictToLine(const CompleteIntersection& x, const LineChartPoint& line);
/// Normal-form coordinates of f_i restricted to the conic, 2 d_i + 1 per
/// form. All zero iff C is on X, scheme-theoretically.
std::vector<std::vector<Residue>> restrictToConic(const CompleteIntersection& x, const ConicChartPoint& conic);
std::vector<std::vector<Residue>> restrictToCurve(const CompleteIntersection& x, const CurveModel& curve);
bool containsCurve(const CompleteIntersection& x, const CurveModel& curve);

/// f_i = sum_j y_j f_{i,j} (+ L_2 f_{i,m} for a conic) in adapted coordinates.
struct CurveDecomposition {
  CurveModel curve;
  /// cofactors[i][j] in the n+1 adapted variables: j < m are the cofactors of
  /// the normal coordinates (degree d_i - 1); for a conic j = m is the L_2
  /// cofactor (degree d_i - 2).
  std::vector<std::vector<MultiPoly>> cofactors;
  std::vector<int> divisionOrder;
  std::vector<int> degrees;

  int columns() const noexcept { return curve.normalCount() + (curve.isConic() ? 1 : 0); }
  /// The right-hand side of the identity, in adapted coordinates.
  MultiPoly reassemble(std::size_t i) const;
  /// f_{i,j} restricted to the span of the curve (spanDim() variables).
  MultiPoly restrictedCofactor(std::size_t i, std::size_t j) const;
};

/// Assigns each term of f_i(B y) to the first normal coordinate in
/// `divisionOrder` (default 0, 1, ..., m-1) that divides it; what remains is
/// divided by L_2. Throws DomainError when the curve is not on X.
CurveDecomposition decomposeAlongCurve(const CompleteIntersection& x, const CurveModel& curve,
                                       std::vector<int> divisionOrder = {});

}  // namespace cilab::incidence
