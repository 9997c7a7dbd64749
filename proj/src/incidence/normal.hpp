#pragma once

#include <string>
#include <vector>

#include "algebra/extension.hpp"
#include "algebra/upoly.hpp"
#include "incidence/curve.hpp"

namespace cilab::incidence {

using algebra::ExtensionField;

/// Matrix of H^0(O_C(1)^m (+) O_C(2)) -> (+)_i H^0(O_C(d_i)), (g_j) |-> sum_j f_{i,j} g_j.
///
/// Lines: source basis (j, s), (j, t) for each normal coordinate j, target
/// coefficients of the binary forms by t-exponent. Conics: source basis is
/// the degree-1 section basis for each j followed by the degree-2 basis for
/// the L_2 cofactor; targets are normal-form coordinates.
struct SectionMap {
  std::size_t source = 0;
  std::size_t target = 0;
  ExactMatrix matrix;  // target x source
  std::size_t rank = 0;
};

SectionMap sectionMap(const CurveDecomposition& dec);

/// A rational parametrization [sigma : tau] -> C of a line or of one
/// component of a conic, over F_p or F_{p^2}. spanForms[k] is the k-th span
/// coordinate as a binary form of the given degree (index = tau-exponent).
struct CurveBranch {
  int extensionDegree = 1;
  int degree = 1;
  std::vector<algebra::UPoly<ExtensionField>> spanForms;
};

/// Lines: one branch of degree 1. Smooth conics: one branch of degree 2
/// through a rational point. Line pairs: both lines, each through the node
/// at tau = 0. Double lines: the reduced line.
std::vector<CurveBranch> curveBranches(const CurveModel& curve);

/// A point of C where {f_{i,j}(p)} has rank < c.
struct CurvePoint {
  int branch = 0;
  int extensionDegree = 1;
  /// affine parameter tau of [1 : tau], or "inf" for [0 : 1]
  std::string parameter;
  /// ambient coordinates in the extension field (ExtensionField::toString)
  std::vector<std::string> coordinates;
  int rank = 0;
};

/// The c x (m or m+1) matrix {f_{i,j}} along C. The rank drops somewhere on
/// C (over the algebraic closure) iff, on some branch, the c x c minors share
/// a root. That test is exact; witnesses are the common roots found in
/// F_{p^k}, k <= 4 (F_{p^2} for branches over F_{p^2}), plus [0 : 1].
struct RankReport {
  int c = 0;
  int minRank = 0;
  bool smoothAlongCurve = true;
  /// every common root of the minors was located
  bool witnessesComplete = true;
  std::vector<CurvePoint> witnesses;
};

RankReport rankAlongCurve(const CompleteIntersection& x, const CurveDecomposition& dec);

struct Cohomology {
  int h0 = 0;
  int h1 = 0;
  int expectedDim = 0;
  bool smoothPoint = false;
  int localDim = 0;
  /// X is smooth along C, so the normal bundle sequence is exact and h0/h1
  /// are those of N_{C|X}
  bool reliable = false;
  RankReport rank;
};

/// Throws DomainError when C is not on X.
Cohomology normalBundleCohomology(const CompleteIntersection& x, const CurveModel& curve);

/// Chart dimension minus the rank of the Jacobian of the containment
/// equations at C, computed from partial derivatives of the f_i in the
/// original coordinates (independent of the decomposition).
int jacobianTangentDim(const CompleteIntersection& x, const CurveModel& curve);

}  // namespace cilab::incidence
