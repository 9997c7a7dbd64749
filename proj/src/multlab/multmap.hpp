#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "algebra/field.hpp"
#include "algebra/matrix.hpp"

namespace cilab::multlab {

using algebra::ExactMatrix;
using algebra::PrimeField;
using algebra::Residue;

enum class MultMapKind { LineM, SmoothM2, SmoothM4, NodalM1, NodalM2, DoubleM1, DoubleM2 };

/// P^1; two P^1 glued at a node; a double line (dual numbers s1 + t s2, t^2 = 0).
enum class CurveShape { Line, Nodal, Double };

/// Section coordinates of H^0(O(D)), x = s/t and x^j <-> s^j t^(D-j):
///   Line:   [c_0 .. c_D]                          (D + 1)
///   Nodal:  [c_0 .. c_D, e_1 .. e_D]              (2D + 1) branch 1 is c,
///           branch 2 is (c_0, e_1, .., e_D); the node is x = 0 on both
///   Double: [s1_0 .. s1_D, s2_0 .. s2_{D-1}]      (2D + 1)
struct KindInfo {
  MultMapKind kind;
  const char* name;
  CurveShape shape;
  int multiplierDegree;
  int multiplierDim;
  int expectedCodim;
  /// 2d on the smooth conic (parametrized by P^1), d otherwise
  int targetDegree(int d) const noexcept { return shape == CurveShape::Line && kind != MultMapKind::LineM ? 2 * d : d; }
  int sourceDegree(int d) const noexcept { return targetDegree(d) - multiplierDegree; }
};

const KindInfo& kindInfo(MultMapKind kind);
const std::vector<MultMapKind>& allKinds();
/// "line-m", "smooth-m2", "smooth-m4", "nodal-m1", "nodal-m2", "double-m1", "double-m2"
MultMapKind parseKind(std::string_view name);

int sectionDim(CurveShape shape, int degree);
/// Per-branch coefficient vectors (index = power of x, D + 1 entries).
std::vector<std::vector<Residue>> branchForms(CurveShape shape, int degree, std::span<const Residue> section);
std::vector<Residue> multiplySections(const PrimeField& field, CurveShape shape, int degA, std::span<const Residue> a,
                                      int degB, std::span<const Residue> b);

/// Coordinates of sum_i H^0(O(D_i)) (targets) and sum_i H^0(O(D_i - e)) (sources).
struct MultLayout {
  MultMapKind kind;
  std::vector<int> degrees;
  std::vector<int> targetDegrees, sourceDegrees;
  std::vector<std::size_t> targetOffset, sourceOffset;
  std::size_t targetTotal = 0, sourceTotal = 0;
  /// products[r][col]: (target index, coefficient) of g_r * (source basis col)
  std::vector<std::vector<std::vector<std::pair<std::size_t, Residue>>>> products;
};

/// Throws InvalidInput when c = 0 or some source degree is negative.
MultLayout makeLayout(const PrimeField& field, MultMapKind kind, const std::vector<int>& degrees);

/// Row r is the functional f |-> a(g_r f) on the source, g_r the r-th
/// multiplier basis section. Throws InvalidInput on a length mismatch.
ExactMatrix buildStackedFunctionals(const PrimeField& field, const MultLayout& layout, std::span<const Residue> a);
ExactMatrix buildStackedFunctionals(const PrimeField& field, MultMapKind kind, const std::vector<int>& degrees,
                                    std::span<const Residue> a);

/// Rank of the stacked functionals: the codimension of m^{-1}(V).
int preimageCodim(const PrimeField& field, MultMapKind kind, const std::vector<int>& degrees,
                  std::span<const Residue> a);

}  // namespace cilab::multlab
