#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "algebra/field.hpp"
#include "algebra/matrix.hpp"
#include "algebra/poly.hpp"

namespace cilab::moduli {

using algebra::ExactMatrix;
using algebra::MultiPoly;
using algebra::PrimeField;
using algebra::Residue;

/// Coefficients of a ternary quadric in the fixed order u^2, uv, uw, v^2, vw, w^2.
using QuadricCoeffs = std::array<Residue, 6>;

enum class ConicKind { SmoothConic, LinePair, DoubleLine };

const char* conicKindName(ConicKind kind);

/// A line in P^n as the row space of a 2 x (n+1) matrix in reduced row
/// echelon form. Chart coordinates are the 2(n-1) entries outside the pivot
/// columns; the RREF representative makes every line unique.
struct LineChartPoint {
  int n = 0;
  std::array<int, 2> pivots{};
  ExactMatrix rows;

  static LineChartPoint fromSpan(const PrimeField& field, const ExactMatrix& spanning);

  int chartDimension() const noexcept { return 2 * (n - 1); }
  /// (row, column) positions of the chart coordinates.
  std::vector<std::pair<int, int>> chartCoordinates() const;
};

/// A conic: a plane (3 x (n+1) RREF matrix) plus a quadric in the plane's
/// coordinates u, v, w, projectively normalized so its first nonzero
/// coefficient is 1. Chart dimension 3(n-2) + 5 = 3n - 1.
struct ConicChartPoint {
  int n = 0;
  std::array<int, 3> pivots{};
  ExactMatrix plane;
  QuadricCoeffs quadric{};

  static ConicChartPoint make(const PrimeField& field, const ExactMatrix& spanning, const QuadricCoeffs& q);

  int chartDimension() const noexcept { return 3 * (n - 2) + 5; }
  std::vector<std::pair<int, int>> planeChartCoordinates() const;
};

QuadricCoeffs normalizeQuadric(const PrimeField& field, const QuadricCoeffs& q);
MultiPoly quadricForm(const PrimeField& field, const QuadricCoeffs& q);
QuadricCoeffs quadricCoeffs(const MultiPoly& form);
/// Monomial of the quadric basis with the given index in the fixed order.
algebra::Monomial quadricMonomial(int index);

/// Rank of the symmetric Gram matrix: 3 smooth, 2 line pair, 1 double line.
/// Throws InvalidInput for q = 0.
ConicKind classifyConic(const PrimeField& field, const QuadricCoeffs& q);
ExactMatrix gramMatrix(const PrimeField& field, const QuadricCoeffs& q);

/// RREF of the given rows; throws DomainError when rank < rows.
std::pair<ExactMatrix, std::vector<int>> rrefBasis(const PrimeField& field, const ExactMatrix& spanning);

/// Gaussian binomial [n choose k]_q.
std::uint64_t gaussianBinomial(int n, int k, std::uint64_t q);
std::uint64_t lineCountOverFq(int n, std::uint64_t q);
std::uint64_t planeCountOverFq(int n, std::uint64_t q);
/// (q^6 - 1)/(q - 1)
std::uint64_t quadricCountOverFq(std::uint64_t q);

/// Visits every k-dimensional subspace of F_q^(n+1) exactly once, via its
/// RREF matrix, pivot sets in lexicographic order. Throws BudgetExceeded if
/// the Gaussian binomial exceeds `budget`. `field` may be F_2 here.
void forEachSubspace(const PrimeField& field, int n, int k, std::uint64_t budget,
                     const std::function<void(const ExactMatrix&, const std::vector<int>&)>& visit);
void forEachLine(const PrimeField& field, int n, std::uint64_t budget,
                 const std::function<void(const LineChartPoint&)>& visit);
void forEachPlane(const PrimeField& field, int n, std::uint64_t budget,
                  const std::function<void(const ExactMatrix&, const std::vector<int>&)>& visit);
/// Every normalized nonzero quadric over F_q.
void forEachQuadric(const PrimeField& field, const std::function<void(const QuadricCoeffs&)>& visit);
void forEachConic(const PrimeField& field, int n, std::uint64_t budget,
                  const std::function<void(const ConicChartPoint&)>& visit);

}  // namespace cilab::moduli
