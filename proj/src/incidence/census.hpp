#pragma once

#include <cstdint>
#include <vector>

#include "incidence/normal.hpp"

namespace cilab::incidence {

struct LineRecord {
  LineChartPoint line;
  Cohomology cohomology;
};

struct LineCensus {
  std::uint64_t linesScanned = 0;
  std::vector<LineRecord> lines;  // in enumeration order
  bool allUnobstructed = true;
};

/// Every F_q-rational line on X (q the field of X), with its normal bundle
/// cohomology. Throws BudgetExceeded if the number of lines exceeds `budget`.
LineCensus enumerateLinesOnX(const CompleteIntersection& x, std::uint64_t budget);

struct ConicRecord {
  ConicChartPoint conic;
  ConicKind kind = ConicKind::SmoothConic;
  Cohomology cohomology;
};

struct ConicCensus {
  std::uint64_t planesScanned = 0;
  /// planes on which every f_i vanishes: flagged and skipped
  std::vector<algebra::ExactMatrix> containedPlanes;
  std::vector<ConicRecord> conics;
};

/// Plane-by-plane census: g = gcd of the f_i on the plane, and every conic
/// L_2 dividing g is emitted. deg g = 2 gives g itself, deg g = 3 the
/// cofactors of the linear factors of g, and deg g >= 4 falls back to trial
/// division by every quadric (counted against the budget).
ConicCensus enumerateConicsOnX(const CompleteIntersection& x, std::uint64_t budget, bool withCohomology = true);

}  // namespace cilab::incidence
