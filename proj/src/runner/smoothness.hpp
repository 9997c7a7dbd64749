#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "incidence/ci.hpp"
#include "moduli/charts.hpp"

namespace cilab::runner {

enum class CurveKind { Line, SmoothConic, LinePair, DoubleLine };

const char* curveKindName(CurveKind kind);
/// "line", "smooth", "line-pair", "double-line"
CurveKind parseCurveKind(const std::string& name);
std::vector<CurveKind> allCurveKinds();
moduli::ConicKind conicKindOf(CurveKind kind);

/// Per-sample seed: splitmix64 mixing of the base seed, the type, the curve
/// kind and the sample index.
std::uint64_t sampleSeed(std::uint64_t seed, const incidence::CIType& type, CurveKind kind, std::uint64_t index);

/// Counts over `samples` random pairs (C, X) with X drawn through C.
struct SmoothnessCell {
  incidence::CIType type;
  CurveKind kind = CurveKind::Line;
  std::uint32_t samples = 0;
  int expectedDim = 0;
  std::uint32_t h1Zero = 0;
  /// evaluation matrix of rank c at every point of C
  std::uint32_t smoothAlongCurve = 0;
  std::uint32_t eulerHolds = 0;
  /// pairs where the Jacobian oracle was compared (smooth along C)
  std::uint32_t jacobianCompared = 0;
  std::uint32_t jacobianAgree = 0;
  /// indices of samples with h1 != 0 (first 16)
  std::vector<std::uint32_t> obstructedSamples;

  /// at least 99% of the samples have h1 = 0
  bool meetsThreshold() const noexcept { return 100ull * h1Zero >= 99ull * samples; }
};

/// Throws BudgetExceeded when samples > budget. Deterministic in the seed for
/// any thread count.
SmoothnessCell sampleSmoothness(std::uint32_t p, const incidence::CIType& type, CurveKind kind, std::uint64_t seed,
                                std::uint32_t samples, std::uint64_t budget, unsigned threads);

struct GridEntry {
  incidence::CIType type;
  CurveKind kind = CurveKind::Line;
};

/// Types with 3 <= n <= maxN, c <= maxC, 2 <= d_i <= maxDegree (nondecreasing)
/// in the smooth range: lines when S + c <= 2n - 2, the three conic kinds when
/// 2S + c <= 3n - 2.
std::vector<GridEntry> smoothnessGrid(int maxN = 6, int maxDegree = 4, int maxC = 2);

nlohmann::json toJson(const SmoothnessCell& cell);

}  // namespace cilab::runner
