#include "runner/smoothness.hpp"

#include <random>

#include "common/error.hpp"
#include "incidence/normal.hpp"
#include "incidence/sample.hpp"
#include "runner/pool.hpp"

namespace cilab::runner {

using incidence::CIType;
using incidence::CurveModel;

namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

struct SampleOutcome {
  int h0 = 0;
  int h1 = 0;
  bool smooth = false;
  int jacobian = -1;
};

}  // namespace

moduli::ConicKind conicKindOf(CurveKind kind) {
  switch (kind) {
    case CurveKind::SmoothConic: return moduli::ConicKind::SmoothConic;
    case CurveKind::LinePair: return moduli::ConicKind::LinePair;
    case CurveKind::DoubleLine: return moduli::ConicKind::DoubleLine;
    case CurveKind::Line: break;
  }
  throw InvalidInput("a line is not a conic kind");
}

const char* curveKindName(CurveKind kind) {
  switch (kind) {
    case CurveKind::Line: return "line";
    case CurveKind::SmoothConic: return "smooth";
    case CurveKind::LinePair: return "line-pair";
    case CurveKind::DoubleLine: return "double-line";
  }
  return "?";
}

CurveKind parseCurveKind(const std::string& name) {
  for (auto k : allCurveKinds())
    if (name == curveKindName(k)) return k;
  throw InvalidInput("unknown curve kind '" + name + "' (line, smooth, line-pair, double-line)");
}

std::vector<CurveKind> allCurveKinds() {
  return {CurveKind::Line, CurveKind::SmoothConic, CurveKind::LinePair, CurveKind::DoubleLine};
}

std::uint64_t sampleSeed(std::uint64_t seed, const CIType& type, CurveKind kind, std::uint64_t index) {
  std::uint64_t h = splitmix(seed);
  h = splitmix(h ^ static_cast<std::uint64_t>(type.n));
  for (int d : type.degrees) h = splitmix(h ^ static_cast<std::uint64_t>(d));
  h = splitmix(h ^ static_cast<std::uint64_t>(kind));
  return splitmix(h ^ index);
}

SmoothnessCell sampleSmoothness(std::uint32_t p, const CIType& type, CurveKind kind, std::uint64_t seed,
                                std::uint32_t samples, std::uint64_t budget, unsigned threads) {
  type.validate();
  if (samples > budget)
    throw BudgetExceeded(std::to_string(samples) + " samples exceed the budget of " + std::to_string(budget));
  const algebra::PrimeField field(p);
  std::vector<SampleOutcome> outcomes(samples);
  parallelFor(samples, threads, [&](std::size_t i) {
    std::mt19937_64 rng(sampleSeed(seed, type, kind, i));
    const CurveModel curve =
        kind == CurveKind::Line
            ? CurveModel::fromLine(field, incidence::randomLine(field, type.n, rng))
            : CurveModel::fromConic(field, incidence::randomConic(field, type.n, conicKindOf(kind), rng));
    const auto x = incidence::sampleThroughCurve(type, curve, rng());
    const auto coh = incidence::normalBundleCohomology(x, curve);
    SampleOutcome& out = outcomes[i];
    out.h0 = coh.h0;
    out.h1 = coh.h1;
    out.smooth = coh.rank.smoothAlongCurve;
    if (out.smooth) out.jacobian = incidence::jacobianTangentDim(x, curve);
  });

  const auto dims = incidence::expectedDims(type);
  SmoothnessCell cell;
  cell.type = type;
  cell.kind = kind;
  cell.samples = samples;
  cell.expectedDim = kind == CurveKind::Line ? dims.linesDim : dims.conicsDim;
  for (std::uint32_t i = 0; i < samples; ++i) {
    const auto& o = outcomes[i];
    if (o.h1 == 0) {
      ++cell.h1Zero;
    } else if (cell.obstructedSamples.size() < 16) {
      cell.obstructedSamples.push_back(i);
    }
    if (o.h0 - o.h1 == cell.expectedDim) ++cell.eulerHolds;
    if (o.smooth) {
      ++cell.smoothAlongCurve;
      ++cell.jacobianCompared;
      if (o.jacobian == o.h0) ++cell.jacobianAgree;
    }
  }
  return cell;
}

std::vector<GridEntry> smoothnessGrid(int maxN, int maxDegree, int maxC) {
  std::vector<GridEntry> grid;
  for (int n = 3; n <= maxN; ++n) {
    for (int c = 1; c <= maxC; ++c) {
      std::vector<int> degrees(c, 2);
      for (;;) {
        int sum = 0;
        for (int d : degrees) sum += d;
        const CIType type{n, degrees};
        if (sum + c <= 2 * n - 2) grid.push_back({type, CurveKind::Line});
        if (2 * sum + c <= 3 * n - 2)
          for (auto k : {CurveKind::SmoothConic, CurveKind::LinePair, CurveKind::DoubleLine})
            grid.push_back({type, k});
        // next nondecreasing tuple
        int i = c - 1;
        while (i >= 0 && degrees[i] == maxDegree) --i;
        if (i < 0) break;
        ++degrees[i];
        for (int k = i + 1; k < c; ++k) degrees[k] = degrees[i];
      }
    }
  }
  return grid;
}

nlohmann::json toJson(const SmoothnessCell& cell) {
  return {{"type", {{"n", cell.type.n}, {"degrees", cell.type.degrees}}},
          {"curveKind", curveKindName(cell.kind)},
          {"samples", cell.samples},
          {"expectedDim", cell.expectedDim},
          {"h1Zero", cell.h1Zero},
          {"smoothAlongCurve", cell.smoothAlongCurve},
          {"eulerHolds", cell.eulerHolds},
          {"jacobianCompared", cell.jacobianCompared},
          {"jacobianAgree", cell.jacobianAgree},
          {"obstructedSamples", cell.obstructedSamples},
          {"meetsThreshold", cell.meetsThreshold()}};
}

}  // namespace cilab::runner
