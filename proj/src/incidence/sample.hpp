#pragma once

#include <cstdint>
#include <random>

#include "incidence/curve.hpp"

namespace cilab::incidence {

/// A uniformly random line (RREF of a random rank-2 matrix).
LineChartPoint randomLine(const PrimeField& field, int n, std::mt19937_64& rng);
/// A random conic of the requested kind in a random plane. Line pairs are
/// l1^2 - a l2^2 with random a != 0, so split and conjugate pairs both occur.
ConicChartPoint randomConic(const PrimeField& field, int n, ConicKind kind, std::mt19937_64& rng);

/// A complete intersection of the given type containing the curve:
/// f_i = sum_j y_j(x) R_{i,j}(x) (+ L_2(x) R_i(x) for a conic) with uniformly
/// random cofactors R, where y_j are the normal coordinates of the curve.
/// Deterministic in the seed (std::mt19937_64).
CompleteIntersection sampleThroughCurve(const CIType& type, const CurveModel& curve, std::uint64_t seed);

/// Forms with uniformly random coefficients (std::mt19937_64 seeded with `seed`).
CompleteIntersection randomCompleteIntersection(const PrimeField& field, const CIType& type, std::uint64_t seed);

}  // namespace cilab::incidence
