#pragma once

#include <cstdint>

#include <json.hpp>

#include "multlab/witness.hpp"

namespace cilab::multlab {

struct ScanReport {
  MultMapKind kind = MultMapKind::LineM;
  std::vector<int> degrees;
  std::uint32_t q = 0;
  std::uint64_t totalHyperplanes = 0;
  std::uint64_t fullCodim = 0;
  std::uint64_t witnessedDrop = 0;
  std::uint64_t counterexampleCount = 0;
  /// drops certified only by the exact minor-gcd fallback
  std::uint64_t fallbackWitnessed = 0;
  /// codimension deficit larger than the witness multiplicities summed
  std::uint64_t multiplicityShortfall = 0;
  /// hyperplanes with codimension 0 (must not occur for a != 0)
  std::uint64_t zeroCodim = 0;
  int maxWitnessExtensionDegree = 0;
  /// first counterexamples in scan order (capped)
  std::vector<std::vector<Residue>> counterexamples;
};

/// (q^dim - 1)/(q - 1); throws BudgetExceeded on overflow.
std::uint64_t hyperplaneCount(std::size_t dim, std::uint64_t q);
/// The index-th projective functional: first nonzero coordinate 1, blocks
/// ordered by the position of that coordinate, the rest in base q with the
/// last coordinate least significant.
std::vector<Residue> hyperplaneAt(std::size_t dim, std::uint32_t q, std::uint64_t index);

/// Every hyperplane of the target over F_q. The index range is split into
/// chunks processed by `threads` workers and merged in index order, so the
/// report does not depend on the thread count. Throws BudgetExceeded when
/// the hyperplane count exceeds `budget`.
ScanReport exhaustiveDichotomyScan(MultMapKind kind, const std::vector<int>& degrees, std::uint32_t q,
                                   std::uint64_t budget, unsigned threads = 1);

/// {kind, degrees, q, totals: {...}, counterexamples: [...]}
nlohmann::json toJson(const ScanReport& report);

}  // namespace cilab::multlab
