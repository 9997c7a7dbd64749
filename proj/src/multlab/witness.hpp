#pragma once

#include <optional>

#include "algebra/extension.hpp"
#include "multlab/multmap.hpp"

namespace cilab::multlab {

/// A point of the curve: branch plus P^1 point [x : 1], or [1 : 0] at infinity.
/// On the nodal curve the node is reported once, as x = 0 on branch 0.
struct WitnessPoint {
  int branch = 0;
  int extensionDegree = 1;
  bool atInfinity = false;
  algebra::ExtensionField::Elem x{};
  /// "[x:1]" or "[1:0]", x printed in F_{p^k}
  std::string point;
  /// rank of {f_ij(p)} over a basis of m^{-1}(V)
  int rank = 0;
  /// number of independent dependences among the stacked rows whose
  /// multiplier vanishes at p
  int multiplicity = 0;
  /// found among the zeros of a dependence (false: exact fallback)
  bool fromDependence = true;

  bool operator==(const WitnessPoint& o) const noexcept {
    return branch == o.branch && atInfinity == o.atInfinity && extensionDegree == o.extensionDegree && x == o.x;
  }
};

enum class Verdict { FullCodim, WitnessedDrop, Counterexample };
const char* verdictName(Verdict v);

struct DichotomyReport {
  int actualCodim = 0;
  int expectedCodim = 0;
  std::vector<WitnessPoint> witnesses;
  Verdict verdict = Verdict::FullCodim;
  /// a drop point exists over the algebraic closure but not in F_{p^k}, k <= 4
  bool dropBeyondSearch = false;
};

/// Witness search for a hyperplane a with preimageCodim < expectedCodim:
/// for each dependence lambda among the stacked rows, the zeros of the
/// multiplier g_lambda = sum_r lambda_r g_r (in F_{p^k}, k <= e) are candidates;
/// each candidate is certified by evaluating a kernel basis of m^{-1}(V) at
/// it. If no candidate certifies, the c x c minors of the kernel evaluation
/// on each branch are intersected exactly (gcd) and their roots certified.
/// Throws DomainError when the codimension is full.
std::vector<WitnessPoint> findWitnesses(const PrimeField& field, const MultLayout& layout, std::span<const Residue> a);
std::vector<WitnessPoint> findWitnesses(const PrimeField& field, MultMapKind kind, const std::vector<int>& degrees,
                                        std::span<const Residue> a);

DichotomyReport analyzeHyperplane(const PrimeField& field, const MultLayout& layout, std::span<const Residue> a);

/// Brute-force oracle: every point of the curve over F_{p^k}, k <= maxDegree,
/// where the kernel evaluation has rank < c.
std::vector<WitnessPoint> exhaustivePointScan(const PrimeField& field, const MultLayout& layout,
                                              std::span<const Residue> a, int maxDegree);

}  // namespace cilab::multlab
