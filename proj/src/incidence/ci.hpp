#pragma once

#include <string>
#include <vector>

#include "algebra/field.hpp"
#include "algebra/poly.hpp"

namespace cilab::incidence {

using algebra::MultiPoly;
using algebra::PrimeField;
using algebra::Residue;

/// Ambient dimension and degree type (d_1, ..., d_c) of a complete intersection.
struct CIType {
  int n = 0;
  std::vector<int> degrees;

  int c() const noexcept { return static_cast<int>(degrees.size()); }
  int degreeSum() const noexcept;
  /// Throws InvalidInput unless n >= 2, c >= 1 and every d_i >= 2.
  void validate() const;
  /// "n=4 d=(2,2)"
  std::string label() const;

  bool operator==(const CIType&) const = default;
};

/// Expected dimensions and the emptiness/smoothness/connectedness ranges.
/// With S = d_1 + ... + d_c:
///   lines:  dim 2n-2-(S+c), empty for general X if S+c > 2n-2, smooth range
///           S+c <= 2n-2, connected range S+c <= 2n-3;
///   conics: dim 3n-1-2S-c, emptiness threshold S+c/2 > (3n-2)/2, smooth range
///           S+c/2 <= (3n-2)/2, connected range S+c/2 <= (3n-3)/2.
/// The emptiness threshold and the sign of the conic dimension can disagree
/// (exactly when 2S+c = 3n-1); both are reported, with a warning. The
/// alternative connectedness range S+c <= (3n-3)/2 is reported next to it.
struct ExpectedDims {
  int linesDim = 0;
  int conicsDim = 0;
  bool linesEmptyForGeneral = false;
  bool linesSmoothInRange = false;
  bool linesConnectedInRange = false;
  bool conicsSmoothInRange = false;
  bool conicsConnectedInRange = false;
  bool conicsConnectedAltRange = false;
  bool thresholdConicEmptyFlag = false;
  bool consistencyConicEmptyFlag = false;
  bool conicThresholdDisagreement = false;
  bool connectedRangeDisagreement = false;
  std::vector<std::string> warnings;
};

ExpectedDims expectedDims(const CIType& type);

/// c forms over one prime field, f_i homogeneous of degree d_i in n+1 variables.
class CompleteIntersection {
 public:
  CompleteIntersection(const CIType& type, std::vector<MultiPoly> forms);

  const CIType& type() const noexcept { return type_; }
  const std::vector<MultiPoly>& forms() const noexcept { return forms_; }
  const PrimeField& field() const noexcept { return forms_.front().field(); }
  int n() const noexcept { return type_.n; }

 private:
  CIType type_;
  std::vector<MultiPoly> forms_;
};

/// x_0^d + ... + x_n^d
CompleteIntersection fermatHypersurface(const PrimeField& field, int n, int degree);
/// x_0 x_3 - x_1 x_2 in P^3
CompleteIntersection splitQuadricSurface(const PrimeField& field);

}  // namespace cilab::incidence
