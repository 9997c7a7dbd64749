#pragma once

#include <vector>

#include "algebra/extension.hpp"
#include "algebra/field.hpp"
#include "algebra/upoly.hpp"

namespace cilab::algebra {

/// Shared, lazily built model of F_{p^k}; the same object is returned for the
/// same (p, k) for the lifetime of the process. Thread-safe.
const ExtensionField& extensionField(const PrimeField& base, int degree);

struct ExtensionRoot {
  int extensionDegree = 1;          // minimal k with the root in F_{p^k}
  ExtensionField::Elem value{};     // coordinates in extensionField(p, k)
  int multiplicity = 1;
};

/// Distinct roots of g (coefficients in `field`) lying in `field`.
/// Cantor-Zassenhaus equal-degree splitting with a fixed internal seed.
std::vector<ExtensionField::Elem> distinctRootsIn(const ExtensionField& field,
                                                  const UPoly<ExtensionField>& g);

/// All roots of g in F_{p^k} for k <= maxExtensionDegree (<= 4), each listed
/// once in the smallest field containing it, with multiplicity. Conjugate
/// roots are listed individually. Throws InvalidInput for g = 0.
std::vector<ExtensionRoot> univariateRootsInExtension(const PrimeField& field,
                                                      const UPoly<PrimeField>& g,
                                                      int maxExtensionDegree);

/// Lift a polynomial over F_p into F_{p^k}.
UPoly<ExtensionField> liftPoly(const ExtensionField& ext, const UPoly<PrimeField>& g);

}  // namespace cilab::algebra
