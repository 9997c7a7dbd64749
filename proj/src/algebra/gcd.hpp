#pragma once

#include <span>

#include "algebra/poly.hpp"

namespace cilab::algebra {

struct PlaneGcd {
  /// Every input was zero: the plane lies inside X, no gcd is defined.
  bool planeContained = false;
  /// Homogeneous gcd in (u, v, w), leading lex coefficient 1.
  MultiPoly gcd;
};

/// Greatest common divisor of homogeneous forms in three variables (the
/// restrictions of the defining forms to a plane). Zero inputs are ignored.
///
/// Each form is split as w^a * f' with w not dividing f', f' is dehomogenized
/// at w = 1 (a degree-preserving, multiplicative bijection on such forms), and
/// the bivariate gcd is taken in F_p[u][v] by contents and primitive
/// pseudo-remainder sequences. The result is rehomogenized and multiplied by
/// w^(min a).
PlaneGcd bivariateGcd(std::span<const MultiPoly> forms);

}  // namespace cilab::algebra
