#pragma once

namespace cilab {

#ifndef CILAB_VERSION
#define CILAB_VERSION "0.0.0"
#endif

inline constexpr const char* kToolVersion = CILAB_VERSION;

// Bumped whenever the monomial order, chart normalization or section basis
// order changes, so stored fixtures and reports can detect the drift.
// Terms: descending lex with x0 > x1 > ...; lines and planes: RREF rows;
// quadrics: (u^2, uv, uw, v^2, vw, w^2), first nonzero coefficient 1;
// binary forms: index = t-exponent.
inline constexpr const char* kConventionsTag = "cilab-conventions/1";

}  // namespace cilab
