#pragma once

#include "incidence/ci.hpp"
#include "schubert/chern.hpp"

namespace cilab::schubert {

using SchurTerms = std::vector<std::pair<std::vector<int>, BigInt>>;

struct LineCount {
  BigInt count = 0;
  /// prod_i c_top(Sym^{d_i} S^*) on G(2, n+1)
  RootPoly integrand{2};
  SchurTerms schur;
};

/// Number of lines on a general complete intersection with expected line
/// dimension 0. Throws DomainError otherwise.
LineCount lineCountDetail(const incidence::CIType& type);
BigInt lineCount(const incidence::CIType& type);

/// Conics: P = P(E) over G(3, n+1), E = Sym^2 S^* (the plane's quadrics),
/// zeta = c_1(O(1)), O(-1) the conic's equation. The fibre of F_d is
/// H^0(C, O(d)) = Sym^d S^* / (q Sym^{d-2} S^*), so
///   c(F_d) = c(Sym^d S^*) / c(Sym^{d-2} S^* (x) O(-1)),
/// and the count is the degree of prod_i c_{2 d_i + 1}(F_{d_i}).
struct ConicCount {
  BigInt count = 0;
  /// pi_* zeta^k = s_{k-5}(E), s = c(E)^{-1}
  BigInt viaSegre = 0;
  /// reduce with sum_i c_i(E) zeta^{6-i} = 0, keep the zeta^5 coefficient
  BigInt viaRelation = 0;
  bool pathsAgree = false;
  /// pi_* of the integrand, a class on G(3, n+1)
  RootPoly pushforward{3};
  SchurTerms schur;
};

/// Throws DomainError when the expected conic dimension is not 0, and
/// cilab::Error when the two evaluation paths disagree or a class fails to
/// be symmetric (an implementation fault).
ConicCount conicCountDetail(const incidence::CIType& type);
BigInt conicCount(const incidence::CIType& type);

/// pi_* zeta^k as a class on G(3, n+1).
RootPoly pushforwardZetaPower(int k);
/// Top Chern class of F_d in (x_1, x_2, x_3, zeta).
RootPoly conicBundleTopChern(int d);

}  // namespace cilab::schubert
