#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace cilab::schubert {

using BigInt = boost::multiprecision::cpp_int;

/// Polynomial with big-integer coefficients in up to four variables: the
/// Chern roots x_1..x_r (r = 2 or 3) and, as variable 3, the hyperplane
/// class zeta of a projective bundle.
class RootPoly {
 public:
  using Exponents = std::array<int, 4>;
  static constexpr int kZeta = 3;

  explicit RootPoly(int roots);
  static RootPoly constant(int roots, const BigInt& c);
  static RootPoly monomial(int roots, const Exponents& e, const BigInt& c);
  static RootPoly variable(int roots, int index);
  /// sum_i coeffs[i] * x_i (+ coeffs[3] * zeta when given)
  static RootPoly linear(int roots, const std::vector<BigInt>& coeffs);

  int roots() const noexcept { return roots_; }
  const std::map<Exponents, BigInt>& terms() const noexcept { return terms_; }
  bool isZero() const noexcept { return terms_.empty(); }
  BigInt coefficient(const Exponents& e) const;
  /// -1 for zero
  int degree() const;
  bool isHomogeneous() const;
  /// invariant under permutations of the roots (zeta fixed)
  bool isSymmetric() const;
  RootPoly homogeneousPart(int degree) const;
  /// coefficient of zeta^k as a polynomial in the roots
  RootPoly zetaCoefficient(int k) const;
  int zetaDegree() const;

  RootPoly operator+(const RootPoly& o) const;
  RootPoly operator-(const RootPoly& o) const;
  RootPoly operator*(const RootPoly& o) const;
  RootPoly& operator+=(const RootPoly& o) { return *this = *this + o; }
  RootPoly scaled(const BigInt& s) const;
  RootPoly timesZeta(int k) const;
  /// product with every term of total degree > maxDegree dropped
  RootPoly mulTruncated(const RootPoly& o, int maxDegree) const;
  bool operator==(const RootPoly& o) const { return roots_ == o.roots_ && terms_ == o.terms_; }

  std::string toString() const;

 private:
  int roots_;
  std::map<Exponents, BigInt> terms_;
  void add(const Exponents& e, const BigInt& c);
};

/// Graded total Chern class prod (1 + r) of the given roots, up to maxDegree
/// (index = degree).
std::vector<RootPoly> totalChern(const std::vector<RootPoly>& chernRoots, int maxDegree);
/// Graded inverse of 1 + c_1 + c_2 + ..., up to maxDegree.
std::vector<RootPoly> gradedInverse(const std::vector<RootPoly>& c, int maxDegree);

/// Chern roots of Sym^d of the dual tautological bundle: sum_k m_k x_k over
/// exponent vectors m of degree d (in `roots` variables).
std::vector<RootPoly> symPowerRoots(int d, int roots);
/// Top Chern class of Sym^d of the dual tautological bundle:
/// prod over the roots above. For two roots, prod_{i=0..d} (i x_1 + (d-i) x_2).
RootPoly symPowerTopChern(int d, int roots = 2);

/// Schur polynomial s_lambda in `roots` variables (Jacobi-Trudi).
RootPoly schurPolynomial(const std::vector<int>& partition, int roots);

/// (partition, coefficient) pairs of a symmetric polynomial in the roots,
/// partitions in decreasing lex order.
std::vector<std::pair<std::vector<int>, BigInt>> schurExpansion(const RootPoly& f);

struct Integral {
  BigInt value = 0;
  bool degreeMismatch = false;
  bool symmetric = true;
};

/// Degree of the point class of G(k, n+1) (k = roots): coefficient of
/// x_1^n x_2^(n-1) [x_3^(n-2)] in f times the Vandermonde product. A form of
/// the wrong degree integrates to 0 with degreeMismatch set.
Integral integrateGrass(const RootPoly& f, int n);
Integral integrateGrass2(const RootPoly& f, int n);

}  // namespace cilab::schubert
