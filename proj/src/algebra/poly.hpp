#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "algebra/field.hpp"

namespace cilab::algebra {

/// Exponent vector packed one byte per variable, variable 0 in the most
/// significant byte, so integer order on the packed value is lex order with
/// x0 > x1 > ... . At most 8 variables, exponents at most 255.
class Monomial {
 public:
  static constexpr int kMaxVars = 8;

  constexpr Monomial() = default;
  explicit Monomial(std::span<const int> exponents);

  static constexpr Monomial fromBits(std::uint64_t bits) {
    Monomial m;
    m.bits_ = bits;
    return m;
  }
  static Monomial variable(int index, int power = 1);

  constexpr int exponent(int i) const noexcept {
    return static_cast<int>((bits_ >> (8 * (kMaxVars - 1 - i))) & 0xffu);
  }
  int degree() const noexcept;
  std::vector<int> exponents(int nvars) const;
  bool divides(Monomial other) const noexcept;

  Monomial operator*(Monomial o) const noexcept { return fromBits(bits_ + o.bits_); }
  /// Requires divides(*this).
  Monomial operator/(Monomial o) const noexcept { return fromBits(bits_ - o.bits_); }

  constexpr std::uint64_t bits() const noexcept { return bits_; }
  constexpr auto operator<=>(const Monomial&) const = default;

 private:
  std::uint64_t bits_ = 0;
};

/// All monomials of the given total degree in nvars variables, in descending
/// lex order (x0^d first). Their count is C(d + nvars - 1, nvars - 1).
std::vector<Monomial> monomialsOfDegree(int nvars, int degree);

/// Sparse multivariate polynomial over a prime field. Terms are kept sorted
/// by ascending monomial with no zero coefficients.
class MultiPoly {
 public:
  using Term = std::pair<Monomial, Residue>;

  MultiPoly(const PrimeField& field, int nvars);

  static MultiPoly constant(const PrimeField& field, int nvars, Residue c);
  static MultiPoly variable(const PrimeField& field, int nvars, int index);
  static MultiPoly monomial(const PrimeField& field, int nvars, Monomial m, Residue c);
  /// Combines duplicate monomials and drops zeros.
  static MultiPoly fromTerms(const PrimeField& field, int nvars, std::vector<Term> terms);
  /// Convenience for fixtures and tests: (coefficient, exponent vector) pairs.
  static MultiPoly fromExponents(const PrimeField& field, int nvars,
                                 const std::vector<std::pair<std::int64_t, std::vector<int>>>& terms);
  /// Linear form sum_i coeffs[i] * x_i.
  static MultiPoly linearForm(const PrimeField& field, std::span<const Residue> coeffs);

  const PrimeField& field() const noexcept { return field_; }
  int nvars() const noexcept { return nvars_; }
  std::span<const Term> terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool isZero() const noexcept { return terms_.empty(); }
  /// Maximal total degree; -1 for the zero polynomial.
  int degree() const noexcept;
  bool isHomogeneous() const noexcept;
  Residue coefficient(Monomial m) const noexcept;
  /// Largest term in lex order (requires nonzero).
  const Term& leadingTerm() const { return terms_.back(); }

  MultiPoly operator+(const MultiPoly& o) const;
  MultiPoly operator-(const MultiPoly& o) const;
  MultiPoly operator-() const;
  MultiPoly operator*(const MultiPoly& o) const;
  MultiPoly& operator+=(const MultiPoly& o) { return *this = *this + o; }
  MultiPoly& operator-=(const MultiPoly& o) { return *this = *this - o; }
  MultiPoly scaled(Residue s) const;
  MultiPoly mulMonomial(Monomial m, Residue c) const;
  MultiPoly pow(int e) const;

  bool operator==(const MultiPoly& o) const noexcept {
    return nvars_ == o.nvars_ && field_ == o.field_ && terms_ == o.terms_;
  }

  Residue evaluate(std::span<const Residue> point) const;

  template <class F>
  typename F::Elem evaluateIn(const F& ext, std::span<const typename F::Elem> point) const;

  /// f(forms[0], ..., forms[nvars-1]); forms share one variable count, which
  /// becomes the variable count of the result. Horner scheme over variables.
  MultiPoly substitute(std::span<const MultiPoly> forms) const;
  MultiPoly partial(int var) const;
  /// Exact quotient f / d, or nullopt when d does not divide f.
  std::optional<MultiPoly> divideExact(const MultiPoly& d) const;

  std::string toString() const;

 private:
  PrimeField field_;
  int nvars_;
  std::vector<Term> terms_;

  MultiPoly substituteRange(std::span<const Term> terms, int var,
                            std::span<const MultiPoly> forms, int targetVars) const;
};

/// Substitution restricted to linear homogeneous forms. Throws InvalidInput
/// on a variable-count mismatch or a non-linear form.
MultiPoly substituteLinearForms(const MultiPoly& f, std::span<const MultiPoly> forms);

/// Random homogeneous form with uniformly random coefficients on every
/// monomial of the degree; `next` supplies raw 64-bit randomness.
template <class Rng>
MultiPoly randomForm(const PrimeField& field, int nvars, int degree, Rng& next) {
  std::vector<MultiPoly::Term> terms;
  for (auto m : monomialsOfDegree(nvars, degree)) {
    terms.emplace_back(m, static_cast<Residue>(next() % field.modulus()));
  }
  return MultiPoly::fromTerms(field, nvars, std::move(terms));
}

template <class F>
typename F::Elem MultiPoly::evaluateIn(const F& ext, std::span<const typename F::Elem> point) const {
  auto acc = ext.zero();
  for (const auto& [m, c] : terms_) {
    auto value = ext.embed(c);
    for (int i = 0; i < nvars_; ++i) {
      const int e = m.exponent(i);
      if (e > 0) value = ext.mul(value, ext.pow(point[i], static_cast<std::uint64_t>(e)));
    }
    acc = ext.add(acc, value);
  }
  return acc;
}

}  // namespace cilab::algebra
