#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "algebra/field.hpp"
#include "algebra/upoly.hpp"

namespace cilab::algebra {

/// F_{p^k} = F_p[y]/(m(y)) for 1 <= k <= 4. The modulus m is the first monic
/// irreducible polynomial of degree k when candidates are ordered by their
/// base-p encoding (constant term least significant), so every (p, k) pair has
/// one fixed, reproducible model. Degree 1 is the prime field itself.
class ExtensionField {
 public:
  static constexpr int kMaxDegree = 4;
  using Elem = std::array<Residue, kMaxDegree>;

  ExtensionField(const PrimeField& base, int degree);

  const PrimeField& base() const noexcept { return base_; }
  int degree() const noexcept { return k_; }
  std::uint32_t characteristic() const noexcept { return base_.modulus(); }
  /// p^k
  std::uint64_t order() const noexcept { return order_; }
  /// Coefficients m_0..m_k of the defining modulus, m_k = 1.
  const std::array<Residue, kMaxDegree + 1>& modulusCoefficients() const noexcept { return modulus_; }

  Elem zero() const noexcept { return Elem{}; }
  Elem one() const noexcept { return embed(1); }
  Elem embed(Residue a) const noexcept {
    Elem e{};
    e[0] = a;
    return e;
  }
  /// The generator y of the extension (requires k >= 2).
  Elem generator() const noexcept {
    Elem e{};
    if (k_ >= 2) e[1] = 1;
    return e;
  }
  bool isZero(const Elem& a) const noexcept { return a == Elem{}; }
  bool equal(const Elem& a, const Elem& b) const noexcept { return a == b; }

  Elem add(const Elem& a, const Elem& b) const noexcept;
  Elem sub(const Elem& a, const Elem& b) const noexcept;
  Elem neg(const Elem& a) const noexcept;
  Elem mul(const Elem& a, const Elem& b) const noexcept;
  Elem pow(Elem a, std::uint64_t e) const noexcept;
  Elem inv(const Elem& a) const;
  Elem div(const Elem& a, const Elem& b) const { return mul(a, inv(b)); }
  Elem frobenius(const Elem& a) const noexcept { return pow(a, base_.modulus()); }

  /// Element enumeration: base-p digits of idx, idx in [0, p^k).
  Elem fromIndex(std::uint64_t idx) const noexcept;
  /// Smallest j dividing k with a in F_{p^j}.
  int minimalDegree(const Elem& a) const noexcept;
  /// True iff a lies in the prime field.
  bool isBase(const Elem& a) const noexcept;

  std::string toString(const Elem& a) const;

 private:
  PrimeField base_;
  int k_;
  std::uint64_t order_;
  std::array<Residue, kMaxDegree + 1> modulus_{};
};

/// Rabin irreducibility test over F_p.
bool isIrreducible(const PrimeField& field, const UPoly<PrimeField>& f);

}  // namespace cilab::algebra
