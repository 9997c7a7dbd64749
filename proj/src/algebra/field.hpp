#pragma once

#include <cstdint>
#include <string>

namespace cilab::algebra {

using Residue = std::uint32_t;

bool isPrime(std::uint64_t value);

/// Arithmetic in Z/pZ. Elements are plain residues in [0, p); the field object
/// carries the modulus. Moduli are restricted to p < 2^31 so that a sum of two
/// residues never overflows 32 bits.
class PrimeField {
 public:
  using Elem = Residue;

  /// Throws InvalidInput unless p is prime and p < 2^31. `allowTwo` exists for
  /// pure combinatorial enumeration; every algebraic entry point uses the
  /// default, which rejects characteristic 2.
  explicit PrimeField(std::uint32_t p, bool allowTwo = false);

  std::uint32_t modulus() const noexcept { return p_; }
  std::uint32_t characteristic() const noexcept { return p_; }
  int degree() const noexcept { return 1; }
  std::uint64_t order() const noexcept { return p_; }

  Elem zero() const noexcept { return 0; }
  Elem one() const noexcept { return 1; }
  Elem embed(Residue a) const noexcept { return a; }
  bool isZero(Elem a) const noexcept { return a == 0; }
  bool equal(Elem a, Elem b) const noexcept { return a == b; }

  Elem add(Elem a, Elem b) const noexcept {
    Elem s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Elem sub(Elem a, Elem b) const noexcept { return a >= b ? a - b : a + p_ - b; }
  Elem neg(Elem a) const noexcept { return a == 0 ? 0 : p_ - a; }
  Elem mul(Elem a, Elem b) const noexcept {
    return static_cast<Elem>(static_cast<std::uint64_t>(a) * b % p_);
  }
  Elem pow(Elem a, std::uint64_t e) const noexcept;
  /// Throws DomainError on zero.
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

  Elem fromInt(std::int64_t v) const noexcept {
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    return static_cast<Elem>(r < 0 ? r + p_ : r);
  }
  /// Representative in (-p/2, p/2], used for readable output.
  std::int64_t toSigned(Elem a) const noexcept {
    return a > p_ / 2 ? static_cast<std::int64_t>(a) - p_ : a;
  }
  /// Element enumeration for exhaustive scans: index in [0, p).
  Elem fromIndex(std::uint64_t idx) const noexcept { return static_cast<Elem>(idx); }

  bool operator==(const PrimeField& o) const noexcept { return p_ == o.p_; }

 private:
  std::uint32_t p_;
};

}  // namespace cilab::algebra
