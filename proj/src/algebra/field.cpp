#include "algebra/field.hpp"

#include "common/error.hpp"

namespace cilab::algebra {

bool isPrime(std::uint64_t value) {
  if (value < 2) return false;
  if (value % 2 == 0) return value == 2;
  for (std::uint64_t d = 3; d * d <= value; d += 2) {
    if (value % d == 0) return false;
  }
  return true;
}

PrimeField::PrimeField(std::uint32_t p, bool allowTwo) : p_(p) {
  if (p >= (1u << 31) || !isPrime(p)) {
    throw InvalidInput("field modulus must be a prime below 2^31, got " + std::to_string(p));
  }
  if (p == 2 && !allowTwo) {
    throw InvalidInput("characteristic 2 is not supported");
  }
}

PrimeField::Elem PrimeField::pow(Elem a, std::uint64_t e) const noexcept {
  std::uint64_t base = a % p_;
  std::uint64_t result = 1 % p_;
  while (e > 0) {
    if (e & 1u) result = result * base % p_;
    base = base * base % p_;
    e >>= 1;
  }
  return static_cast<Elem>(result);
}

PrimeField::Elem PrimeField::inv(Elem a) const {
  if (a % p_ == 0) throw DomainError("inverse of zero");
  // extended Euclid
  std::int64_t t = 0, newT = 1;
  std::int64_t r = p_, newR = a;
  while (newR != 0) {
    std::int64_t q = r / newR;
    std::int64_t tmp = t - q * newT;
    t = newT;
    newT = tmp;
    tmp = r - q * newR;
    r = newR;
    newR = tmp;
  }
  if (t < 0) t += p_;
  return static_cast<Elem>(t);
}

}  // namespace cilab::algebra
