#include "algebra/extension.hpp"

#include <sstream>

#include "common/error.hpp"

namespace cilab::algebra {

namespace {

// x^(p^j) mod f, by j successive p-th powers.
UPoly<PrimeField> frobeniusPower(const PrimeField& field, const UPoly<PrimeField>& f, int j) {
  UPoly<PrimeField> h{0, 1};
  for (int i = 0; i < j; ++i) h = powModPoly(field, h, field.modulus(), f);
  return h;
}

}  // namespace

bool isIrreducible(const PrimeField& field, const UPoly<PrimeField>& f) {
  const int k = degreeOf<PrimeField>(f);
  if (k < 1) return false;
  if (k == 1) return true;
  const UPoly<PrimeField> x{0, 1};
  const auto full = frobeniusPower(field, f, k);
  if (!subPoly(field, full, modPoly(field, x, f)).empty()) return false;
  for (int r = 2; r <= k; ++r) {
    if (k % r != 0 || !isPrime(static_cast<std::uint64_t>(r))) continue;
    const auto partial = subPoly(field, frobeniusPower(field, f, k / r), x);
    if (degreeOf<PrimeField>(gcdPoly(field, partial, f)) != 0) return false;
  }
  return true;
}

ExtensionField::ExtensionField(const PrimeField& base, int degree) : base_(base), k_(degree) {
  if (degree < 1 || degree > kMaxDegree) {
    throw InvalidInput("extension degree must be in [1, 4], got " + std::to_string(degree));
  }
  const std::uint64_t p = base.modulus();
  order_ = 1;
  for (int i = 0; i < k_; ++i) {
    if (order_ > (std::uint64_t{1} << 62) / p) throw InvalidInput("extension field order exceeds 2^62");
    order_ *= p;
  }
  modulus_.fill(0);
  if (k_ == 1) {
    modulus_[1] = 1;  // y, so elements are plain residues
    return;
  }
  for (std::uint64_t code = 0;; ++code) {
    UPoly<PrimeField> cand(static_cast<std::size_t>(k_) + 1, 0);
    std::uint64_t c = code;
    for (int i = 0; i < k_; ++i) {
      cand[i] = static_cast<Residue>(c % p);
      c /= p;
    }
    if (c != 0) throw Error("no irreducible polynomial found");
    cand[k_] = 1;
    if (cand[0] == 0) continue;
    if (isIrreducible(base_, cand)) {
      for (int i = 0; i <= k_; ++i) modulus_[i] = cand[i];
      return;
    }
  }
}

ExtensionField::Elem ExtensionField::add(const Elem& a, const Elem& b) const noexcept {
  Elem r{};
  for (int i = 0; i < k_; ++i) r[i] = base_.add(a[i], b[i]);
  return r;
}

ExtensionField::Elem ExtensionField::sub(const Elem& a, const Elem& b) const noexcept {
  Elem r{};
  for (int i = 0; i < k_; ++i) r[i] = base_.sub(a[i], b[i]);
  return r;
}

ExtensionField::Elem ExtensionField::neg(const Elem& a) const noexcept {
  Elem r{};
  for (int i = 0; i < k_; ++i) r[i] = base_.neg(a[i]);
  return r;
}

ExtensionField::Elem ExtensionField::mul(const Elem& a, const Elem& b) const noexcept {
  if (k_ == 1) return embed(base_.mul(a[0], b[0]));
  std::array<std::uint64_t, 2 * kMaxDegree - 1> prod{};
  const std::uint64_t p = base_.modulus();
  for (int i = 0; i < k_; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < k_; ++j) prod[i + j] = (prod[i + j] + std::uint64_t{a[i]} * b[j]) % p;
  }
  // reduce by the monic modulus from the top
  for (int d = 2 * k_ - 2; d >= k_; --d) {
    const std::uint64_t c = prod[d];
    if (c == 0) continue;
    prod[d] = 0;
    for (int i = 0; i < k_; ++i) {
      prod[d - k_ + i] = (prod[d - k_ + i] + (p - c) * modulus_[i]) % p;
    }
  }
  Elem r{};
  for (int i = 0; i < k_; ++i) r[i] = static_cast<Residue>(prod[i]);
  return r;
}

ExtensionField::Elem ExtensionField::pow(Elem a, std::uint64_t e) const noexcept {
  Elem result = one();
  while (e > 0) {
    if (e & 1u) result = mul(result, a);
    a = mul(a, a);
    e >>= 1;
  }
  return result;
}

ExtensionField::Elem ExtensionField::inv(const Elem& a) const {
  if (isZero(a)) throw DomainError("inverse of zero in extension field");
  return pow(a, order_ - 2);
}

ExtensionField::Elem ExtensionField::fromIndex(std::uint64_t idx) const noexcept {
  Elem e{};
  const std::uint64_t p = base_.modulus();
  for (int i = 0; i < k_; ++i) {
    e[i] = static_cast<Residue>(idx % p);
    idx /= p;
  }
  return e;
}

int ExtensionField::minimalDegree(const Elem& a) const noexcept {
  for (int j = 1; j < k_; ++j) {
    if (k_ % j != 0) continue;
    Elem b = a;
    for (int i = 0; i < j; ++i) b = frobenius(b);
    if (b == a) return j;
  }
  return k_;
}

bool ExtensionField::isBase(const Elem& a) const noexcept {
  for (int i = 1; i < k_; ++i)
    if (a[i] != 0) return false;
  return true;
}

std::string ExtensionField::toString(const Elem& a) const {
  if (k_ == 1) return std::to_string(a[0]);
  std::ostringstream os;
  os << '[';
  for (int i = 0; i < k_; ++i) os << (i ? "," : "") << a[i];
  os << ']';
  return os.str();
}

}  // namespace cilab::algebra
