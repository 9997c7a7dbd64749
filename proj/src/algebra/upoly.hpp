#pragma once

// Dense univariate polynomials over any field type F exposing
// Elem/zero/one/isZero/add/sub/neg/mul/inv (PrimeField, ExtensionField).
// Coefficient i multiplies x^i; the zero polynomial is the empty vector.

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

namespace cilab::algebra {

template <class F>
using UPoly = std::vector<typename F::Elem>;

template <class F>
void trim(const F& field, UPoly<F>& a) {
  while (!a.empty() && field.isZero(a.back())) a.pop_back();
}

template <class F>
int degreeOf(const UPoly<F>& a) {
  return static_cast<int>(a.size()) - 1;
}

template <class F>
UPoly<F> addPoly(const F& field, const UPoly<F>& a, const UPoly<F>& b) {
  UPoly<F> r(std::max(a.size(), b.size()), field.zero());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = field.add(r[i], b[i]);
  trim(field, r);
  return r;
}

template <class F>
UPoly<F> subPoly(const F& field, const UPoly<F>& a, const UPoly<F>& b) {
  UPoly<F> r(std::max(a.size(), b.size()), field.zero());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = field.sub(r[i], b[i]);
  trim(field, r);
  return r;
}

template <class F>
UPoly<F> mulPoly(const F& field, const UPoly<F>& a, const UPoly<F>& b) {
  if (a.empty() || b.empty()) return {};
  UPoly<F> r(a.size() + b.size() - 1, field.zero());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (field.isZero(a[i])) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      r[i + j] = field.add(r[i + j], field.mul(a[i], b[j]));
    }
  }
  trim(field, r);
  return r;
}

template <class F>
UPoly<F> scalePoly(const F& field, const UPoly<F>& a, typename F::Elem s) {
  UPoly<F> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = field.mul(a[i], s);
  trim(field, r);
  return r;
}

/// Quotient and remainder; divisor must be nonzero.
template <class F>
std::pair<UPoly<F>, UPoly<F>> divModPoly(const F& field, const UPoly<F>& a, const UPoly<F>& b) {
  UPoly<F> rem = a;
  trim(field, rem);
  if (rem.size() < b.size()) return {UPoly<F>{}, rem};
  UPoly<F> quot(rem.size() - b.size() + 1, field.zero());
  const auto leadInv = field.inv(b.back());
  while (!rem.empty() && rem.size() >= b.size()) {
    const std::size_t shift = rem.size() - b.size();
    const auto c = field.mul(rem.back(), leadInv);
    quot[shift] = c;
    for (std::size_t j = 0; j < b.size(); ++j) {
      rem[shift + j] = field.sub(rem[shift + j], field.mul(c, b[j]));
    }
    rem.pop_back();
    trim(field, rem);
  }
  trim(field, quot);
  return {quot, rem};
}

template <class F>
UPoly<F> modPoly(const F& field, const UPoly<F>& a, const UPoly<F>& b) {
  return divModPoly(field, a, b).second;
}

template <class F>
UPoly<F> monicPoly(const F& field, const UPoly<F>& a) {
  if (a.empty()) return a;
  return scalePoly(field, a, field.inv(a.back()));
}

/// Monic gcd (zero if both inputs are zero).
template <class F>
UPoly<F> gcdPoly(const F& field, UPoly<F> a, UPoly<F> b) {
  trim(field, a);
  trim(field, b);
  while (!b.empty()) {
    UPoly<F> r = modPoly(field, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return monicPoly(field, a);
}

/// base^e mod m.
template <class F>
UPoly<F> powModPoly(const F& field, UPoly<F> base, std::uint64_t e, const UPoly<F>& m) {
  UPoly<F> result{field.one()};
  result = modPoly(field, result, m);
  base = modPoly(field, base, m);
  while (e > 0) {
    if (e & 1u) result = modPoly(field, mulPoly(field, result, base), m);
    base = modPoly(field, mulPoly(field, base, base), m);
    e >>= 1;
  }
  return result;
}

template <class F>
typename F::Elem evalPoly(const F& field, const UPoly<F>& a, typename F::Elem x) {
  auto acc = field.zero();
  for (std::size_t i = a.size(); i-- > 0;) acc = field.add(field.mul(acc, x), a[i]);
  return acc;
}

}  // namespace cilab::algebra
