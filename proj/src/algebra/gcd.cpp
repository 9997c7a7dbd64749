#include "algebra/gcd.hpp"

#include <algorithm>
#include <climits>

#include "algebra/upoly.hpp"
#include "common/error.hpp"

namespace cilab::algebra {

namespace {

using UP = UPoly<PrimeField>;
// coefficient j is the coefficient of v^j, itself a polynomial in u
using BiPoly = std::vector<UP>;

void trimBi(BiPoly& p) {
  while (!p.empty() && p.back().empty()) p.pop_back();
}

UP contentOf(const PrimeField& f, const BiPoly& p) {
  UP g;
  for (const auto& c : p) g = gcdPoly(f, g, c);
  return g;
}

BiPoly divideCoefficients(const PrimeField& f, const BiPoly& p, const UP& c) {
  BiPoly out;
  for (const auto& coeff : p) out.push_back(divModPoly(f, coeff, c).first);
  trimBi(out);
  return out;
}

BiPoly primitivePart(const PrimeField& f, const BiPoly& p) {
  const UP c = contentOf(f, p);
  if (c.empty()) return p;
  return divideCoefficients(f, p, c);
}

// Pseudo-remainder of a by b with respect to v.
BiPoly pseudoRemainder(const PrimeField& f, BiPoly a, const BiPoly& b) {
  const UP& lc = b.back();
  const std::size_t db = b.size() - 1;
  trimBi(a);
  while (!a.empty() && a.size() - 1 >= db) {
    const std::size_t shift = a.size() - 1 - db;
    const UP lead = a.back();
    for (auto& c : a) c = mulPoly(f, c, lc);
    for (std::size_t j = 0; j < b.size(); ++j) {
      a[shift + j] = subPoly(f, a[shift + j], mulPoly(f, lead, b[j]));
    }
    trimBi(a);
  }
  return a;
}

BiPoly bivariateGcdImpl(const PrimeField& f, BiPoly a, BiPoly b) {
  trimBi(a);
  trimBi(b);
  if (a.empty()) return b;
  if (b.empty()) return a;
  const UP content = gcdPoly(f, contentOf(f, a), contentOf(f, b));
  a = primitivePart(f, a);
  b = primitivePart(f, b);
  if (a.size() < b.size()) std::swap(a, b);
  while (!b.empty() && b.size() > 1) {
    BiPoly r = pseudoRemainder(f, a, b);
    a = std::move(b);
    b = r.empty() ? r : primitivePart(f, r);
  }
  BiPoly g;
  if (b.empty()) {
    g = primitivePart(f, a);
  } else {
    g = BiPoly{UP{1}};  // b is a nonzero polynomial in u alone: primitive parts are coprime
  }
  for (auto& c : g) c = mulPoly(f, c, content);
  trimBi(g);
  return g;
}

}  // namespace

PlaneGcd bivariateGcd(std::span<const MultiPoly> forms) {
  if (forms.empty()) throw InvalidInput("gcd of an empty list");
  const PrimeField field = forms.front().field();
  for (const auto& g : forms) {
    if (g.nvars() != 3 || !g.isHomogeneous()) throw InvalidInput("bivariateGcd expects ternary forms");
  }
  PlaneGcd result{false, MultiPoly(field, 3)};
  int minW = INT_MAX;
  BiPoly acc;
  bool any = false;
  for (const auto& g : forms) {
    if (g.isZero()) continue;
    int a = INT_MAX;
    for (const auto& [m, c] : g.terms()) a = std::min(a, m.exponent(2));
    minW = std::min(minW, a);
    BiPoly bi;
    for (const auto& [m, c] : g.terms()) {
      const std::size_t j = static_cast<std::size_t>(m.exponent(1));
      const std::size_t i = static_cast<std::size_t>(m.exponent(0));
      if (bi.size() <= j) bi.resize(j + 1);
      if (bi[j].size() <= i) bi[j].resize(i + 1, 0);
      bi[j][i] = field.add(bi[j][i], c);
    }
    for (auto& c : bi) trim(field, c);
    trimBi(bi);
    acc = any ? bivariateGcdImpl(field, acc, bi) : bi;
    any = true;
  }
  if (!any) {
    result.planeContained = true;
    return result;
  }
  int total = 0;
  for (std::size_t j = 0; j < acc.size(); ++j)
    for (std::size_t i = 0; i < acc[j].size(); ++i)
      if (acc[j][i] != 0) total = std::max(total, static_cast<int>(i + j));
  std::vector<MultiPoly::Term> terms;
  for (std::size_t j = 0; j < acc.size(); ++j) {
    for (std::size_t i = 0; i < acc[j].size(); ++i) {
      if (acc[j][i] == 0) continue;
      const int e[3] = {static_cast<int>(i), static_cast<int>(j), total - static_cast<int>(i + j) + minW};
      terms.emplace_back(Monomial(std::span<const int>(e, 3)), acc[j][i]);
    }
  }
  MultiPoly g = MultiPoly::fromTerms(field, 3, std::move(terms));
  result.gcd = g.scaled(field.inv(g.leadingTerm().second));
  return result;
}

}  // namespace cilab::algebra
