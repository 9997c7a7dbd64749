#include "schubert/chern.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>
#include <sstream>

#include "common/error.hpp"

namespace cilab::schubert {

RootPoly::RootPoly(int roots) : roots_(roots) {
  if (roots < 1 || roots > 3) throw InvalidInput("root count must be 1, 2 or 3");
}

RootPoly RootPoly::constant(int roots, const BigInt& c) {
  RootPoly p(roots);
  p.add({0, 0, 0, 0}, c);
  return p;
}

RootPoly RootPoly::monomial(int roots, const Exponents& e, const BigInt& c) {
  RootPoly p(roots);
  p.add(e, c);
  return p;
}

RootPoly RootPoly::variable(int roots, int index) {
  RootPoly p(roots);
  Exponents e{};
  e[static_cast<std::size_t>(index)] = 1;
  p.add(e, 1);
  return p;
}

RootPoly RootPoly::linear(int roots, const std::vector<BigInt>& coeffs) {
  RootPoly p(roots);
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    Exponents e{};
    e[i] = 1;
    p.add(e, coeffs[i]);
  }
  return p;
}

void RootPoly::add(const Exponents& e, const BigInt& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

BigInt RootPoly::coefficient(const Exponents& e) const {
  const auto it = terms_.find(e);
  return it == terms_.end() ? BigInt(0) : it->second;
}

namespace {
int totalDegree(const RootPoly::Exponents& e) { return e[0] + e[1] + e[2] + e[3]; }
}  // namespace

int RootPoly::degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, totalDegree(e));
  return d;
}

bool RootPoly::isHomogeneous() const {
  const int d = degree();
  return std::all_of(terms_.begin(), terms_.end(), [&](const auto& t) { return totalDegree(t.first) == d; });
}

bool RootPoly::isSymmetric() const {
  std::vector<int> perm(static_cast<std::size_t>(roots_));
  std::iota(perm.begin(), perm.end(), 0);
  while (std::next_permutation(perm.begin(), perm.end())) {
    for (const auto& [e, c] : terms_) {
      Exponents p = e;
      for (int i = 0; i < roots_; ++i) p[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])] = e[static_cast<std::size_t>(i)];
      if (coefficient(p) != c) return false;
    }
  }
  return true;
}

RootPoly RootPoly::homogeneousPart(int d) const {
  RootPoly out(roots_);
  for (const auto& [e, c] : terms_)
    if (totalDegree(e) == d) out.terms_.emplace(e, c);
  return out;
}

RootPoly RootPoly::zetaCoefficient(int k) const {
  RootPoly out(roots_);
  for (const auto& [e, c] : terms_)
    if (e[kZeta] == k) {
      Exponents f = e;
      f[kZeta] = 0;
      out.terms_.emplace(f, c);
    }
  return out;
}

int RootPoly::zetaDegree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, e[kZeta]);
  return d;
}

RootPoly RootPoly::operator+(const RootPoly& o) const {
  RootPoly out = *this;
  for (const auto& [e, c] : o.terms_) out.add(e, c);
  return out;
}

RootPoly RootPoly::operator-(const RootPoly& o) const {
  RootPoly out = *this;
  for (const auto& [e, c] : o.terms_) out.add(e, -c);
  return out;
}

RootPoly RootPoly::mulTruncated(const RootPoly& o, int maxDegree) const {
  RootPoly out(std::max(roots_, o.roots_));
  for (const auto& [e1, c1] : terms_)
    for (const auto& [e2, c2] : o.terms_) {
      Exponents e{e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2], e1[3] + e2[3]};
      if (totalDegree(e) <= maxDegree) out.add(e, c1 * c2);
    }
  return out;
}

RootPoly RootPoly::operator*(const RootPoly& o) const { return mulTruncated(o, std::numeric_limits<int>::max()); }

RootPoly RootPoly::scaled(const BigInt& s) const {
  RootPoly out(roots_);
  if (s == 0) return out;
  for (const auto& [e, c] : terms_) out.terms_.emplace(e, c * s);
  return out;
}

RootPoly RootPoly::timesZeta(int k) const {
  RootPoly out(roots_);
  for (const auto& [e, c] : terms_) {
    Exponents f = e;
    f[kZeta] += k;
    out.terms_.emplace(f, c);
  }
  return out;
}

std::string RootPoly::toString() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    BigInt mag = c < 0 ? BigInt(-c) : c;
    os << (c < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
    first = false;
    const bool unit = totalDegree(e) > 0 && mag == 1;
    if (!unit) os << mag;
    bool needStar = !unit;
    for (int v = 0; v < 4; ++v) {
      if (!e[static_cast<std::size_t>(v)]) continue;
      if (needStar) os << "*";
      os << (v == kZeta ? std::string("z") : "x" + std::to_string(v + 1));
      if (e[static_cast<std::size_t>(v)] > 1) os << "^" << e[static_cast<std::size_t>(v)];
      needStar = true;
    }
  }
  return os.str();
}

std::vector<RootPoly> totalChern(const std::vector<RootPoly>& chernRoots, int maxDegree) {
  const int roots = chernRoots.empty() ? 3 : chernRoots.front().roots();
  RootPoly acc = RootPoly::constant(roots, 1);
  for (const auto& r : chernRoots) acc = acc.mulTruncated(RootPoly::constant(roots, 1) + r, maxDegree);
  std::vector<RootPoly> graded;
  for (int d = 0; d <= maxDegree; ++d) graded.push_back(acc.homogeneousPart(d));
  return graded;
}

std::vector<RootPoly> gradedInverse(const std::vector<RootPoly>& c, int maxDegree) {
  const int roots = c.front().roots();
  std::vector<RootPoly> s{RootPoly::constant(roots, 1)};
  for (int k = 1; k <= maxDegree; ++k) {
    RootPoly acc(roots);
    for (int i = 1; i <= k && i < static_cast<int>(c.size()); ++i) acc += c[static_cast<std::size_t>(i)] * s[static_cast<std::size_t>(k - i)];
    s.push_back(acc.scaled(-1));
  }
  return s;
}

std::vector<RootPoly> symPowerRoots(int d, int roots) {
  std::vector<RootPoly> out;
  if (d < 0) return out;
  std::vector<int> m(static_cast<std::size_t>(roots), 0);
  // exponent vectors of degree d, first variable descending
  std::function<void(int, int)> rec = [&](int pos, int left) {
    if (pos == roots - 1) {
      m[static_cast<std::size_t>(pos)] = left;
      std::vector<BigInt> coeffs(m.begin(), m.end());
      out.push_back(RootPoly::linear(roots, coeffs));
      return;
    }
    for (int k = left; k >= 0; --k) {
      m[static_cast<std::size_t>(pos)] = k;
      rec(pos + 1, left - k);
    }
  };
  rec(0, d);
  return out;
}

RootPoly symPowerTopChern(int d, int roots) {
  if (d < 1) throw InvalidInput("symmetric power degree must be at least 1");
  RootPoly acc = RootPoly::constant(roots, 1);
  for (const auto& r : symPowerRoots(d, roots)) acc = acc * r;
  return acc;
}

namespace {

// complete homogeneous symmetric polynomial h_k
RootPoly completeHomogeneous(int k, int roots) {
  RootPoly out(roots);
  if (k < 0) return out;
  RootPoly::Exponents e{};
  std::function<void(int, int)> rec = [&](int pos, int left) {
    if (pos == roots - 1) {
      e[static_cast<std::size_t>(pos)] = left;
      out += RootPoly::monomial(roots, e, 1);
      return;
    }
    for (int j = left; j >= 0; --j) {
      e[static_cast<std::size_t>(pos)] = j;
      rec(pos + 1, left - j);
    }
  };
  rec(0, k);
  return out;
}

RootPoly vandermonde(int roots) {
  RootPoly v = RootPoly::constant(roots, 1);
  for (int i = 0; i < roots; ++i)
    for (int j = i + 1; j < roots; ++j) v = v * (RootPoly::variable(roots, i) - RootPoly::variable(roots, j));
  return v;
}

}  // namespace

RootPoly schurPolynomial(const std::vector<int>& partition, int roots) {
  std::vector<int> lambda = partition;
  while (!lambda.empty() && lambda.back() == 0) lambda.pop_back();
  if (static_cast<int>(lambda.size()) > roots) return RootPoly(roots);
  for (std::size_t i = 1; i < lambda.size(); ++i)
    if (lambda[i] > lambda[i - 1]) throw InvalidInput("partition parts must be weakly decreasing");
  const std::size_t l = lambda.size();
  if (l == 0) return RootPoly::constant(roots, 1);
  // det(h_{lambda_i - i + j}) by Laplace expansion (l <= 3)
  std::vector<std::vector<RootPoly>> m(l);
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t j = 0; j < l; ++j)
      m[i].push_back(completeHomogeneous(lambda[i] - static_cast<int>(i) + static_cast<int>(j), roots));
  std::function<RootPoly(std::vector<std::size_t>, std::size_t)> det = [&](std::vector<std::size_t> rows, std::size_t col) {
    if (rows.size() == 1) return m[rows[0]][col];
    RootPoly acc(roots);
    for (std::size_t k = 0; k < rows.size(); ++k) {
      auto rest = rows;
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(k));
      const auto term = m[rows[k]][col] * det(rest, col + 1);
      acc = k % 2 ? acc - term : acc + term;
    }
    return acc;
  };
  std::vector<std::size_t> rows(l);
  std::iota(rows.begin(), rows.end(), 0);
  return det(rows, 0);
}

std::vector<std::pair<std::vector<int>, BigInt>> schurExpansion(const RootPoly& f) {
  const int r = f.roots();
  const auto alt = f * vandermonde(r);
  std::vector<std::pair<std::vector<int>, BigInt>> out;
  for (auto it = alt.terms().rbegin(); it != alt.terms().rend(); ++it) {
    const auto& [e, c] = *it;
    bool decreasing = true;
    for (int i = 0; i + 1 < r; ++i) decreasing = decreasing && e[static_cast<std::size_t>(i)] > e[static_cast<std::size_t>(i + 1)];
    if (!decreasing || e[RootPoly::kZeta] != 0) continue;
    std::vector<int> lambda;
    for (int i = 0; i < r; ++i) lambda.push_back(e[static_cast<std::size_t>(i)] - (r - 1 - i));
    out.emplace_back(std::move(lambda), c);
  }
  return out;
}

Integral integrateGrass(const RootPoly& f, int n) {
  const int k = f.roots();
  Integral out;
  out.symmetric = f.isSymmetric();
  if (f.isZero()) return out;
  if (f.zetaDegree() > 0 || !f.isHomogeneous() || f.degree() != k * (n + 1 - k)) {
    out.degreeMismatch = true;
    return out;
  }
  RootPoly::Exponents target{};
  for (int i = 0; i < k; ++i) target[static_cast<std::size_t>(i)] = n - i;
  out.value = (f * vandermonde(k)).coefficient(target);
  return out;
}

Integral integrateGrass2(const RootPoly& f, int n) {
  if (f.roots() != 2) throw InvalidInput("integrateGrass2 needs a polynomial in two Chern roots");
  return integrateGrass(f, n);
}

}  // namespace cilab::schubert
