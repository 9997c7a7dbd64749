#include "algebra/poly.hpp"

#include <algorithm>
#include <sstream>

#include "common/error.hpp"

namespace cilab::algebra {

Monomial::Monomial(std::span<const int> exponents) {
  if (exponents.size() > static_cast<std::size_t>(kMaxVars)) {
    throw InvalidInput("at most 8 variables are supported");
  }
  for (std::size_t i = 0; i < exponents.size(); ++i) {
    if (exponents[i] < 0 || exponents[i] > 255) throw InvalidInput("exponent out of range");
    bits_ |= static_cast<std::uint64_t>(exponents[i]) << (8 * (kMaxVars - 1 - i));
  }
}

Monomial Monomial::variable(int index, int power) {
  return fromBits(static_cast<std::uint64_t>(power) << (8 * (kMaxVars - 1 - index)));
}

int Monomial::degree() const noexcept {
  int d = 0;
  for (int i = 0; i < kMaxVars; ++i) d += exponent(i);
  return d;
}

std::vector<int> Monomial::exponents(int nvars) const {
  std::vector<int> e(nvars);
  for (int i = 0; i < nvars; ++i) e[i] = exponent(i);
  return e;
}

bool Monomial::divides(Monomial other) const noexcept {
  for (int i = 0; i < kMaxVars; ++i)
    if (exponent(i) > other.exponent(i)) return false;
  return true;
}

namespace {

void monomialsRec(int nvars, int var, int remaining, std::vector<int>& exps,
                  std::vector<Monomial>& out) {
  if (var == nvars - 1) {
    exps[var] = remaining;
    out.emplace_back(exps);
    return;
  }
  for (int e = remaining; e >= 0; --e) {
    exps[var] = e;
    monomialsRec(nvars, var + 1, remaining - e, exps, out);
  }
  exps[var] = 0;
}

std::vector<MultiPoly::Term> normalize(const PrimeField& field, std::vector<MultiPoly::Term> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<MultiPoly::Term> out;
  out.reserve(terms.size());
  for (const auto& t : terms) {
    if (!out.empty() && out.back().first == t.first) {
      out.back().second = field.add(out.back().second, t.second);
    } else {
      out.push_back(t);
    }
    if (out.back().second == 0) out.pop_back();
  }
  return out;
}

}  // namespace

std::vector<Monomial> monomialsOfDegree(int nvars, int degree) {
  if (nvars < 1 || nvars > Monomial::kMaxVars) throw InvalidInput("variable count out of range");
  std::vector<Monomial> out;
  if (degree < 0) return out;
  std::vector<int> exps(nvars, 0);
  monomialsRec(nvars, 0, degree, exps, out);
  return out;
}

MultiPoly::MultiPoly(const PrimeField& field, int nvars) : field_(field), nvars_(nvars) {
  if (nvars < 1 || nvars > Monomial::kMaxVars) {
    throw InvalidInput("polynomials support 1..8 variables, got " + std::to_string(nvars));
  }
}

MultiPoly MultiPoly::constant(const PrimeField& field, int nvars, Residue c) {
  return monomial(field, nvars, Monomial{}, c);
}

MultiPoly MultiPoly::variable(const PrimeField& field, int nvars, int index) {
  if (index < 0 || index >= nvars) throw InvalidInput("variable index out of range");
  return monomial(field, nvars, Monomial::variable(index), 1);
}

MultiPoly MultiPoly::monomial(const PrimeField& field, int nvars, Monomial m, Residue c) {
  MultiPoly p(field, nvars);
  c %= field.modulus();
  if (c != 0) p.terms_.emplace_back(m, c);
  return p;
}

MultiPoly MultiPoly::fromTerms(const PrimeField& field, int nvars, std::vector<Term> terms) {
  MultiPoly p(field, nvars);
  for (auto& t : terms) {
    t.second %= field.modulus();
    for (int i = nvars; i < Monomial::kMaxVars; ++i) {
      if (t.first.exponent(i) != 0) throw InvalidInput("monomial uses a variable beyond nvars");
    }
  }
  p.terms_ = normalize(field, std::move(terms));
  return p;
}

MultiPoly MultiPoly::fromExponents(const PrimeField& field, int nvars,
                                   const std::vector<std::pair<std::int64_t, std::vector<int>>>& terms) {
  std::vector<Term> ts;
  for (const auto& [c, e] : terms) {
    if (static_cast<int>(e.size()) != nvars) throw InvalidInput("exponent vector length mismatch");
    ts.emplace_back(Monomial(e), field.fromInt(c));
  }
  return fromTerms(field, nvars, std::move(ts));
}

MultiPoly MultiPoly::linearForm(const PrimeField& field, std::span<const Residue> coeffs) {
  std::vector<Term> ts;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    ts.emplace_back(Monomial::variable(static_cast<int>(i)), coeffs[i]);
  }
  return fromTerms(field, static_cast<int>(coeffs.size()), std::move(ts));
}

int MultiPoly::degree() const noexcept {
  int d = -1;
  for (const auto& t : terms_) d = std::max(d, t.first.degree());
  return d;
}

bool MultiPoly::isHomogeneous() const noexcept {
  if (terms_.empty()) return true;
  const int d = terms_.front().first.degree();
  return std::all_of(terms_.begin(), terms_.end(),
                     [d](const Term& t) { return t.first.degree() == d; });
}

Residue MultiPoly::coefficient(Monomial m) const noexcept {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                             [](const Term& t, Monomial key) { return t.first < key; });
  return (it != terms_.end() && it->first == m) ? it->second : 0;
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
  if (nvars_ != o.nvars_ || !(field_ == o.field_)) throw InvalidInput("polynomial ring mismatch");
  MultiPoly r(field_, nvars_);
  r.terms_.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() || j < o.terms_.size()) {
    if (j == o.terms_.size() || (i < terms_.size() && terms_[i].first < o.terms_[j].first)) {
      r.terms_.push_back(terms_[i++]);
    } else if (i == terms_.size() || o.terms_[j].first < terms_[i].first) {
      r.terms_.push_back(o.terms_[j++]);
    } else {
      const Residue c = field_.add(terms_[i].second, o.terms_[j].second);
      if (c != 0) r.terms_.emplace_back(terms_[i].first, c);
      ++i;
      ++j;
    }
  }
  return r;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r = *this;
  for (auto& t : r.terms_) t.second = field_.neg(t.second);
  return r;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const { return *this + (-o); }

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
  if (nvars_ != o.nvars_ || !(field_ == o.field_)) throw InvalidInput("polynomial ring mismatch");
  MultiPoly r(field_, nvars_);
  if (terms_.empty() || o.terms_.empty()) return r;
  std::vector<Term> prods;
  prods.reserve(terms_.size() * o.terms_.size());
  for (const auto& a : terms_)
    for (const auto& b : o.terms_) prods.emplace_back(a.first * b.first, field_.mul(a.second, b.second));
  r.terms_ = normalize(field_, std::move(prods));
  return r;
}

MultiPoly MultiPoly::scaled(Residue s) const {
  MultiPoly r(field_, nvars_);
  s %= field_.modulus();
  if (s == 0) return r;
  r.terms_ = terms_;
  for (auto& t : r.terms_) t.second = field_.mul(t.second, s);
  return r;
}

MultiPoly MultiPoly::mulMonomial(Monomial m, Residue c) const {
  MultiPoly r(field_, nvars_);
  c %= field_.modulus();
  if (c == 0) return r;
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) r.terms_.emplace_back(t.first * m, field_.mul(t.second, c));
  return r;
}

MultiPoly MultiPoly::pow(int e) const {
  MultiPoly r = constant(field_, nvars_, 1);
  for (int i = 0; i < e; ++i) r = r * *this;
  return r;
}

Residue MultiPoly::evaluate(std::span<const Residue> point) const {
  if (point.size() != static_cast<std::size_t>(nvars_)) throw InvalidInput("evaluation point size mismatch");
  return evaluateIn(field_, point);
}

MultiPoly MultiPoly::substituteRange(std::span<const Term> terms, int var,
                                     std::span<const MultiPoly> forms, int targetVars) const {
  if (var == nvars_) {
    Residue c = 0;
    for (const auto& t : terms) c = field_.add(c, t.second);
    return constant(field_, targetVars, c);
  }
  // terms are sorted, so equal exponents of `var` form contiguous blocks
  // (ascending); walk them from the top for Horner evaluation.
  MultiPoly result(field_, targetVars);
  std::size_t end = terms.size();
  int current = -1;
  while (end > 0) {
    const int e = terms[end - 1].first.exponent(var);
    std::size_t begin = end;
    while (begin > 0 && terms[begin - 1].first.exponent(var) == e) --begin;
    if (current >= 0)
      for (int k = e; k < current; ++k) result = result * forms[var];
    result += substituteRange(terms.subspan(begin, end - begin), var + 1, forms, targetVars);
    current = e;
    end = begin;
  }
  for (int k = 0; k < current; ++k) result = result * forms[var];
  return result;
}

MultiPoly MultiPoly::substitute(std::span<const MultiPoly> forms) const {
  if (forms.size() != static_cast<std::size_t>(nvars_)) {
    throw InvalidInput("substitution needs one form per variable");
  }
  const int target = forms.empty() ? 1 : forms.front().nvars();
  for (const auto& f : forms) {
    if (f.nvars() != target || !(f.field() == field_)) throw InvalidInput("substituted forms disagree on ring");
  }
  return substituteRange(terms_, 0, forms, target);
}

MultiPoly MultiPoly::partial(int var) const {
  std::vector<Term> out;
  for (const auto& [m, c] : terms_) {
    const int e = m.exponent(var);
    if (e == 0) continue;
    out.emplace_back(m / Monomial::variable(var), field_.mul(c, field_.fromInt(e)));
  }
  return fromTerms(field_, nvars_, std::move(out));
}

std::optional<MultiPoly> MultiPoly::divideExact(const MultiPoly& d) const {
  if (d.isZero()) throw InvalidInput("division by the zero polynomial");
  if (d.nvars_ != nvars_) throw InvalidInput("polynomial ring mismatch");
  MultiPoly rem = *this;
  std::vector<Term> quotient;
  const auto [lead, leadCoeff] = d.leadingTerm();
  const Residue leadInv = field_.inv(leadCoeff);
  while (!rem.isZero()) {
    const auto [m, c] = rem.leadingTerm();
    if (!lead.divides(m)) return std::nullopt;
    const Monomial q = m / lead;
    const Residue qc = field_.mul(c, leadInv);
    quotient.emplace_back(q, qc);
    rem -= d.mulMonomial(q, qc);
  }
  return fromTerms(field_, nvars_, std::move(quotient));
}

std::string MultiPoly::toString() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto c = field_.toSigned(it->second);
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    first = false;
    const auto mag = c < 0 ? -c : c;
    bool needStar = false;
    if (mag != 1 || it->first.degree() == 0) {
      os << mag;
      needStar = true;
    }
    for (int i = 0; i < nvars_; ++i) {
      const int e = it->first.exponent(i);
      if (e == 0) continue;
      if (needStar) os << '*';
      os << 'x' << i;
      if (e > 1) os << '^' << e;
      needStar = true;
    }
  }
  return os.str();
}

MultiPoly substituteLinearForms(const MultiPoly& f, std::span<const MultiPoly> forms) {
  if (forms.size() != static_cast<std::size_t>(f.nvars())) {
    throw InvalidInput("variable-count mismatch: expected " + std::to_string(f.nvars()) + " forms, got " +
                       std::to_string(forms.size()));
  }
  for (const auto& form : forms) {
    if (!form.isZero() && (form.degree() != 1 || !form.isHomogeneous())) {
      throw InvalidInput("substituted forms must be linear and homogeneous");
    }
  }
  return f.substitute(forms);
}

}  // namespace cilab::algebra
