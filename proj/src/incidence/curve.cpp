#include "incidence/curve.hpp"

#include <algorithm>

#include "common/error.hpp"

namespace cilab::incidence {

using algebra::Monomial;

namespace {

std::vector<MultiPoly> columnForms(const PrimeField& field, const ExactMatrix& m) {
  // x_i = sum_j m(i, j) z_j
  std::vector<MultiPoly> forms;
  for (std::size_t i = 0; i < m.rows(); ++i) forms.push_back(MultiPoly::linearForm(field, m.row(i)));
  return forms;
}

// Restriction of a form in the n+1 adapted variables to the span variables:
// terms involving a normal coordinate are dropped.
MultiPoly dropNormal(const MultiPoly& g, int m, int spanDim) {
  std::vector<MultiPoly::Term> terms;
  for (const auto& [mono, c] : g.terms()) {
    bool normal = false;
    for (int j = 0; j < m && !normal; ++j) normal = mono.exponent(j) > 0;
    if (normal) continue;
    std::vector<int> e(spanDim);
    for (int k = 0; k < spanDim; ++k) e[k] = mono.exponent(m + k);
    terms.emplace_back(Monomial(e), c);
  }
  return MultiPoly::fromTerms(g.field(), spanDim, std::move(terms));
}

}  // namespace

CurveModel::CurveModel(const PrimeField& field, int n, ExactMatrix span, std::vector<int> pivots)
    : field_(field), n_(n), span_(std::move(span)), pivots_(std::move(pivots)) {
  const int cols = n_ + 1;
  const int m = normalCount();
  adapted_ = ExactMatrix(cols, cols, 0);
  int j = 0;
  for (int c = 0; c < cols; ++c) {
    if (std::find(pivots_.begin(), pivots_.end(), c) != pivots_.end()) continue;
    adapted_(c, j++) = 1;
  }
  for (int k = 0; k < spanDim(); ++k)
    for (int c = 0; c < cols; ++c) adapted_(c, m + k) = span_(k, c);
  adaptedInverse_ = algebra::inverse(field_, adapted_);
}

CurveModel CurveModel::fromLine(const PrimeField& field, const LineChartPoint& line) {
  const auto [rows, piv] = moduli::rrefBasis(field, line.rows);
  CurveModel model(field, line.n, rows, piv);
  model.line_ = line;
  model.line_->rows = rows;
  model.line_->pivots = {piv[0], piv[1]};
  return model;
}

CurveModel CurveModel::fromConic(const PrimeField& field, const ConicChartPoint& conic) {
  const auto [rows, piv] = moduli::rrefBasis(field, conic.plane);
  if (!(rows == conic.plane)) throw InvalidInput("conic plane must be given in reduced row echelon form");
  CurveModel model(field, conic.n, rows, piv);
  model.conic_ = conic;
  model.conic_->quadric = moduli::normalizeQuadric(field, conic.quadric);
  model.frame_.emplace(field, model.conic_->quadric);
  return model;
}

int CurveModel::chartDimension() const noexcept { return isConic() ? 3 * (n_ - 2) + 5 : 2 * (n_ - 1); }

const LineChartPoint& CurveModel::linePoint() const {
  if (!line_) throw InvalidInput("curve is not a line");
  return *line_;
}

const ConicChartPoint& CurveModel::conicPoint() const {
  if (!conic_) throw InvalidInput("curve is not a conic");
  return *conic_;
}

ConicKind CurveModel::kind() const { return moduli::classifyConic(field_, conicPoint().quadric); }

const moduli::ConicFrame& CurveModel::frame() const {
  if (!frame_) throw InvalidInput("curve is not a conic");
  return *frame_;
}

MultiPoly CurveModel::restrictToSpan(const MultiPoly& f) const {
  return f.substitute(columnForms(field_, span_.transposed()));
}

MultiPoly CurveModel::toAdapted(const MultiPoly& f) const { return f.substitute(columnForms(field_, adapted_)); }

MultiPoly CurveModel::fromAdapted(const MultiPoly& g) const {
  return g.substitute(columnForms(field_, adaptedInverse_));
}

MultiPoly CurveModel::adaptedQuadric() const {
  const auto q = moduli::quadricForm(field_, conicPoint().quadric);
  const int m = normalCount();
  std::vector<MultiPoly> forms;
  for (int k = 0; k < 3; ++k) forms.push_back(MultiPoly::variable(field_, n_ + 1, m + k));
  return q.substitute(forms);
}

std::vector<std::vector<Residue>> restrictToCurve(const CompleteIntersection& x, const CurveModel& curve) {
  if (curve.n() != x.n()) throw InvalidInput("curve and complete intersection live in different spaces");
  std::vector<std::vector<Residue>> out;
  for (std::size_t i = 0; i < x.forms().size(); ++i) {
    const int d = x.type().degrees[i];
    const auto g = curve.restrictToSpan(x.forms()[i]);
    if (curve.isConic()) {
      out.push_back(curve.frame().normalForm(curve.frame().toFrame(g), d));
    } else {
      std::vector<Residue> v(d + 1, 0);
      for (const auto& [mono, c] : g.terms()) v[mono.exponent(1)] = c;
      out.push_back(std::move(v));
    }
  }
  return out;
}

std::vector<std::vector<Residue>> restrictToLine(const CompleteIntersection& x, const LineChartPoint& line) {
  return restrictToCurve(x, CurveModel::fromLine(x.field(), line));
}

std::vector<std::vector<Residue>> restrictToConic(const CompleteIntersection& x, const ConicChartPoint& conic) {
  return restrictToCurve(x, CurveModel::fromConic(x.field(), conic));
}

bool containsCurve(const CompleteIntersection& x, const CurveModel& curve) {
  for (const auto& v : restrictToCurve(x, curve))
    for (auto c : v)
      if (c != 0) return false;
  return true;
}

MultiPoly CurveDecomposition::reassemble(std::size_t i) const {
  const auto& field = curve.field();
  const int vars = curve.n() + 1;
  MultiPoly sum(field, vars);
  const int m = curve.normalCount();
  for (int j = 0; j < m; ++j) sum += MultiPoly::variable(field, vars, j) * cofactors[i][j];
  if (curve.isConic()) sum += curve.adaptedQuadric() * cofactors[i][m];
  return sum;
}

MultiPoly CurveDecomposition::restrictedCofactor(std::size_t i, std::size_t j) const {
  return dropNormal(cofactors[i][j], curve.normalCount(), curve.spanDim());
}

CurveDecomposition decomposeAlongCurve(const CompleteIntersection& x, const CurveModel& curve,
                                       std::vector<int> divisionOrder) {
  if (curve.n() != x.n()) throw InvalidInput("curve and complete intersection live in different spaces");
  const int m = curve.normalCount();
  const int vars = x.n() + 1;
  if (divisionOrder.empty()) {
    for (int j = 0; j < m; ++j) divisionOrder.push_back(j);
  }
  {
    auto sorted = divisionOrder;
    std::sort(sorted.begin(), sorted.end());
    for (int j = 0; j < m; ++j)
      if (static_cast<int>(sorted.size()) != m || sorted[j] != j) throw InvalidInput("division order must permute the normal coordinates");
  }
  CurveDecomposition dec{curve, {}, divisionOrder, x.type().degrees};
  const auto& field = x.field();
  const MultiPoly quadric = curve.isConic() ? curve.adaptedQuadric() : MultiPoly(field, vars);
  for (const auto& f : x.forms()) {
    const auto g = curve.toAdapted(f);
    std::vector<std::vector<MultiPoly::Term>> parts(m);
    std::vector<MultiPoly::Term> rest;
    for (const auto& [mono, c] : g.terms()) {
      auto it = std::find_if(divisionOrder.begin(), divisionOrder.end(), [&](int j) { return mono.exponent(j) > 0; });
      if (it == divisionOrder.end()) {
        rest.emplace_back(mono, c);
      } else {
        parts[*it].emplace_back(mono / Monomial::variable(*it), c);
      }
    }
    std::vector<MultiPoly> row;
    for (auto& p : parts) row.push_back(MultiPoly::fromTerms(field, vars, std::move(p)));
    const auto remainder = MultiPoly::fromTerms(field, vars, std::move(rest));
    if (curve.isConic()) {
      auto q = remainder.divideExact(quadric);
      if (!q) throw DomainError("conic is not contained in X");
      row.push_back(std::move(*q));
    } else if (!remainder.isZero()) {
      throw DomainError("line is not contained in X");
    }
    dec.cofactors.push_back(std::move(row));
  }
  return dec;
}

}  // namespace cilab::incidence
