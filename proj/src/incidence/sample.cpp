#include "incidence/sample.hpp"

#include "common/error.hpp"

namespace cilab::incidence {

namespace {

ExactMatrix randomFullRank(const PrimeField& field, std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  ExactMatrix m(rows, cols);
  do {
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) m(r, c) = static_cast<Residue>(rng() % field.modulus());
  } while (algebra::rank(field, m) < rows);
  return moduli::rrefBasis(field, m).first;
}

std::vector<Residue> randomNonzeroVector(const PrimeField& field, std::size_t len, std::mt19937_64& rng) {
  std::vector<Residue> v(len);
  for (;;) {
    bool zero = true;
    for (auto& c : v) {
      c = static_cast<Residue>(rng() % field.modulus());
      zero = zero && c == 0;
    }
    if (!zero) return v;
  }
}

}  // namespace

LineChartPoint randomLine(const PrimeField& field, int n, std::mt19937_64& rng) {
  return LineChartPoint::fromSpan(field, randomFullRank(field, 2, n + 1, rng));
}

ConicChartPoint randomConic(const PrimeField& field, int n, ConicKind kind, std::mt19937_64& rng) {
  const auto plane = randomFullRank(field, 3, n + 1, rng);
  moduli::QuadricCoeffs q{};
  switch (kind) {
    case ConicKind::SmoothConic:
      do {
        const auto v = randomNonzeroVector(field, 6, rng);
        for (int i = 0; i < 6; ++i) q[i] = v[i];
      } while (moduli::classifyConic(field, q) != ConicKind::SmoothConic);
      break;
    case ConicKind::LinePair:
      for (;;) {
        const auto l1 = MultiPoly::linearForm(field, randomNonzeroVector(field, 3, rng));
        const auto l2 = MultiPoly::linearForm(field, randomNonzeroVector(field, 3, rng));
        const Residue a = static_cast<Residue>(1 + rng() % (field.modulus() - 1));
        const auto form = l1 * l1 - (l2 * l2).scaled(a);
        if (form.isZero()) continue;
        q = moduli::quadricCoeffs(form);
        if (moduli::classifyConic(field, q) == ConicKind::LinePair) break;
      }
      break;
    case ConicKind::DoubleLine: {
      const auto l = MultiPoly::linearForm(field, randomNonzeroVector(field, 3, rng));
      q = moduli::quadricCoeffs(l * l);
      break;
    }
  }
  return ConicChartPoint::make(field, plane, q);
}

CompleteIntersection sampleThroughCurve(const CIType& type, const CurveModel& curve, std::uint64_t seed) {
  type.validate();
  if (type.n != curve.n()) throw InvalidInput("curve and type live in different spaces");
  const auto& field = curve.field();
  const int vars = type.n + 1;
  const int m = curve.normalCount();
  const auto& inv = curve.adaptedInverse();
  std::vector<MultiPoly> coord;
  for (int j = 0; j < vars; ++j) coord.push_back(MultiPoly::linearForm(field, inv.row(j)));
  MultiPoly quadric(field, vars);
  if (curve.isConic()) {
    const std::vector<MultiPoly> span{coord[m], coord[m + 1], coord[m + 2]};
    quadric = moduli::quadricForm(field, curve.conicPoint().quadric).substitute(span);
  }
  std::mt19937_64 rng(seed);
  std::vector<MultiPoly> forms;
  for (int d : type.degrees) {
    for (;;) {
      MultiPoly f(field, vars);
      for (int j = 0; j < m; ++j) f += coord[j] * algebra::randomForm(field, vars, d - 1, rng);
      if (curve.isConic()) f += quadric * algebra::randomForm(field, vars, d - 2, rng);
      if (!f.isZero()) {
        forms.push_back(std::move(f));
        break;
      }
    }
  }
  return CompleteIntersection(type, std::move(forms));
}

CompleteIntersection randomCompleteIntersection(const PrimeField& field, const CIType& type, std::uint64_t seed) {
  type.validate();
  std::mt19937_64 rng(seed);
  std::vector<MultiPoly> forms;
  for (int d : type.degrees) {
    for (;;) {
      auto f = algebra::randomForm(field, type.n + 1, d, rng);
      if (!f.isZero()) {
        forms.push_back(std::move(f));
        break;
      }
    }
  }
  return CompleteIntersection(type, std::move(forms));
}

}  // namespace cilab::incidence
