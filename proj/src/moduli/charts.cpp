#include "moduli/charts.hpp"

#include <algorithm>

#include "common/error.hpp"

namespace cilab::moduli {

using algebra::Monomial;

const char* conicKindName(ConicKind kind) {
  switch (kind) {
    case ConicKind::SmoothConic: return "smooth";
    case ConicKind::LinePair: return "line-pair";
    case ConicKind::DoubleLine: return "double-line";
  }
  return "?";
}

std::pair<ExactMatrix, std::vector<int>> rrefBasis(const PrimeField& field, const ExactMatrix& spanning) {
  ExactMatrix m = spanning;
  const auto pivots = algebra::rrefInPlace(field, m);
  if (pivots.size() < m.rows()) throw DomainError("spanning rows are linearly dependent");
  std::vector<int> piv(pivots.begin(), pivots.end());
  return {m, piv};
}

LineChartPoint LineChartPoint::fromSpan(const PrimeField& field, const ExactMatrix& spanning) {
  if (spanning.rows() != 2 || spanning.cols() < 3) throw InvalidInput("a line needs a 2 x (n+1) matrix, n >= 2");
  auto [m, piv] = rrefBasis(field, spanning);
  LineChartPoint pt;
  pt.n = static_cast<int>(m.cols()) - 1;
  pt.pivots = {piv[0], piv[1]};
  pt.rows = std::move(m);
  return pt;
}

std::vector<std::pair<int, int>> LineChartPoint::chartCoordinates() const {
  std::vector<std::pair<int, int>> out;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c <= n; ++c)
      if (c != pivots[0] && c != pivots[1]) out.emplace_back(r, c);
  return out;
}

ConicChartPoint ConicChartPoint::make(const PrimeField& field, const ExactMatrix& spanning,
                                      const QuadricCoeffs& q) {
  if (spanning.rows() != 3 || spanning.cols() < 3) throw InvalidInput("a plane needs a 3 x (n+1) matrix, n >= 2");
  auto [m, piv] = rrefBasis(field, spanning);
  ConicChartPoint pt;
  pt.n = static_cast<int>(m.cols()) - 1;
  pt.pivots = {piv[0], piv[1], piv[2]};
  pt.plane = std::move(m);
  pt.quadric = normalizeQuadric(field, q);
  return pt;
}

std::vector<std::pair<int, int>> ConicChartPoint::planeChartCoordinates() const {
  std::vector<std::pair<int, int>> out;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c <= n; ++c)
      if (std::find(pivots.begin(), pivots.end(), c) == pivots.end()) out.emplace_back(r, c);
  return out;
}

QuadricCoeffs normalizeQuadric(const PrimeField& field, const QuadricCoeffs& q) {
  QuadricCoeffs out{};
  for (int i = 0; i < 6; ++i) out[i] = q[i] % field.modulus();
  auto it = std::find_if(out.begin(), out.end(), [](Residue c) { return c != 0; });
  if (it == out.end()) throw InvalidInput("the zero quadric does not define a conic");
  const Residue s = field.inv(*it);
  for (auto& c : out) c = field.mul(c, s);
  return out;
}

Monomial quadricMonomial(int index) {
  static const int exps[6][3] = {{2, 0, 0}, {1, 1, 0}, {1, 0, 1}, {0, 2, 0}, {0, 1, 1}, {0, 0, 2}};
  return Monomial(std::span<const int>(exps[index], 3));
}

MultiPoly quadricForm(const PrimeField& field, const QuadricCoeffs& q) {
  std::vector<MultiPoly::Term> terms;
  for (int i = 0; i < 6; ++i) terms.emplace_back(quadricMonomial(i), q[i]);
  return MultiPoly::fromTerms(field, 3, std::move(terms));
}

QuadricCoeffs quadricCoeffs(const MultiPoly& form) {
  if (form.nvars() != 3 || (!form.isZero() && (form.degree() != 2 || !form.isHomogeneous()))) {
    throw InvalidInput("expected a ternary quadratic form");
  }
  QuadricCoeffs q{};
  for (int i = 0; i < 6; ++i) q[i] = form.coefficient(quadricMonomial(i));
  return q;
}

ExactMatrix gramMatrix(const PrimeField& field, const QuadricCoeffs& q) {
  const Residue half = field.inv(2);
  ExactMatrix g(3, 3);
  g(0, 0) = q[0];
  g(1, 1) = q[3];
  g(2, 2) = q[5];
  g(0, 1) = g(1, 0) = field.mul(q[1], half);
  g(0, 2) = g(2, 0) = field.mul(q[2], half);
  g(1, 2) = g(2, 1) = field.mul(q[4], half);
  return g;
}

ConicKind classifyConic(const PrimeField& field, const QuadricCoeffs& q) {
  if (std::all_of(q.begin(), q.end(), [&](Residue c) { return c % field.modulus() == 0; })) {
    throw InvalidInput("the zero quadric does not define a conic");
  }
  switch (algebra::rank(field, gramMatrix(field, q))) {
    case 3: return ConicKind::SmoothConic;
    case 2: return ConicKind::LinePair;
    default: return ConicKind::DoubleLine;
  }
}

std::uint64_t gaussianBinomial(int n, int k, std::uint64_t q) {
  if (k < 0 || k > n) return 0;
  // prod_{i<k} (q^(n-i) - 1) / (q^(i+1) - 1), exact at each step
  unsigned __int128 num = 1, den = 1;
  auto qpow = [q](int e) {
    unsigned __int128 r = 1;
    for (int i = 0; i < e; ++i) r *= q;
    return r;
  };
  for (int i = 0; i < k; ++i) {
    num *= qpow(n - i) - 1;
    den *= qpow(i + 1) - 1;
  }
  return static_cast<std::uint64_t>(num / den);
}

std::uint64_t lineCountOverFq(int n, std::uint64_t q) { return gaussianBinomial(n + 1, 2, q); }
std::uint64_t planeCountOverFq(int n, std::uint64_t q) { return gaussianBinomial(n + 1, 3, q); }
std::uint64_t quadricCountOverFq(std::uint64_t q) { return gaussianBinomial(6, 1, q); }

namespace {

void pivotSets(int cols, int k, int start, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == k) {
    out.push_back(cur);
    return;
  }
  for (int c = start; c < cols; ++c) {
    cur.push_back(c);
    pivotSets(cols, k, c + 1, cur, out);
    cur.pop_back();
  }
}

}  // namespace

void forEachSubspace(const PrimeField& field, int n, int k, std::uint64_t budget,
                     const std::function<void(const ExactMatrix&, const std::vector<int>&)>& visit) {
  const std::uint64_t q = field.modulus();
  if (gaussianBinomial(n + 1, k, q) > budget) {
    throw BudgetExceeded("enumeration of " + std::to_string(gaussianBinomial(n + 1, k, q)) +
                         " subspaces exceeds budget " + std::to_string(budget));
  }
  const int cols = n + 1;
  std::vector<std::vector<int>> sets;
  std::vector<int> cur;
  pivotSets(cols, k, 0, cur, sets);
  for (const auto& piv : sets) {
    // free positions: right of the row's pivot, outside pivot columns
    std::vector<std::pair<int, int>> freePos;
    for (int r = 0; r < k; ++r)
      for (int c = piv[r] + 1; c < cols; ++c)
        if (std::find(piv.begin(), piv.end(), c) == piv.end()) freePos.emplace_back(r, c);
    ExactMatrix m(k, cols, 0);
    for (int r = 0; r < k; ++r) m(r, piv[r]) = 1;
    std::vector<Residue> digits(freePos.size(), 0);
    for (;;) {
      for (std::size_t i = 0; i < freePos.size(); ++i) m(freePos[i].first, freePos[i].second) = digits[i];
      visit(m, piv);
      std::size_t i = 0;
      while (i < digits.size() && ++digits[i] == q) digits[i++] = 0;
      if (i == digits.size()) break;
    }
  }
}

void forEachLine(const PrimeField& field, int n, std::uint64_t budget,
                 const std::function<void(const LineChartPoint&)>& visit) {
  forEachSubspace(field, n, 2, budget, [&](const ExactMatrix& m, const std::vector<int>& piv) {
    LineChartPoint pt;
    pt.n = n;
    pt.pivots = {piv[0], piv[1]};
    pt.rows = m;
    visit(pt);
  });
}

void forEachPlane(const PrimeField& field, int n, std::uint64_t budget,
                  const std::function<void(const ExactMatrix&, const std::vector<int>&)>& visit) {
  forEachSubspace(field, n, 3, budget, visit);
}

void forEachQuadric(const PrimeField& field, const std::function<void(const QuadricCoeffs&)>& visit) {
  const std::uint32_t q = field.modulus();
  for (int lead = 0; lead < 6; ++lead) {
    QuadricCoeffs c{};
    c[lead] = 1;
    const int freeCount = 5 - lead;
    std::vector<Residue> digits(freeCount, 0);
    for (;;) {
      for (int i = 0; i < freeCount; ++i) c[lead + 1 + i] = digits[i];
      visit(c);
      int i = 0;
      while (i < freeCount && ++digits[i] == q) digits[i++] = 0;
      if (i == freeCount) break;
    }
  }
}

void forEachConic(const PrimeField& field, int n, std::uint64_t budget,
                  const std::function<void(const ConicChartPoint&)>& visit) {
  const std::uint64_t q = field.modulus();
  const auto total = static_cast<unsigned __int128>(planeCountOverFq(n, q)) * quadricCountOverFq(q);
  if (total > budget) {
    throw BudgetExceeded("enumeration of conics exceeds budget " + std::to_string(budget));
  }
  forEachPlane(field, n, budget, [&](const ExactMatrix& plane, const std::vector<int>& piv) {
    ConicChartPoint pt;
    pt.n = n;
    pt.pivots = {piv[0], piv[1], piv[2]};
    pt.plane = plane;
    forEachQuadric(field, [&](const QuadricCoeffs& qc) {
      pt.quadric = qc;
      visit(pt);
    });
  });
}

}  // namespace cilab::moduli
