#include "algebra/matrix.hpp"

namespace cilab::algebra {

std::size_t rank(const PrimeField& field, const ExactMatrix& m) { return rankOf(field, m); }

std::vector<std::vector<Residue>> kernelBasis(const PrimeField& field, const ExactMatrix& m) {
  return kernelBasisOf(field, m);
}

std::vector<Residue> multiply(const PrimeField& field, const ExactMatrix& m,
                              std::span<const Residue> v) {
  if (v.size() != m.cols()) throw InvalidInput("matrix-vector dimension mismatch");
  std::vector<Residue> out(m.rows(), 0);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    std::uint64_t acc = 0;
    for (std::size_t c = 0; c < m.cols(); ++c) {
      acc = (acc + std::uint64_t{m(r, c)} * v[c]) % field.modulus();
    }
    out[r] = static_cast<Residue>(acc);
  }
  return out;
}

ExactMatrix inverse(const PrimeField& field, const ExactMatrix& m) {
  if (m.rows() != m.cols()) throw InvalidInput("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  ExactMatrix aug(n, 2 * n, 0);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = m(r, c);
    aug(r, n + r) = 1;
  }
  const auto pivots = rrefInPlace(field, aug);
  if (pivots.size() < n || pivots[n - 1] != n - 1) throw DomainError("matrix is singular");
  ExactMatrix inv(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) inv(r, c) = aug(r, n + c);
  return inv;
}

ExactMatrix fromRows(const PrimeField& field, const std::vector<std::vector<std::int64_t>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  ExactMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw InvalidInput("ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = field.fromInt(rows[r][c]);
  }
  return m;
}

ExactMatrix multiply(const PrimeField& field, const ExactMatrix& a, const ExactMatrix& b) {
  if (a.cols() != b.rows()) throw InvalidInput("matrix product: dimension mismatch");
  ExactMatrix out(a.rows(), b.cols(), 0);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) = field.add(out(i, j), field.mul(a(i, k), b(k, j)));
    }
  return out;
}

}  // namespace cilab::algebra
