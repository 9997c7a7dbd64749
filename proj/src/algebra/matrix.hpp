#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "algebra/field.hpp"
#include "common/error.hpp"

namespace cilab::algebra {

/// Dense row-major matrix over a field element type.
template <class E>
class BasicMatrix {
 public:
  BasicMatrix() = default;
  BasicMatrix(std::size_t rows, std::size_t cols, E fill = E{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  E& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const E& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<E> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const E> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  BasicMatrix transposed() const {
    BasicMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  bool operator==(const BasicMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<E> data_;
};

using ExactMatrix = BasicMatrix<Residue>;

/// Reduced row echelon form in place; returns the pivot columns.
template <class F>
std::vector<std::size_t> rrefInPlace(const F& field, BasicMatrix<typename F::Elem>& m) {
  std::vector<std::size_t> pivots;
  std::size_t pivotRow = 0;
  for (std::size_t c = 0; c < m.cols() && pivotRow < m.rows(); ++c) {
    std::size_t sel = pivotRow;
    while (sel < m.rows() && field.isZero(m(sel, c))) ++sel;
    if (sel == m.rows()) continue;
    if (sel != pivotRow)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(sel, j), m(pivotRow, j));
    const auto inv = field.inv(m(pivotRow, c));
    for (std::size_t j = c; j < m.cols(); ++j) m(pivotRow, j) = field.mul(m(pivotRow, j), inv);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == pivotRow || field.isZero(m(r, c))) continue;
      const auto factor = m(r, c);
      for (std::size_t j = c; j < m.cols(); ++j)
        m(r, j) = field.sub(m(r, j), field.mul(factor, m(pivotRow, j)));
    }
    pivots.push_back(c);
    ++pivotRow;
  }
  return pivots;
}

template <class F>
std::size_t rankOf(const F& field, BasicMatrix<typename F::Elem> m) {
  // forward elimination only
  std::size_t rank = 0;
  for (std::size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
    std::size_t sel = rank;
    while (sel < m.rows() && field.isZero(m(sel, c))) ++sel;
    if (sel == m.rows()) continue;
    if (sel != rank)
      for (std::size_t j = c; j < m.cols(); ++j) std::swap(m(sel, j), m(rank, j));
    const auto inv = field.inv(m(rank, c));
    for (std::size_t r = rank + 1; r < m.rows(); ++r) {
      if (field.isZero(m(r, c))) continue;
      const auto factor = field.mul(m(r, c), inv);
      for (std::size_t j = c; j < m.cols(); ++j)
        m(r, j) = field.sub(m(r, j), field.mul(factor, m(rank, j)));
    }
    ++rank;
  }
  return rank;
}

/// Basis of {x : M x = 0}; exactly cols - rank vectors, one per free column.
template <class F>
std::vector<std::vector<typename F::Elem>> kernelBasisOf(const F& field,
                                                        BasicMatrix<typename F::Elem> m) {
  const auto pivots = rrefInPlace(field, m);
  std::vector<bool> isPivot(m.cols(), false);
  for (auto c : pivots) isPivot[c] = true;
  std::vector<std::vector<typename F::Elem>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (isPivot[free]) continue;
    std::vector<typename F::Elem> v(m.cols(), field.zero());
    v[free] = field.one();
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = field.neg(m(i, free));
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Basis of {y : y^T M = 0}.
template <class F>
std::vector<std::vector<typename F::Elem>> leftKernelBasisOf(const F& field,
                                                            const BasicMatrix<typename F::Elem>& m) {
  return kernelBasisOf(field, m.transposed());
}

// Prime-field conveniences.
std::size_t rank(const PrimeField& field, const ExactMatrix& m);
std::vector<std::vector<Residue>> kernelBasis(const PrimeField& field, const ExactMatrix& m);
std::vector<Residue> multiply(const PrimeField& field, const ExactMatrix& m,
                              std::span<const Residue> v);
ExactMatrix multiply(const PrimeField& field, const ExactMatrix& a, const ExactMatrix& b);
/// Throws DomainError if singular.
ExactMatrix inverse(const PrimeField& field, const ExactMatrix& m);
ExactMatrix fromRows(const PrimeField& field,
                     const std::vector<std::vector<std::int64_t>>& rows);

}  // namespace cilab::algebra
