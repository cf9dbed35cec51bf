#ifndef QUILTKIT_SPARSE_MATRIX_HPP
#define QUILTKIT_SPARSE_MATRIX_HPP

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "quiltkit/rational.hpp"

namespace qk {

/// Sparse rational matrix. Entries are kept per row in a map so that no
/// explicit zero is ever stored.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  /// Adds `value` to entry (r, c); drops the entry if the sum vanishes.
  void add(std::size_t r, std::size_t c, const Scalar& value);
  void set(std::size_t r, std::size_t c, const Scalar& value);
  Scalar at(std::size_t r, std::size_t c) const;

  std::size_t nonzeros() const;
  bool is_zero() const { return nonzeros() == 0; }

  const std::map<std::size_t, Scalar>& row(std::size_t r) const { return data_[r]; }

  SparseMatrix transpose() const;
  SparseMatrix permuted(const std::vector<std::size_t>& row_perm,
                        const std::vector<std::size_t>& col_perm) const;

  friend SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b);
  friend bool operator==(const SparseMatrix& a, const SparseMatrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::map<std::size_t, Scalar>> data_;
};

/// Exact rank over Q. Rows are cleared to primitive integer vectors and
/// reduced fraction-free; when two rows compete for the same leading column
/// the one with the smaller leading entry becomes the pivot.
std::size_t rank(const SparseMatrix& m);

}  // namespace qk

#endif  // QUILTKIT_SPARSE_MATRIX_HPP
