#pragma once

#include <vector>

#include "coc/errors.hpp"
#include "coc/rational.hpp"

namespace coc {

/// Dense arbitrary-precision integer matrix.  Deliberately tiny: the SNF
/// path needs exact elementwise row/column operations and products, and
/// bignum scalars interact badly with expression-template libraries.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(int rows, int cols)
      : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols) {}

  static IntMatrix identity(int n) {
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Integer& operator()(int i, int j) {
    return data_[static_cast<std::size_t>(i) * cols_ + j];
  }
  const Integer& operator()(int i, int j) const {
    return data_[static_cast<std::size_t>(i) * cols_ + j];
  }

  bool operator==(const IntMatrix&) const = default;

  IntMatrix operator*(const IntMatrix& o) const {
    if (cols_ != o.rows_) throw DimensionMismatch("integer matrix product");
    IntMatrix out(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
      for (int k = 0; k < cols_; ++k) {
        const Integer& a = (*this)(i, k);
        if (a == 0) continue;
        for (int j = 0; j < o.cols_; ++j) {
          const Integer& b = o(k, j);
          if (b != 0) out(i, j) += a * b;
        }
      }
    return out;
  }

  std::vector<Integer> col(int j) const {
    std::vector<Integer> v(rows_);
    for (int i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }

  std::vector<Integer> apply(const std::vector<Integer>& v) const {
    if (static_cast<int>(v.size()) != cols_)
      throw DimensionMismatch("integer matrix apply");
    std::vector<Integer> out(rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j)
        if ((*this)(i, j) != 0 && v[j] != 0) out[i] += (*this)(i, j) * v[j];
    return out;
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Integer> data_;
};

/// A = U * D * V with U, V unimodular and D diagonal with the divisibility
/// chain d_1 | d_2 | ...  Inverses are tracked so kernels and integer
/// solves come out of the same factorization.
struct SmithDecomposition {
  IntMatrix U, D, V;
  IntMatrix U_inv, V_inv;
  int rank = 0;

  /// Nonzero diagonal entries (positive, in divisibility order).
  std::vector<Integer> invariant_factors() const;

  /// Basis of the integer kernel of A (columns).
  IntMatrix kernel_basis() const;
};

/// Exact integer Smith normal form.  Entries are arbitrary-precision, so
/// coefficient growth during elimination is safe by construction.
SmithDecomposition smith_normal_form(const IntMatrix& A);

/// Solve A * X = B over the integers for A whose columns span a direct
/// summand (e.g. a kernel basis); every column of B must lie in the span.
/// Throws Error otherwise.
IntMatrix solve_in_span(const SmithDecomposition& snf_of_A, const IntMatrix& B);

}  // namespace coc
