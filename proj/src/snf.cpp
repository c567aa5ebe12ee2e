#include "coc/snf.hpp"

#include <algorithm>
#include <utility>

namespace coc {

namespace {

using boost::multiprecision::abs;

struct Worker {
  IntMatrix D, U, U_inv, V, V_inv;

  explicit Worker(const IntMatrix& A)
      : D(A),
        U(IntMatrix::identity(A.rows())),
        U_inv(IntMatrix::identity(A.rows())),
        V(IntMatrix::identity(A.cols())),
        V_inv(IntMatrix::identity(A.cols())) {}

  // Row ops keep A = U * D * V: D <- R D implies U <- U R^{-1}, and the
  // same R applies to U_inv on the left.
  void row_swap(int i, int j) {
    for (int c = 0; c < D.cols(); ++c) std::swap(D(i, c), D(j, c));
    for (int r = 0; r < U.rows(); ++r) std::swap(U(r, i), U(r, j));
    for (int c = 0; c < U_inv.cols(); ++c) std::swap(U_inv(i, c), U_inv(j, c));
  }
  void row_axpy(int i, int j, const Integer& q) {  // row_i -= q * row_j
    for (int c = 0; c < D.cols(); ++c) D(i, c) -= q * D(j, c);
    for (int r = 0; r < U.rows(); ++r) U(r, j) += q * U(r, i);
    for (int c = 0; c < U_inv.cols(); ++c) U_inv(i, c) -= q * U_inv(j, c);
  }
  void row_negate(int i) {
    for (int c = 0; c < D.cols(); ++c) D(i, c) = -D(i, c);
    for (int r = 0; r < U.rows(); ++r) U(r, i) = -U(r, i);
    for (int c = 0; c < U_inv.cols(); ++c) U_inv(i, c) = -U_inv(i, c);
  }
  void col_swap(int i, int j) {
    for (int r = 0; r < D.rows(); ++r) std::swap(D(r, i), D(r, j));
    for (int c = 0; c < V.cols(); ++c) std::swap(V(i, c), V(j, c));
    for (int r = 0; r < V_inv.rows(); ++r) std::swap(V_inv(r, i), V_inv(r, j));
  }
  void col_axpy(int i, int j, const Integer& q) {  // col_i -= q * col_j
    for (int r = 0; r < D.rows(); ++r) D(r, i) -= q * D(r, j);
    for (int c = 0; c < V.cols(); ++c) V(j, c) += q * V(i, c);
    for (int r = 0; r < V_inv.rows(); ++r) V_inv(r, i) -= q * V_inv(r, j);
  }

  bool find_pivot(int t, int& pi, int& pj) const {
    bool found = false;
    Integer best = 0;
    for (int i = t; i < D.rows(); ++i)
      for (int j = t; j < D.cols(); ++j) {
        if (D(i, j) == 0) continue;
        const Integer a = abs(D(i, j));
        if (!found || a < best) {
          found = true;
          best = a;
          pi = i;
          pj = j;
        }
      }
    return found;
  }
};

}  // namespace

SmithDecomposition smith_normal_form(const IntMatrix& A) {
  Worker w(A);
  const int m = A.rows();
  const int n = A.cols();
  const int steps = std::min(m, n);
  int rank = 0;

  for (int t = 0; t < steps; ++t) {
    int pi = t, pj = t;
    if (!w.find_pivot(t, pi, pj)) break;
    if (pi != t) w.row_swap(t, pi);
    if (pj != t) w.col_swap(t, pj);

    for (;;) {
      // Clear column t; truncated division keeps remainders strictly
      // smaller than the pivot, so re-pivoting terminates.
      bool reduced = true;
      for (int i = t + 1; i < m; ++i) {
        if (w.D(i, t) == 0) continue;
        const Integer q = w.D(i, t) / w.D(t, t);
        if (q != 0) w.row_axpy(i, t, q);
        if (w.D(i, t) != 0) {
          w.row_swap(t, i);
          reduced = false;
        }
      }
      if (!reduced) continue;
      for (int j = t + 1; j < n; ++j) {
        if (w.D(t, j) == 0) continue;
        const Integer q = w.D(t, j) / w.D(t, t);
        if (q != 0) w.col_axpy(j, t, q);
        if (w.D(t, j) != 0) {
          w.col_swap(t, j);
          reduced = false;
        }
      }
      if (!reduced) continue;

      // Divisibility: the pivot must divide every remaining entry.
      bool divides = true;
      for (int i = t + 1; i < m && divides; ++i)
        for (int j = t + 1; j < n && divides; ++j)
          if (w.D(i, j) % w.D(t, t) != 0) {
            w.row_axpy(t, i, Integer(-1));  // row_t += row_i
            divides = false;
          }
      if (divides) break;
    }
    if (w.D(t, t) < 0) w.row_negate(t);
    ++rank;
  }

  SmithDecomposition out;
  out.D = std::move(w.D);
  out.U = std::move(w.U);
  out.U_inv = std::move(w.U_inv);
  out.V = std::move(w.V);
  out.V_inv = std::move(w.V_inv);
  out.rank = rank;
  return out;
}

std::vector<Integer> SmithDecomposition::invariant_factors() const {
  std::vector<Integer> f;
  const int steps = std::min(D.rows(), D.cols());
  for (int t = 0; t < steps; ++t)
    if (D(t, t) != 0) f.push_back(D(t, t));
  return f;
}

IntMatrix SmithDecomposition::kernel_basis() const {
  const int n = V.rows();
  IntMatrix K(n, n - rank);
  for (int j = rank; j < n; ++j)
    for (int i = 0; i < n; ++i) K(i, j - rank) = V_inv(i, j);
  return K;
}

IntMatrix solve_in_span(const SmithDecomposition& snf, const IntMatrix& B) {
  // A = U D V, so X = V^{-1} D^{+} U^{-1} B with exact divisions.
  const IntMatrix Y = snf.U_inv * B;
  const int r = snf.rank;
  const int n = snf.V.rows();
  IntMatrix X(n, B.cols());
  for (int c = 0; c < B.cols(); ++c) {
    for (int i = 0; i < Y.rows(); ++i) {
      if (i < r) {
        if (Y(i, c) % snf.D(i, i) != 0)
          throw Error("solve_in_span: non-integral solution");
        X(i, c) = Y(i, c) / snf.D(i, i);
      } else if (Y(i, c) != 0) {
        throw Error("solve_in_span: column outside the span");
      }
    }
  }
  return snf.V_inv * X;
}

}  // namespace coc
