#pragma once

#include "twistkit/algebra/linalg.hpp"
#include "twistkit/algebra/trunc.hpp"

namespace twistkit {

/// Ring injection M_n(F[pi]/pi^r) -> M_{nr}(F): block (a, b) of the image is
/// A_{a-b} for a >= b and zero above the diagonal. Basis vector l*n + j is the
/// coordinate x_{j+1}^{(l)}.
template <class F>
Matrix<F> iota(const TruncMat<F>& a) {
  const size_t n = a.n(), r = a.r();
  Matrix<F> out(a.field(), n * r, n * r);
  for (size_t bi = 0; bi < r; ++bi)
    for (size_t bj = 0; bj <= bi; ++bj)
      for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) out(bi * n + i, bj * n + j) = a.at(bi - bj, i, j);
  return out;
}

/// Inverse of iota on its image; throws if m is not block lower-triangular Toeplitz.
template <class F>
TruncMat<F> iota_inverse(const Matrix<F>& m, size_t n, size_t r) {
  if (m.rows() != n * r || m.cols() != n * r) throw PreconditionError("iota_inverse: wrong shape");
  TruncMat<F> a(m.field(), n, r);
  for (size_t l = 0; l < r; ++l)
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) a.at(l, i, j) = m(l * n + i, j);
  if (!(iota(a) == m)) throw PreconditionError("iota_inverse: matrix is not in the image of iota");
  return a;
}

}  // namespace twistkit
