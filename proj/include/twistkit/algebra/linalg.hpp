#pragma once

#include <cstddef>
#include <vector>

#include "twistkit/algebra/polynomial.hpp"
#include "twistkit/algebra/prime_field.hpp"

namespace twistkit {

/// Dense row-major matrix over a field type F.
template <class F>
class Matrix {
 public:
  using Elem = typename F::Elem;

  Matrix() = default;
  Matrix(const F& f, size_t rows, size_t cols) : f_(&f), rows_(rows), cols_(cols), a_(rows * cols, f.zero()) {}

  static Matrix identity(const F& f, size_t n) {
    Matrix m(f, n, n);
    for (size_t i = 0; i < n; ++i) m(i, i) = f.one();
    return m;
  }

  const F& field() const { return *f_; }
  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  Elem& operator()(size_t i, size_t j) { return a_[i * cols_ + j]; }
  const Elem& operator()(size_t i, size_t j) const { return a_[i * cols_ + j]; }
  bool operator==(const Matrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }

  Matrix operator*(const Matrix& b) const {
    if (cols_ != b.rows_) throw PreconditionError("Matrix: dimension mismatch in product");
    Matrix c(*f_, rows_, b.cols_);
    for (size_t i = 0; i < rows_; ++i)
      for (size_t k = 0; k < cols_; ++k) {
        const Elem& x = (*this)(i, k);
        if (f_->is_zero(x)) continue;
        for (size_t j = 0; j < b.cols_; ++j) c(i, j) = f_->add(c(i, j), f_->mul(x, b(k, j)));
      }
    return c;
  }
  Matrix operator+(const Matrix& b) const {
    Matrix c(*this);
    for (size_t i = 0; i < a_.size(); ++i) c.a_[i] = f_->add(a_[i], b.a_[i]);
    return c;
  }
  Matrix operator-(const Matrix& b) const {
    Matrix c(*this);
    for (size_t i = 0; i < a_.size(); ++i) c.a_[i] = f_->sub(a_[i], b.a_[i]);
    return c;
  }
  Matrix scaled(const Elem& s) const {
    Matrix c(*this);
    for (auto& x : c.a_) x = f_->mul(x, s);
    return c;
  }
  bool is_zero() const {
    for (const auto& x : a_)
      if (!f_->is_zero(x)) return false;
    return true;
  }
  const std::vector<Elem>& data() const { return a_; }

 private:
  const F* f_ = nullptr;
  size_t rows_ = 0, cols_ = 0;
  std::vector<Elem> a_;
};

/// Reduced row echelon form in place; returns pivot columns.
template <class F>
std::vector<size_t> rref(Matrix<F>& a) {
  const F& f = a.field();
  std::vector<size_t> pivots;
  size_t row = 0;
  for (size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    size_t sel = row;
    while (sel < a.rows() && f.is_zero(a(sel, col))) ++sel;
    if (sel == a.rows()) continue;
    if (sel != row)
      for (size_t c = 0; c < a.cols(); ++c) std::swap(a(sel, c), a(row, c));
    auto inv = f.inv(a(row, col));
    for (size_t c = col; c < a.cols(); ++c) a(row, c) = f.mul(a(row, c), inv);
    for (size_t r = 0; r < a.rows(); ++r) {
      if (r == row || f.is_zero(a(r, col))) continue;
      auto factor = a(r, col);
      for (size_t c = col; c < a.cols(); ++c) a(r, c) = f.sub(a(r, c), f.mul(factor, a(row, c)));
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <class F>
size_t rank(Matrix<F> a) {
  return rref(a).size();
}

/// Basis of {x : A x = 0}, each basis vector as a std::vector of length cols.
template <class F>
std::vector<std::vector<typename F::Elem>> kernel_basis(Matrix<F> a) {
  const F& f = a.field();
  auto pivots = rref(a);
  std::vector<int> pivot_row(a.cols(), -1);
  for (size_t i = 0; i < pivots.size(); ++i) pivot_row[pivots[i]] = static_cast<int>(i);
  std::vector<std::vector<typename F::Elem>> basis;
  for (size_t free = 0; free < a.cols(); ++free) {
    if (pivot_row[free] >= 0) continue;
    std::vector<typename F::Elem> v(a.cols(), f.zero());
    v[free] = f.one();
    for (size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = f.neg(a(i, free));
    basis.push_back(std::move(v));
  }
  return basis;
}

template <class F>
typename F::Elem determinant(Matrix<F> a) {
  const F& f = a.field();
  if (a.rows() != a.cols()) throw PreconditionError("determinant: non-square matrix");
  auto det = f.one();
  const size_t n = a.rows();
  for (size_t col = 0; col < n; ++col) {
    size_t sel = col;
    while (sel < n && f.is_zero(a(sel, col))) ++sel;
    if (sel == n) return f.zero();
    if (sel != col) {
      for (size_t c = 0; c < n; ++c) std::swap(a(sel, c), a(col, c));
      det = f.neg(det);
    }
    det = f.mul(det, a(col, col));
    auto inv = f.inv(a(col, col));
    for (size_t r = col + 1; r < n; ++r) {
      if (f.is_zero(a(r, col))) continue;
      auto factor = f.mul(a(r, col), inv);
      for (size_t c = col; c < n; ++c) a(r, c) = f.sub(a(r, c), f.mul(factor, a(col, c)));
    }
  }
  return det;
}

/// Inverse of a square matrix; throws if singular.
template <class F>
Matrix<F> inverse(const Matrix<F>& a) {
  const F& f = a.field();
  const size_t n = a.rows();
  Matrix<F> aug(f, n, 2 * n);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = f.one();
  }
  auto pivots = rref(aug);
  if (pivots.size() < n || pivots[n - 1] != n - 1) throw PreconditionError("inverse: singular matrix");
  Matrix<F> out(f, n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) out(i, j) = aug(i, n + j);
  return out;
}

/// Characteristic polynomial det(xI - A) via reduction to Hessenberg form.
template <class F>
poly::Poly<F> charpoly(Matrix<F> h) {
  const F& f = h.field();
  const size_t n = h.rows();
  // Hessenberg reduction by similarity transforms.
  for (size_t m = 1; m + 1 < n + 1 && m < n; ++m) {
    size_t i = m;
    while (i < n && f.is_zero(h(i, m - 1))) ++i;
    if (i == n) continue;
    if (i != m) {
      for (size_t j = 0; j < n; ++j) std::swap(h(i, j), h(m, j));
      for (size_t j = 0; j < n; ++j) std::swap(h(j, i), h(j, m));
    }
    auto t_inv = f.inv(h(m, m - 1));
    for (size_t r = m + 1; r < n; ++r) {
      if (f.is_zero(h(r, m - 1))) continue;
      auto u = f.mul(h(r, m - 1), t_inv);
      for (size_t j = 0; j < n; ++j) h(r, j) = f.sub(h(r, j), f.mul(u, h(m, j)));
      for (size_t j = 0; j < n; ++j) h(j, m) = f.add(h(j, m), f.mul(u, h(j, r)));
    }
  }
  // p_0 = 1, p_k = (x - h_kk) p_{k-1} - sum_{i<k} h_{ik} (prod h_{j,j-1}) p_{i-1}
  std::vector<poly::Poly<F>> ps{{f.one()}};
  for (size_t k = 0; k < n; ++k) {
    poly::Poly<F> xk{f.neg(h(k, k)), f.one()};
    auto pk = poly::mul(f, xk, ps[k]);
    auto t = f.one();
    for (size_t i = k; i-- > 0;) {
      t = f.mul(t, h(i + 1, i));
      auto coef = f.mul(t, h(i, k));
      pk = poly::sub(f, pk, poly::scale(f, ps[i], coef));
    }
    ps.push_back(pk);
  }
  return ps[n];
}

/// Minimal polynomial via the first linear dependency among I, A, A^2, ...
template <class F>
poly::Poly<F> min_poly(const Matrix<F>& a) {
  const F& f = a.field();
  const size_t n = a.rows();
  std::vector<Matrix<F>> powers{Matrix<F>::identity(f, n)};
  for (size_t deg = 1; deg <= n; ++deg) {
    powers.push_back(powers.back() * a);
    // columns = flattened powers 0..deg
    Matrix<F> sys(f, n * n, deg + 1);
    for (size_t c = 0; c <= deg; ++c)
      for (size_t e = 0; e < n * n; ++e) sys(e, c) = powers[c].data()[e];
    auto ker = kernel_basis(sys);
    if (ker.empty()) continue;
    // kernel is one-dimensional with a nonzero top coefficient
    auto v = ker.front();
    poly::Poly<F> mp(v.begin(), v.end());
    return poly::make_monic(f, mp);
  }
  throw InvariantError("min_poly: no dependency found");
}

}  // namespace twistkit
