#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "twistkit/algebra/linalg.hpp"
#include "twistkit/algebra/prime_field.hpp"

namespace twistkit {

/// Element of F[pi]/pi^r: coefficients of pi^0, ..., pi^{r-1}.
template <class F>
class TruncElem {
 public:
  using Elem = typename F::Elem;

  TruncElem() = default;
  TruncElem(const F& f, size_t r) : f_(&f), c_(r, f.zero()) {}
  static TruncElem constant(const F& f, size_t r, Elem v) {
    TruncElem e(f, r);
    e.c_[0] = v;
    return e;
  }

  const F& field() const { return *f_; }
  size_t r() const { return c_.size(); }
  Elem& operator[](size_t i) { return c_[i]; }
  const Elem& operator[](size_t i) const { return c_[i]; }
  bool operator==(const TruncElem& o) const { return c_ == o.c_; }

  bool is_unit() const { return !f_->is_zero(c_[0]); }
  bool is_zero() const { return valuation() == r(); }
  /// Least i with a nonzero coefficient; r for zero.
  size_t valuation() const {
    for (size_t i = 0; i < c_.size(); ++i)
      if (!f_->is_zero(c_[i])) return i;
    return c_.size();
  }

  TruncElem operator+(const TruncElem& o) const {
    TruncElem s(*f_, r());
    for (size_t i = 0; i < r(); ++i) s.c_[i] = f_->add(c_[i], o.c_[i]);
    return s;
  }
  TruncElem operator-(const TruncElem& o) const {
    TruncElem s(*f_, r());
    for (size_t i = 0; i < r(); ++i) s.c_[i] = f_->sub(c_[i], o.c_[i]);
    return s;
  }
  TruncElem operator-() const {
    TruncElem s(*f_, r());
    for (size_t i = 0; i < r(); ++i) s.c_[i] = f_->neg(c_[i]);
    return s;
  }
  TruncElem operator*(const TruncElem& o) const {
    TruncElem s(*f_, r());
    for (size_t i = 0; i < r(); ++i) {
      if (f_->is_zero(c_[i])) continue;
      for (size_t j = 0; i + j < r(); ++j) s.c_[i + j] = f_->add(s.c_[i + j], f_->mul(c_[i], o.c_[j]));
    }
    return s;
  }
  TruncElem inverse() const {
    if (!is_unit()) throw PreconditionError("TruncElem: inverse of a non-unit");
    // u^{-1} = a0^{-1} * sum_j (-x)^j with x = a0^{-1}(u - a0)
    auto a0inv = f_->inv(c_[0]);
    TruncElem x = scaled(a0inv);
    x.c_[0] = f_->zero();
    TruncElem acc = constant(*f_, r(), f_->one()), term = acc;
    for (size_t j = 1; j < r(); ++j) {
      term = term * (-x);
      acc = acc + term;
    }
    return acc.scaled(a0inv);
  }
  TruncElem scaled(const Elem& s) const {
    TruncElem t(*this);
    for (auto& v : t.c_) v = f_->mul(v, s);
    return t;
  }
  TruncElem pow(uint64_t e) const {
    TruncElem r_ = constant(*f_, r(), f_->one()), b = *this;
    while (e) {
      if (e & 1) r_ = r_ * b;
      b = b * b;
      e >>= 1;
    }
    return r_;
  }
  TruncElem frob() const {
    TruncElem t(*this);
    for (auto& v : t.c_) v = f_->frob(v);
    return t;
  }

 private:
  const F* f_ = nullptr;
  std::vector<Elem> c_;
};

/// n x n matrix over F[pi]/pi^r, stored coefficient-major: block l holds the
/// row-major matrix A_l of the expansion A_0 + A_1 pi + ... + A_{r-1} pi^{r-1}.
template <class F>
class TruncMat {
 public:
  using Elem = typename F::Elem;

  TruncMat() = default;
  TruncMat(const F& f, size_t n, size_t r) : f_(&f), n_(n), r_(r), a_(n * n * r, f.zero()) {}

  static TruncMat identity(const F& f, size_t n, size_t r) {
    TruncMat m(f, n, r);
    for (size_t i = 0; i < n; ++i) m.at(0, i, i) = f.one();
    return m;
  }

  const F& field() const { return *f_; }
  size_t n() const { return n_; }
  size_t r() const { return r_; }
  Elem& at(size_t level, size_t i, size_t j) { return a_[(level * n_ + i) * n_ + j]; }
  const Elem& at(size_t level, size_t i, size_t j) const { return a_[(level * n_ + i) * n_ + j]; }
  std::vector<Elem>& raw() { return a_; }
  const std::vector<Elem>& raw() const { return a_; }
  bool operator==(const TruncMat& o) const { return n_ == o.n_ && r_ == o.r_ && a_ == o.a_; }

  TruncElem<F> entry(size_t i, size_t j) const {
    TruncElem<F> e(*f_, r_);
    for (size_t l = 0; l < r_; ++l) e[l] = at(l, i, j);
    return e;
  }
  void set_entry(size_t i, size_t j, const TruncElem<F>& e) {
    for (size_t l = 0; l < r_; ++l) at(l, i, j) = e[l];
  }

  TruncMat operator*(const TruncMat& b) const {
    check_compatible(b);
    TruncMat c(*f_, n_, r_);
    for (size_t la = 0; la < r_; ++la)
      for (size_t lb = 0; la + lb < r_; ++lb)
        for (size_t i = 0; i < n_; ++i)
          for (size_t k = 0; k < n_; ++k) {
            const Elem& x = at(la, i, k);
            if (f_->is_zero(x)) continue;
            for (size_t j = 0; j < n_; ++j)
              c.at(la + lb, i, j) = f_->add(c.at(la + lb, i, j), f_->mul(x, b.at(lb, k, j)));
          }
    return c;
  }
  TruncMat operator+(const TruncMat& b) const {
    check_compatible(b);
    TruncMat c(*this);
    for (size_t i = 0; i < a_.size(); ++i) c.a_[i] = f_->add(a_[i], b.a_[i]);
    return c;
  }
  TruncMat operator-(const TruncMat& b) const {
    check_compatible(b);
    TruncMat c(*this);
    for (size_t i = 0; i < a_.size(); ++i) c.a_[i] = f_->sub(a_[i], b.a_[i]);
    return c;
  }
  TruncMat operator-() const {
    TruncMat c(*this);
    for (auto& x : c.a_) x = f_->neg(x);
    return c;
  }
  TruncMat scaled(const TruncElem<F>& s) const {
    TruncMat c(*f_, n_, r_);
    for (size_t i = 0; i < n_; ++i)
      for (size_t j = 0; j < n_; ++j) c.set_entry(i, j, entry(i, j) * s);
    return c;
  }

  /// Residue matrix A_0 over the field.
  Matrix<F> residue() const {
    Matrix<F> m(*f_, n_, n_);
    for (size_t i = 0; i < n_; ++i)
      for (size_t j = 0; j < n_; ++j) m(i, j) = at(0, i, j);
    return m;
  }
  Matrix<F> level_block(size_t l) const {
    Matrix<F> m(*f_, n_, n_);
    for (size_t i = 0; i < n_; ++i)
      for (size_t j = 0; j < n_; ++j) m(i, j) = at(l, i, j);
    return m;
  }
  void set_level_block(size_t l, const Matrix<F>& m) {
    for (size_t i = 0; i < n_; ++i)
      for (size_t j = 0; j < n_; ++j) at(l, i, j) = m(i, j);
  }

  bool is_identity() const { return *this == identity(*f_, n_, r_); }

  /// Largest i in [0, r] with A = 1 mod pi^i.
  size_t congruence_level() const {
    auto id = identity(*f_, n_, r_);
    for (size_t l = 0; l < r_; ++l)
      for (size_t i = 0; i < n_; ++i)
        for (size_t j = 0; j < n_; ++j)
          if (at(l, i, j) != id.at(l, i, j)) return l;
    return r_;
  }

  /// Determinant in F[pi]/pi^r by cofactor expansion (intended for small n).
  TruncElem<F> det() const {
    std::vector<size_t> rows(n_), cols(n_);
    for (size_t i = 0; i < n_; ++i) rows[i] = cols[i] = i;
    return minor_det(rows, cols);
  }

  bool is_invertible() const { return !f_->is_zero(determinant(residue())); }

  TruncMat inverse() const {
    auto a0 = residue();
    if (f_->is_zero(determinant(a0))) throw PreconditionError("TruncMat: inverse of non-invertible matrix");
    TruncMat a0inv(*f_, n_, r_);
    a0inv.set_level_block(0, twistkit::inverse(a0));
    // A = A0 (1 + X) with X = A0^{-1}(A - A0) nilpotent of order r
    TruncMat x = a0inv * *this;
    for (size_t i = 0; i < n_; ++i)
      for (size_t j = 0; j < n_; ++j) x.at(0, i, j) = f_->zero();
    TruncMat acc = identity(*f_, n_, r_), term = acc;
    TruncMat neg_x = -x;
    for (size_t j = 1; j < r_; ++j) {
      term = term * neg_x;
      acc = acc + term;
    }
    return acc * a0inv;
  }

  TruncMat pow(uint64_t e) const {
    TruncMat result = identity(*f_, n_, r_), b = *this;
    while (e) {
      if (e & 1) result = result * b;
      b = b * b;
      e >>= 1;
    }
    return result;
  }

  /// Coefficientwise q-power map.
  TruncMat frob() const {
    TruncMat c(*this);
    for (auto& x : c.a_) x = f_->frob(x);
    return c;
  }

 private:
  void check_compatible(const TruncMat& b) const {
    if (n_ != b.n_ || r_ != b.r_) throw PreconditionError("TruncMat: incompatible shapes");
  }

  TruncElem<F> minor_det(const std::vector<size_t>& rows, const std::vector<size_t>& cols) const {
    if (rows.size() == 1) return entry(rows[0], cols[0]);
    TruncElem<F> acc(*f_, r_);
    std::vector<size_t> sub_rows(rows.begin() + 1, rows.end());
    for (size_t c = 0; c < cols.size(); ++c) {
      auto e = entry(rows[0], cols[c]);
      if (e.is_zero()) continue;
      std::vector<size_t> sub_cols;
      for (size_t t = 0; t < cols.size(); ++t)
        if (t != c) sub_cols.push_back(cols[t]);
      auto term = e * minor_det(sub_rows, sub_cols);
      acc = (c % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
  }

  const F* f_ = nullptr;
  size_t n_ = 0, r_ = 0;
  std::vector<Elem> a_;
};

}  // namespace twistkit
