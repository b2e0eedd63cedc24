#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "twistkit/algebra/linalg.hpp"
#include "twistkit/algebra/small_field.hpp"

namespace twistkit {

using FVec = std::vector<uint16_t>;

/// Rows kept in insertion order; row k is normalised at its pivot (first
/// nonzero entry) and vanishes at the pivots of all earlier rows.
class Echelon {
 public:
  Echelon(const SmallField& f, size_t dim) : f_(&f), dim_(dim) {}

  size_t rank() const { return rows_.size(); }
  size_t dim() const { return dim_; }
  const std::vector<FVec>& rows() const { return rows_; }
  const std::vector<size_t>& pivots() const { return pivots_; }

  /// v minus its projection onto the span, reading off the pivots in order.
  FVec reduce(FVec v) const {
    for (size_t k = 0; k < rows_.size(); ++k) {
      const uint16_t c = v[pivots_[k]];
      if (c == 0) continue;
      for (size_t t = 0; t < dim_; ++t)
        if (rows_[k][t]) v[t] = f_->sub(v[t], f_->mul(c, rows_[k][t]));
    }
    return v;
  }
  bool contains(const FVec& v) const {
    auto w = reduce(v);
    for (auto x : w)
      if (x) return false;
    return true;
  }
  /// Adds v; returns false (and leaves the span unchanged) if v is already in it.
  bool insert(const FVec& v) {
    auto w = reduce(v);
    size_t p = 0;
    while (p < dim_ && w[p] == 0) ++p;
    if (p == dim_) return false;
    const uint16_t inv = f_->inv(w[p]);
    for (auto& x : w) x = f_->mul(x, inv);
    rows_.push_back(std::move(w));
    pivots_.push_back(p);
    return true;
  }
  void pop() {
    rows_.pop_back();
    pivots_.pop_back();
  }

 private:
  const SmallField* f_;
  size_t dim_;
  std::vector<FVec> rows_;
  std::vector<size_t> pivots_;
};

/// A complete flag V_1 < ... < V_N in F^N; rows()[i] spans V_{i+1} over V_i.
/// Stored in canonical form, so equality of flags is equality of rows.
class Flag {
 public:
  Flag() = default;
  /// Canonicalises a basis adapted to the flag; throws if the rows are dependent.
  Flag(const SmallField& f, const std::vector<FVec>& rows) : f_(&f) {
    const size_t n = rows.size();
    Echelon e(f, n);
    for (const auto& v : rows) {
      if (v.size() != n) throw PreconditionError("Flag: row length differs from the dimension");
      if (!e.insert(v)) throw PreconditionError("Flag: rows are linearly dependent");
    }
    rows_ = e.rows();
  }

  const SmallField& field() const { return *f_; }
  size_t dim() const { return rows_.size(); }
  const std::vector<FVec>& rows() const { return rows_; }
  bool operator==(const Flag& o) const { return rows_ == o.rows_; }
  bool operator<(const Flag& o) const { return rows_ < o.rows_; }

  /// Span of V_i (i rows).
  Echelon piece(size_t i) const {
    Echelon e(*f_, dim());
    for (size_t k = 0; k < i; ++k) e.insert(rows_[k]);
    return e;
  }

  /// q-power Frobenius applied entrywise.
  Flag frobenius() const {
    auto rows = rows_;
    for (auto& v : rows)
      for (auto& x : v) x = f_->frob(x);
    return Flag(*f_, rows);
  }

  /// g . flag for a matrix acting on column vectors.
  Flag apply(const Matrix<SmallField>& g) const {
    std::vector<FVec> rows;
    for (const auto& v : rows_) rows.push_back(mat_vec(g, v));
    return Flag(*f_, rows);
  }

  std::vector<std::vector<uint32_t>> to_indices() const {
    std::vector<std::vector<uint32_t>> out;
    for (const auto& v : rows_) out.emplace_back(v.begin(), v.end());
    return out;
  }

  static FVec mat_vec(const Matrix<SmallField>& g, const FVec& v) {
    const SmallField& f = g.field();
    FVec out(g.rows(), 0);
    for (size_t i = 0; i < g.rows(); ++i) {
      uint16_t acc = 0;
      for (size_t j = 0; j < g.cols(); ++j)
        if (v[j]) acc = f.add(acc, f.mul(g(i, j), v[j]));
      out[i] = acc;
    }
    return out;
  }

 private:
  const SmallField* f_ = nullptr;
  std::vector<FVec> rows_;
};

/// One-line permutation w (0-based): w[i] is the image of i.
using Perm = std::vector<size_t>;

inline Perm identity_perm(size_t n) {
  Perm w(n);
  for (size_t i = 0; i < n; ++i) w[i] = i;
  return w;
}

inline Perm inverse_perm(const Perm& w) {
  Perm v(w.size());
  for (size_t i = 0; i < w.size(); ++i) v[w[i]] = i;
  return v;
}

/// The cycle (1, ..., z) in the convention of relpos: the flags
/// V_1 < V_1 + F V_1 < ... < V_z with V_z F-stable satisfy relpos(f, F f) = w,
/// which in one-line notation is [z, 1, 2, ..., z-1, z+1, ..., N].
inline Perm cycle_perm(size_t n, size_t z) {
  if (z < 1 || z > n) throw PreconditionError("cycle_perm: z must lie in [1, N]");
  Perm w = identity_perm(n);
  w[0] = z - 1;
  for (size_t i = 1; i < z; ++i) w[i] = i - 1;
  return w;
}

inline std::string perm_to_string(const Perm& w) {
  std::string s = "[";
  for (size_t i = 0; i < w.size(); ++i) s += (i ? "," : "") + std::to_string(w[i] + 1);
  return s + "]";
}

/// dim(V_i cap V'_j) for i, j in [0, N].
inline std::vector<std::vector<size_t>> intersection_table(const Flag& a, const Flag& b) {
  const size_t n = a.dim();
  std::vector<std::vector<size_t>> d(n + 1, std::vector<size_t>(n + 1, 0));
  for (size_t i = 1; i <= n; ++i) {
    Echelon e = a.piece(i);
    for (size_t j = 1; j <= n; ++j) {
      e.insert(b.rows()[j - 1]);
      d[i][j] = i + j - e.rank();
    }
  }
  return d;
}

/// Relative position: w(i) = min { j : d_{ij} > d_{i-1,j} }.
inline Perm relpos(const Flag& a, const Flag& b) {
  if (a.dim() != b.dim()) throw PreconditionError("relpos: flags of different dimension");
  auto d = intersection_table(a, b);
  const size_t n = a.dim();
  Perm w(n);
  for (size_t i = 1; i <= n; ++i) {
    size_t j = 1;
    while (d[i][j] <= d[i - 1][j]) ++j;
    w[i - 1] = j - 1;
  }
  return w;
}

/// u V_i = V_i for every i.
inline bool springer_membership(const Flag& f, const Matrix<SmallField>& u) {
  Echelon e(f.field(), f.dim());
  for (const auto& v : f.rows()) {
    e.insert(v);
    if (!e.contains(Flag::mat_vec(u, v))) return false;
  }
  return true;
}

/// relpos(f, F f) = w.
inline bool dl_membership(const Flag& f, const Perm& w) { return relpos(f, f.frobenius()) == w; }

}  // namespace twistkit
