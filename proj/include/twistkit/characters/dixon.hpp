#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <numeric>
#include <vector>

#include "twistkit/algebra/linalg.hpp"
#include "twistkit/characters/cyclotomic.hpp"
#include "twistkit/core/check.hpp"
#include "twistkit/core/parallel.hpp"
#include "twistkit/groups/class_table.hpp"

namespace twistkit {

/// One irreducible character: value mod ell, eigenvalue multiplicities and the
/// exact cyclotomic value on every class.
struct CharacterRow {
  uint64_t degree = 0;
  std::vector<uint64_t> mod;                      // per class, in F_ell
  std::vector<std::vector<uint32_t>> mult;        // per class, length e: multiplicity of zeta_e^i
  std::vector<Cyclotomic> exact;                  // per class
};

/// Class multiplication coefficients a[j][k][l] = #{x in C_j : x^{-1} z_l in C_k},
/// with z_l the representative of class l; stored flat as ((j*h)+k)*h + l.
inline std::vector<uint32_t> class_multiplication_coefficients(const ClassTable& ct, unsigned threads = 1) {
  const GroupTable& g = ct.group();
  const size_t h = ct.num_classes(), order = g.order();
  std::vector<GroupTable::Mat> inverses(order);
  parallel_for(order, threads, [&](size_t x) { inverses[x] = g.element(x).inverse(); });
  std::vector<uint32_t> a(h * h * h, 0);
  parallel_for(h, threads, [&](size_t l) {
    auto z = g.element(ct.rep(l));
    for (size_t x = 0; x < order; ++x) {
      const size_t j = ct.class_of(x), k = ct.class_of(g.require_index(inverses[x] * z));
      ++a[(j * h + k) * h + l];
    }
  });
  return a;
}

/// Irreducible characters by the Dixon-Schneider method.
class CharacterTable {
 public:
  static constexpr size_t kMaxClasses = 200;

  static std::shared_ptr<const CharacterTable> build(std::shared_ptr<const ClassTable> ct, unsigned threads = 1) {
    if (ct->num_classes() > kMaxClasses)
      throw GuardError("dixon_table: " + std::to_string(ct->num_classes()) + " classes exceed the guard of " +
                       std::to_string(kMaxClasses));
    auto t = std::shared_ptr<CharacterTable>(new CharacterTable(std::move(ct)));
    t->compute(threads);
    return t;
  }

  const ClassTable& classes() const { return *ct_; }
  std::shared_ptr<const ClassTable> classes_ptr() const { return ct_; }
  const DixonPrime& prime() const { return dp_; }
  uint64_t exponent() const { return dp_.e; }
  size_t size() const { return rows_.size(); }
  const CharacterRow& row(size_t i) const { return rows_[i]; }
  const std::vector<CharacterRow>& rows() const { return rows_; }

  /// Row index whose exact values equal `values`, or -1.
  int find_row(const std::vector<Cyclotomic>& values) const {
    for (size_t i = 0; i < rows_.size(); ++i)
      if (rows_[i].exact == values) return static_cast<int>(i);
    return -1;
  }

  /// <f, g> = |G|^{-1} sum_c |C_c| f(c) g(c^{-1}) mod ell.
  uint64_t inner_mod(const std::vector<uint64_t>& f, const std::vector<uint64_t>& g) const {
    const uint64_t ell = dp_.ell;
    uint64_t acc = 0;
    for (size_t c = 0; c < f.size(); ++c) {
      uint64_t term = mul_mod(f[c], g[ct_->inverse_class(c)], ell);
      acc = (acc + mul_mod(term, ct_->size(c) % ell, ell)) % ell;
    }
    return mul_mod(acc, dp_.inv(ct_->group().order() % ell), ell);
  }

  /// Orthogonality, degree and lifting checks.
  CheckList verify() const {
    CheckList out;
    const size_t h = ct_->num_classes();
    const uint64_t ell = dp_.ell;
    out.add("dixon_prime", dp_.ell % dp_.e == 1 && is_prime(dp_.ell) && pow_mod(dp_.theta, dp_.e, ell) == 1,
            "ell = " + std::to_string(dp_.ell) + ", e = " + std::to_string(dp_.e));
    out.add("row_count_equals_class_count", rows_.size() == h);
    uint64_t sq = 0;
    for (const auto& r : rows_) sq += r.degree * r.degree;
    out.add("sum_of_squared_degrees", sq == ct_->group().order(), std::to_string(sq));
    Json bad_row = nullptr;
    for (size_t i = 0; i < h && bad_row.is_null(); ++i)
      for (size_t j = 0; j < h && bad_row.is_null(); ++j)
        if (inner_mod(rows_[i].mod, rows_[j].mod) != (i == j ? 1u : 0u)) bad_row = Json{{"rows", {i, j}}};
    out.add("row_orthogonality_mod_ell", bad_row.is_null(), {}, bad_row);
    Json bad_col = nullptr;
    for (size_t k = 0; k < h && bad_col.is_null(); ++k)
      for (size_t l = 0; l < h && bad_col.is_null(); ++l) {
        uint64_t acc = 0;
        for (const auto& r : rows_) acc = (acc + mul_mod(r.mod[k], r.mod[ct_->inverse_class(l)], ell)) % ell;
        uint64_t want = k == l ? ct_->centraliser_order(k) % ell : 0;
        if (acc != want) bad_col = Json{{"classes", {k, l}}};
      }
    out.add("column_orthogonality_mod_ell", bad_col.is_null(), {}, bad_col);
    bool lift_ok = true;
    for (const auto& r : rows_)
      for (size_t c = 0; c < h; ++c) {
        uint64_t s = 0, img = 0;
        for (size_t i = 0; i < dp_.e; ++i) {
          s += r.mult[c][i];
          img = (img + mul_mod(r.mult[c][i], dp_.root(static_cast<int64_t>(i)), ell)) % ell;
        }
        lift_ok = lift_ok && s == r.degree && img == r.mod[c] && r.exact[c].mod_image(ell, dp_.theta) == r.mod[c];
      }
    out.add("lifted_values_reproduce_mod_images", lift_ok, "sum of multiplicities equals the degree");
    bool id_ok = true;
    const size_t id = ct_->identity_class();
    for (const auto& r : rows_)
      id_ok = id_ok && r.exact[id].is_integer() && r.exact[id].integer_value() == static_cast<int64_t>(r.degree);
    bool trivial_first = !rows_.empty();
    for (size_t c = 0; c < h && trivial_first; ++c) trivial_first = rows_[0].mod[c] == 1;
    out.add("identity_values_are_degrees", id_ok);
    out.add("trivial_character_first", trivial_first);
    return out;
  }

 private:
  explicit CharacterTable(std::shared_ptr<const ClassTable> ct) : ct_(std::move(ct)) {}

  void compute(unsigned threads) {
    const ClassTable& ct = *ct_;
    const size_t h = ct.num_classes();
    const uint64_t order = ct.group().order();
    uint64_t e = 1;
    for (size_t c = 0; c < h; ++c) e = std::lcm(e, ct.element_order(c));
    dp_ = DixonPrime::select(e, order);
    if (dp_.ell > UINT32_MAX) throw GuardError("dixon_table: ell too large");
    const PrimeField fl(static_cast<uint32_t>(dp_.ell));
    const auto coeff = class_multiplication_coefficients(ct, threads);

    auto class_matrix = [&](size_t j) {
      Matrix<PrimeField> m(fl, h, h);
      for (size_t k = 0; k < h; ++k)
        for (size_t l = 0; l < h; ++l) m(k, l) = static_cast<uint32_t>(coeff[(j * h + k) * h + l] % dp_.ell);
      return m;
    };

    // Simultaneous eigenspaces of the class matrices; each space is kept as
    // an RREF row basis so that coordinates are read off at the pivots.
    std::vector<Matrix<PrimeField>> spaces{Matrix<PrimeField>::identity(fl, h)};
    for (size_t j = 0; j < h; ++j) {
      bool all_lines = true;
      for (const auto& s : spaces) all_lines = all_lines && s.rows() == 1;
      if (all_lines) break;
      if (j == ct.identity_class()) continue;
      const auto a = class_matrix(j);
      std::vector<Matrix<PrimeField>> next;
      for (auto& s : spaces) {
        if (s.rows() == 1) {
          next.push_back(s);
          continue;
        }
        for (auto& piece : split(fl, a, s)) next.push_back(std::move(piece));
      }
      spaces = std::move(next);
    }
    for (const auto& s : spaces)
      if (s.rows() != 1) throw InvariantError("dixon_table: class matrices do not separate the characters");

    const size_t id = ct.identity_class();
    for (const auto& s : spaces) {
      std::vector<uint64_t> w(h);
      if (s(0, id) == 0) throw InvariantError("dixon_table: eigenvector vanishes at the identity class");
      const uint64_t norm = dp_.inv(s(0, id));
      for (size_t k = 0; k < h; ++k) w[k] = mul_mod(s(0, k), norm, dp_.ell);
      rows_.push_back(make_row(w));
    }
    std::sort(rows_.begin(), rows_.end(), [&](const CharacterRow& x, const CharacterRow& y) {
      bool tx = std::all_of(x.mod.begin(), x.mod.end(), [](uint64_t v) { return v == 1; });
      bool ty = std::all_of(y.mod.begin(), y.mod.end(), [](uint64_t v) { return v == 1; });
      if (tx != ty) return tx;
      if (x.degree != y.degree) return x.degree < y.degree;
      return x.exact < y.exact;
    });
  }

  // Splits the invariant subspace with row basis s into eigenspaces of a.
  std::vector<Matrix<PrimeField>> split(const PrimeField& fl, const Matrix<PrimeField>& a, const Matrix<PrimeField>& s) {
    const size_t dim = s.rows(), h = s.cols();
    std::vector<size_t> pivots;
    for (size_t i = 0; i < dim; ++i) {
      size_t c = 0;
      while (s(i, c) == 0) ++c;
      pivots.push_back(c);
    }
    // restricted operator: column t holds the coordinates of a * s_t
    Matrix<PrimeField> m(fl, dim, dim);
    for (size_t t = 0; t < dim; ++t) {
      std::vector<uint32_t> img(h, 0);
      for (size_t k = 0; k < h; ++k) {
        uint32_t acc = 0;
        for (size_t l = 0; l < h; ++l) acc = fl.add(acc, fl.mul(a(k, l), s(t, l)));
        img[k] = acc;
      }
      std::vector<uint32_t> rebuilt(h, 0);
      for (size_t u = 0; u < dim; ++u) {
        m(u, t) = img[pivots[u]];
        for (size_t k = 0; k < h; ++k) rebuilt[k] = fl.add(rebuilt[k], fl.mul(m(u, t), s(u, k)));
      }
      if (rebuilt != img) throw InvariantError("dixon_table: subspace is not invariant");
    }
    auto cp = charpoly(m);
    std::vector<Matrix<PrimeField>> out;
    size_t covered = 0;
    for (uint64_t lam = 0; lam < dp_.ell && covered < dim; ++lam) {
      if (poly::eval(fl, cp, static_cast<uint32_t>(lam)) != 0) continue;
      auto shifted = m;
      for (size_t i = 0; i < dim; ++i) shifted(i, i) = fl.sub(shifted(i, i), static_cast<uint32_t>(lam));
      auto ker = kernel_basis(shifted);
      Matrix<PrimeField> piece(fl, ker.size(), h);
      for (size_t v = 0; v < ker.size(); ++v)
        for (size_t u = 0; u < dim; ++u)
          for (size_t k = 0; k < h; ++k) piece(v, k) = fl.add(piece(v, k), fl.mul(ker[v][u], s(u, k)));
      rref(piece);
      covered += ker.size();
      out.push_back(std::move(piece));
    }
    if (covered != dim) throw InvariantError("dixon_table: class matrix is not split semisimple mod ell");
    return out;
  }

  CharacterRow make_row(const std::vector<uint64_t>& w) {
    const ClassTable& ct = *ct_;
    const size_t h = ct.num_classes();
    const uint64_t ell = dp_.ell, order = ct.group().order();
    // sum_k w_k w_{k*} / |C_k| = |G| / chi(1)^2
    uint64_t s = 0;
    for (size_t k = 0; k < h; ++k)
      s = (s + mul_mod(mul_mod(w[k], w[ct.inverse_class(k)], ell), dp_.inv(ct.size(k) % ell), ell)) % ell;
    if (s == 0) throw InvariantError("dixon_table: degenerate norm");
    const uint64_t d2 = mul_mod(order % ell, dp_.inv(s), ell);
    CharacterRow row;
    for (uint64_t d = 1; d * d <= order; ++d)
      if (mul_mod(d, d, ell) == d2) {
        row.degree = d;
        break;
      }
    if (row.degree == 0) throw InvariantError("dixon_table: no degree matches the norm");
    row.mod.resize(h);
    for (size_t k = 0; k < h; ++k) row.mod[k] = mul_mod(mul_mod(w[k], row.degree, ell), dp_.inv(ct.size(k) % ell), ell);
    row.mult.assign(h, std::vector<uint32_t>(dp_.e, 0));
    row.exact.resize(h);
    for (size_t k = 0; k < h; ++k) {
      const uint64_t o = ct.element_order(k), step = dp_.e / o;
      const uint64_t inv_o = dp_.inv(o % ell);
      std::vector<int64_t> counts(dp_.e, 0);
      for (uint64_t a = 0; a < o; ++a) {
        uint64_t acc = 0;
        for (uint64_t j = 0; j < o; ++j) {
          uint64_t v = row.mod[ct.power_class(k, j)];
          acc = (acc + mul_mod(v, dp_.root(-static_cast<int64_t>(a * j * step)), ell)) % ell;
        }
        const uint64_t m = mul_mod(acc, inv_o, ell);
        if (m > row.degree) throw InvariantError("dixon_table: eigenvalue multiplicity out of range");
        row.mult[k][a * step] = static_cast<uint32_t>(m);
        counts[a * step] = static_cast<int64_t>(m);
      }
      row.exact[k] = Cyclotomic::from_counts(dp_.e, counts);
    }
    return row;
  }

  std::shared_ptr<const ClassTable> ct_;
  DixonPrime dp_;
  std::vector<CharacterRow> rows_;
};

}  // namespace twistkit
