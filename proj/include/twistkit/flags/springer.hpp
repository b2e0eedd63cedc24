#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "twistkit/algebra/embedding.hpp"
#include "twistkit/algebra/field_desc.hpp"
#include "twistkit/algebra/small_field.hpp"

namespace twistkit {

/// Ambient data for flags of F_{q^m}^{nr}: the field, u = iota(1 + pi) and
/// the base field F_q inside it.
struct FlagContext {
  uint32_t n = 0, r = 0, p = 0, k = 0, m = 0;
  std::shared_ptr<const SmallField> field;  // F_{q^m}
  Matrix<SmallField> u;

  size_t dim() const { return size_t{n} * r; }
  uint64_t q() const { return ipow(p, k); }
  uint64_t field_size() const { return field->size(); }

  /// Basis index of x_j^{(l)}, j in [1, n].
  size_t coord(size_t j, size_t l) const { return l * n + (j - 1); }

  /// The embedded image of a base-field element given by its F_q index.
  uint16_t base(uint32_t t) const { return field->embed_base(t); }
  bool is_rational(uint16_t a) const { return field->project_base(a) >= 0; }
};

inline Matrix<SmallField> springer_u(const SmallField& f, size_t n, size_t r) {
  auto a = TruncMat<SmallField>::identity(f, n, r);
  if (r > 1)
    for (size_t i = 0; i < n; ++i) a.at(1, i, i) = f.one();
  return iota(a);
}

inline FlagContext make_flag_context(uint32_t n, uint32_t r, uint32_t p, uint32_t k, uint32_t m) {
  if (n < 1 || r < 1) throw PreconditionError("flags: n and r must be positive");
  if (n * r > 16) throw GuardError("flags: N = nr exceeds 16");
  FlagContext c;
  c.n = n;
  c.r = r;
  c.p = p;
  c.k = k;
  c.m = m;
  c.field = std::make_shared<const SmallField>(field_make(p, k, m));
  c.u = springer_u(*c.field, n, r);
  return c;
}

/// iota(I + pi^{r-1} A) for A in M_n(F_q), A given by F_q indices row-major.
inline Matrix<SmallField> congruence_element(const FlagContext& c, const std::vector<uint32_t>& a) {
  auto t = TruncMat<SmallField>::identity(*c.field, c.n, c.r);
  for (size_t i = 0; i < c.n; ++i)
    for (size_t j = 0; j < c.n; ++j)
      t.at(c.r - 1, i, j) = c.field->add(t.at(c.r - 1, i, j), c.base(a[i * c.n + j]));
  return iota(t);
}

/// All A in M_n(F_q) in counter order (last entry fastest).
inline std::vector<std::vector<uint32_t>> all_base_matrices(const FlagContext& c) {
  const uint64_t q = c.q(), nn = uint64_t{c.n} * c.n;
  const uint64_t total = ipow(q, static_cast<uint32_t>(nn));
  if (total > 1'000'000) throw GuardError("flags: q^{n^2} exceeds 1e6");
  std::vector<std::vector<uint32_t>> out;
  for (uint64_t v = 0; v < total; ++v) {
    std::vector<uint32_t> a(nn);
    uint64_t t = v;
    for (size_t e = nn; e-- > 0;) {
      a[e] = static_cast<uint32_t>(t % q);
      t /= q;
    }
    out.push_back(std::move(a));
  }
  return out;
}

/// iota of a generating set of GL_n(F_q[pi]/pi^r): elementary matrices
/// I + t pi^l E_ij, diag(gamma, 1, ...) and diag(1 + t pi^l, 1, ...), with t
/// running over an F_p-basis of F_q.
inline std::vector<Matrix<SmallField>> gl_generators(const FlagContext& c) {
  const SmallField& f = *c.field;
  SmallField base(field_make(c.p, c.k, 1));
  std::vector<uint16_t> basis;
  for (uint32_t i = 0, t = 1; i < c.k; ++i, t *= c.p) basis.push_back(c.base(t));
  std::vector<Matrix<SmallField>> out;
  auto id = [&] { return TruncMat<SmallField>::identity(f, c.n, c.r); };
  for (size_t l = 0; l < c.r; ++l)
    for (auto t : basis) {
      for (size_t i = 0; i < c.n; ++i)
        for (size_t j = 0; j < c.n; ++j) {
          if (i == j) continue;
          auto a = id();
          a.at(l, i, j) = t;
          out.push_back(iota(a));
        }
      if (l > 0) {
        auto a = id();
        a.at(l, 0, 0) = t;
        out.push_back(iota(a));
      }
    }
  auto a = id();
  a.at(0, 0, 0) = c.base(base.generator());
  out.push_back(iota(a));
  return out;
}

struct CommutantReport {
  size_t dimension = 0;
  size_t expected = 0;
  bool basis_in_image = false;
  bool image_commutes = false;
  bool nilpotent_of_order_r = false;
};

/// Solves X u = u X over the context field and compares with the image of iota.
inline CommutantReport commutant_check(const FlagContext& c) {
  const SmallField& f = *c.field;
  const size_t nn = c.dim(), vars = nn * nn;
  Matrix<SmallField> sys(f, vars, vars);
  // (Xu - uX)_{ab} = sum_t X_{at} u_{tb} - u_{at} X_{tb}; unknown X_{st} at index s*N+t.
  for (size_t a = 0; a < nn; ++a)
    for (size_t b = 0; b < nn; ++b) {
      const size_t row = a * nn + b;
      for (size_t t = 0; t < nn; ++t) {
        sys(row, a * nn + t) = f.add(sys(row, a * nn + t), c.u(t, b));
        sys(row, t * nn + b) = f.sub(sys(row, t * nn + b), c.u(a, t));
      }
    }
  auto basis = kernel_basis(sys);
  CommutantReport out;
  out.dimension = basis.size();
  out.expected = size_t{c.n} * c.n * c.r;
  out.basis_in_image = true;
  for (const auto& v : basis) {
    Matrix<SmallField> x(f, nn, nn);
    for (size_t s = 0; s < vars; ++s) x(s / nn, s % nn) = v[s];
    try {
      iota_inverse(x, c.n, c.r);
    } catch (const PreconditionError&) {
      out.basis_in_image = false;
    }
  }
  // the image of iota has dimension n^2 r, so equal dimensions and inclusion give equality
  out.image_commutes = true;
  for (const auto& g : gl_generators(c)) out.image_commutes = out.image_commutes && g * c.u == c.u * g;
  auto nil = c.u - Matrix<SmallField>::identity(f, nn);
  auto pw = Matrix<SmallField>::identity(f, nn);
  bool below = true;
  for (size_t i = 1; i <= c.r; ++i) {
    pw = pw * nil;
    if (i < c.r) below = below && !pw.is_zero();
  }
  out.nilpotent_of_order_r = below && pw.is_zero();
  return out;
}

}  // namespace twistkit
