#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <vector>

#include "twistkit/algebra/field_desc.hpp"
#include "twistkit/algebra/polynomial.hpp"

namespace twistkit {

/// F_{q^m} in coefficient form, for extensions too large for tables
/// (total degree up to 64). Used by the Lang solver where m = order(g).
class PolyField {
 public:
  static constexpr uint32_t kMaxDegree = 64;
  using Elem = std::array<uint8_t, kMaxDegree>;

  PolyField() = default;

  explicit PolyField(FieldDesc desc) : desc_(std::move(desc)), pf_(desc_.p) {
    d_ = desc_.degree();
    p_ = desc_.p;
    q_ = desc_.q();
    if (d_ > kMaxDegree) throw GuardError("PolyField: degree exceeds 64");
    build_frobenius();
    build_base_embedding();
  }

  const FieldDesc& desc() const { return desc_; }
  uint32_t characteristic() const { return p_; }
  uint32_t degree() const { return d_; }
  uint64_t q() const { return q_; }

  Elem zero() const { return Elem{}; }
  Elem one() const {
    Elem e{};
    e[0] = 1;
    return e;
  }
  bool is_zero(const Elem& a) const {
    for (uint32_t i = 0; i < d_; ++i)
      if (a[i]) return false;
    return true;
  }
  Elem add(const Elem& a, const Elem& b) const {
    Elem r{};
    for (uint32_t i = 0; i < d_; ++i) r[i] = static_cast<uint8_t>((a[i] + b[i]) % p_);
    return r;
  }
  Elem sub(const Elem& a, const Elem& b) const {
    Elem r{};
    for (uint32_t i = 0; i < d_; ++i) r[i] = static_cast<uint8_t>((a[i] + p_ - b[i]) % p_);
    return r;
  }
  Elem neg(const Elem& a) const {
    Elem r{};
    for (uint32_t i = 0; i < d_; ++i) r[i] = static_cast<uint8_t>((p_ - a[i]) % p_);
    return r;
  }
  Elem mul(const Elem& a, const Elem& b) const {
    uint32_t t[2 * kMaxDegree] = {};
    for (uint32_t i = 0; i < d_; ++i) {
      if (!a[i]) continue;
      for (uint32_t j = 0; j < d_; ++j) t[i + j] += uint32_t{a[i]} * b[j];
    }
    for (uint32_t i = 0; i + 1 < 2 * d_; ++i) t[i] %= p_;
    const auto& mod = desc_.modulus;
    for (uint32_t i = 2 * d_ - 1; i-- > d_;) {
      uint32_t c = t[i] % p_;
      if (!c) continue;
      for (uint32_t j = 0; j < d_; ++j) t[i - d_ + j] = (t[i - d_ + j] + c * (p_ - mod[j])) % p_;
    }
    Elem r{};
    for (uint32_t i = 0; i < d_; ++i) r[i] = static_cast<uint8_t>(t[i] % p_);
    return r;
  }
  Elem inv(const Elem& a) const {
    if (is_zero(a)) throw PreconditionError("PolyField: inverse of zero");
    auto [g, s] = poly::gcd_inverse(pf_, to_poly(a), poly::Poly<PrimeField>(desc_.modulus.begin(), desc_.modulus.end()));
    if (g.size() != 1) throw InvariantError("PolyField: modulus not irreducible");
    return from_poly(s);
  }
  Elem pow(Elem a, uint64_t e) const {
    Elem r = one();
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  Elem from_int(int64_t v) const {
    Elem e{};
    int64_t r = v % static_cast<int64_t>(p_);
    e[0] = static_cast<uint8_t>(r < 0 ? r + p_ : r);
    return e;
  }

  /// x -> x^q, applied as a precomputed F_p-linear map.
  Elem frob(const Elem& a) const {
    uint32_t acc[kMaxDegree] = {};
    for (uint32_t j = 0; j < d_; ++j) {
      if (!a[j]) continue;
      for (uint32_t i = 0; i < d_; ++i) acc[i] += uint32_t{a[j]} * frob_cols_[j][i];
    }
    Elem r{};
    for (uint32_t i = 0; i < d_; ++i) r[i] = static_cast<uint8_t>(acc[i] % p_);
    return r;
  }
  /// Column j of the q-power map in the basis 1, x, ..., x^{d-1}.
  const Elem& frob_column(uint32_t j) const { return frob_cols_[j]; }

  Elem embed_base(uint32_t base_index) const { return base_embed_.at(base_index); }
  int32_t project_base(const Elem& a) const {
    auto it = base_project_.find(a);
    return it == base_project_.end() ? -1 : it->second;
  }

  std::vector<uint32_t> coeffs(const Elem& a) const { return std::vector<uint32_t>(a.begin(), a.begin() + d_); }
  Elem from_coeffs(const std::vector<uint32_t>& c) const {
    Elem e{};
    for (size_t i = 0; i < c.size() && i < d_; ++i) e[i] = static_cast<uint8_t>(c[i] % p_);
    return e;
  }

 private:
  poly::Poly<PrimeField> to_poly(const Elem& a) const {
    poly::Poly<PrimeField> r(a.begin(), a.begin() + d_);
    poly::trim(pf_, r);
    return r;
  }
  Elem from_poly(const poly::Poly<PrimeField>& a) const {
    Elem e{};
    for (size_t i = 0; i < a.size() && i < d_; ++i) e[i] = static_cast<uint8_t>(a[i]);
    return e;
  }

  void build_frobenius() {
    frob_cols_.resize(d_);
    Elem xj = one();
    Elem x{};
    if (d_ > 1) x[1] = 1;
    else x = from_int(static_cast<int64_t>(desc_.modulus[0] ? p_ - desc_.modulus[0] : 0));
    for (uint32_t j = 0; j < d_; ++j) {
      frob_cols_[j] = pow(xj, q_);
      xj = mul(xj, x);
    }
  }

  // Roots of the base modulus lie in the fixed field of x -> x^q, an F_p-space
  // of dimension k; enumerate it (q elements) and take the first root.
  void build_base_embedding() {
    const uint32_t k = desc_.k;
    auto base_mod = field_make(p_, k, 1).modulus;
    std::vector<std::vector<uint32_t>> rows(d_, std::vector<uint32_t>(d_));
    for (uint32_t j = 0; j < d_; ++j)
      for (uint32_t i = 0; i < d_; ++i) rows[i][j] = (frob_cols_[j][i] + (i == j ? p_ - 1 : 0)) % p_;
    auto basis = fixed_space_basis(rows);
    if (basis.size() != k) throw InvariantError("PolyField: fixed field has wrong dimension");
    std::vector<uint32_t> digits(k, 0);
    bool found = false;
    Elem alpha{};
    for (uint64_t c = 0; c < q_ && !found; ++c) {
      uint64_t v = c;
      Elem cand{};
      for (uint32_t i = 0; i < k; ++i) {
        Elem term{};
        for (uint32_t t = 0; t < d_; ++t) term[t] = static_cast<uint8_t>(basis[i][t] * (v % p_) % p_);
        cand = add(cand, term);
        v /= p_;
      }
      Elem acc = zero();
      for (size_t i = base_mod.size(); i-- > 0;) acc = add(mul(acc, cand), from_int(base_mod[i]));
      if (is_zero(acc)) {
        alpha = cand;
        found = true;
      }
    }
    if (!found) throw InvariantError("PolyField: base modulus has no root in the fixed field");
    base_embed_.assign(q_, Elem{});
    for (uint64_t b = 0; b < q_; ++b) {
      uint64_t v = b;
      Elem acc = zero(), power = one();
      for (uint32_t i = 0; i < k; ++i) {
        acc = add(acc, mul(from_int(static_cast<int64_t>(v % p_)), power));
        v /= p_;
        power = mul(power, alpha);
      }
      base_embed_[b] = acc;
      base_project_[acc] = static_cast<int32_t>(b);
    }
  }

  // Kernel of a square matrix over F_p (rows given), returned as coefficient vectors.
  std::vector<std::vector<uint32_t>> fixed_space_basis(std::vector<std::vector<uint32_t>> a) const {
    const uint32_t n = d_;
    std::vector<int> pivot_of_col(n, -1);
    uint32_t row = 0;
    for (uint32_t col = 0; col < n && row < n; ++col) {
      uint32_t sel = row;
      while (sel < n && a[sel][col] == 0) ++sel;
      if (sel == n) continue;
      std::swap(a[sel], a[row]);
      uint32_t inv = pf_.inv(a[row][col]);
      for (auto& v : a[row]) v = pf_.mul(v, inv);
      for (uint32_t r = 0; r < n; ++r) {
        if (r == row || a[r][col] == 0) continue;
        uint32_t f = a[r][col];
        for (uint32_t c = 0; c < n; ++c) a[r][c] = pf_.sub(a[r][c], pf_.mul(f, a[row][c]));
      }
      pivot_of_col[col] = static_cast<int>(row);
      ++row;
    }
    std::vector<std::vector<uint32_t>> basis;
    for (uint32_t free = 0; free < n; ++free) {
      if (pivot_of_col[free] >= 0) continue;
      std::vector<uint32_t> v(n, 0);
      v[free] = 1;
      for (uint32_t c = 0; c < n; ++c)
        if (pivot_of_col[c] >= 0) v[c] = pf_.neg(a[static_cast<size_t>(pivot_of_col[c])][free]);
      basis.push_back(v);
    }
    return basis;
  }

  FieldDesc desc_;
  PrimeField pf_;
  uint32_t p_ = 2, d_ = 1;
  uint64_t q_ = 2;
  std::vector<Elem> frob_cols_;
  std::vector<Elem> base_embed_;
  std::map<Elem, int32_t> base_project_;
};

}  // namespace twistkit
