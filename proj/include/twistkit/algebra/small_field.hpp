#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "twistkit/algebra/field_desc.hpp"

namespace twistkit {

/// Table-driven F_{q^m} for fields with at most 65536 elements.
///
/// An element is the integer sum c_0 + c_1 p + ... + c_{d-1} p^{d-1} of its
/// coefficients in the polynomial basis 1, x, ..., x^{d-1}. Multiplication uses
/// log/exp tables; addition uses a full table when the field has at most 1024
/// elements and digitwise arithmetic otherwise.
class SmallField {
 public:
  using Elem = uint16_t;
  static constexpr uint64_t kMaxSize = 65536;
  static constexpr uint64_t kAddTableMax = 1024;

  SmallField() = default;

  explicit SmallField(FieldDesc desc) : desc_(std::move(desc)) {
    d_ = desc_.degree();
    p_ = desc_.p;
    size_ = desc_.size();
    if (size_ > kMaxSize) throw GuardError("SmallField: field of size " + std::to_string(size_) + " exceeds 65536");
    q_ = desc_.q();
    build_tables();
    build_base_embedding();
  }

  const FieldDesc& desc() const { return desc_; }
  uint32_t characteristic() const { return p_; }
  uint32_t degree() const { return d_; }
  uint64_t size() const { return size_; }
  /// Order of the base field F_q whose q-power map is the Frobenius.
  uint64_t q() const { return q_; }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  bool is_zero(Elem a) const { return a == 0; }

  Elem add(Elem a, Elem b) const {
    if (!add_table_.empty()) return add_table_[size_t{a} * size_ + b];
    return digitwise(a, b, false);
  }
  Elem sub(Elem a, Elem b) const { return add(a, neg_[b]); }
  Elem neg(Elem a) const { return neg_[a]; }
  Elem mul(Elem a, Elem b) const {
    if (a == 0 || b == 0) return 0;
    uint32_t s = log_[a] + log_[b];
    if (s >= size_ - 1) s -= static_cast<uint32_t>(size_ - 1);
    return exp_[s];
  }
  Elem inv(Elem a) const {
    if (a == 0) throw PreconditionError("SmallField: inverse of zero");
    return exp_[(size_ - 1 - log_[a]) % (size_ - 1)];
  }
  Elem pow(Elem a, uint64_t e) const {
    if (e == 0) return 1;
    if (a == 0) return 0;
    return exp_[static_cast<size_t>((uint64_t{log_[a]} * (e % (size_ - 1))) % (size_ - 1))];
  }
  Elem from_int(int64_t v) const {
    int64_t r = v % static_cast<int64_t>(p_);
    return static_cast<Elem>(r < 0 ? r + p_ : r);
  }

  /// x -> x^q.
  Elem frob(Elem a) const { return frob_[a]; }

  /// A fixed generator of the multiplicative group.
  Elem generator() const { return exp_.empty() ? Elem{1} : exp_[1 % (size_ - 1)]; }
  uint32_t log(Elem a) const { return log_[a]; }

  /// Absolute trace to the prime field, returned as an integer in [0, p).
  uint32_t trace_to_prime(Elem a) const {
    Elem acc = 0, x = a;
    for (uint32_t i = 0; i < d_; ++i) {
      acc = add(acc, x);
      x = pow(x, p_);
    }
    return acc;  // prime-field elements are constants, so the index is the residue
  }

  /// Embedding of the base field F_q (indexed in its own polynomial basis).
  Elem embed_base(uint32_t base_index) const { return base_embed_.at(base_index); }
  /// Inverse of embed_base; returns -1 if the element is not in the base field.
  int32_t project_base(Elem a) const { return base_project_[a]; }

  std::vector<uint32_t> coeffs(Elem a) const {
    std::vector<uint32_t> c(d_);
    for (uint32_t i = 0; i < d_; ++i) {
      c[i] = a % p_;
      a = static_cast<Elem>(a / p_);
    }
    return c;
  }
  Elem from_coeffs(const std::vector<uint32_t>& c) const {
    uint64_t v = 0;
    for (size_t i = c.size(); i-- > 0;) v = v * p_ + c[i] % p_;
    return static_cast<Elem>(v);
  }

 private:
  Elem digitwise(Elem a, Elem b, bool) const {
    uint64_t out = 0, place = 1;
    for (uint32_t i = 0; i < d_; ++i) {
      out += ((a % p_ + b % p_) % p_) * place;
      a = static_cast<Elem>(a / p_);
      b = static_cast<Elem>(b / p_);
      place *= p_;
    }
    return static_cast<Elem>(out);
  }

  Elem poly_mul(Elem a, Elem b) const {
    auto ca = coeffs(a), cb = coeffs(b);
    std::vector<uint64_t> t(2 * d_, 0);
    for (uint32_t i = 0; i < d_; ++i)
      for (uint32_t j = 0; j < d_; ++j) t[i + j] += uint64_t{ca[i]} * cb[j];
    for (auto& v : t) v %= p_;
    const auto& mod = desc_.modulus;
    for (size_t i = 2 * d_; i-- > d_;) {
      uint64_t c = t[i] % p_;
      if (c == 0) continue;
      for (uint32_t j = 0; j < d_; ++j) t[i - d_ + j] = (t[i - d_ + j] + c * (p_ - mod[j])) % p_;
      t[i] = 0;
    }
    std::vector<uint32_t> out(d_);
    for (uint32_t j = 0; j < d_; ++j) out[j] = static_cast<uint32_t>(t[j] % p_);
    return from_coeffs(out);
  }

  void build_tables() {
    neg_.resize(size_);
    for (uint64_t a = 0; a < size_; ++a) {
      auto c = coeffs(static_cast<Elem>(a));
      for (auto& v : c) v = (p_ - v) % p_;
      neg_[a] = from_coeffs(c);
    }
    if (size_ <= kAddTableMax) {
      add_table_.resize(size_ * size_);
      for (uint64_t a = 0; a < size_; ++a)
        for (uint64_t b = 0; b < size_; ++b)
          add_table_[a * size_ + b] = digitwise(static_cast<Elem>(a), static_cast<Elem>(b), false);
    }
    log_.assign(size_, 0);
    exp_.assign(size_ - 1, 0);
    if (size_ == 2) {
      exp_[0] = 1;
    } else {
      bool found = false;
      for (uint64_t g = 2; g < size_ && !found; ++g) {
        Elem x = 1;
        uint64_t period = 0;
        do {
          x = poly_mul(x, static_cast<Elem>(g));
          ++period;
        } while (x != 1 && period < size_);
        if (period != size_ - 1) continue;
        x = 1;
        for (uint64_t i = 0; i + 1 < size_; ++i) {
          exp_[i] = x;
          log_[x] = static_cast<uint32_t>(i);
          x = poly_mul(x, static_cast<Elem>(g));
        }
        found = true;
      }
      if (!found) throw InvariantError("SmallField: no primitive element found");
    }
    frob_.resize(size_);
    for (uint64_t a = 0; a < size_; ++a) frob_[a] = pow(static_cast<Elem>(a), q_);
  }

  void build_base_embedding() {
    const uint32_t k = desc_.k;
    auto base_mod = field_make(p_, k, 1).modulus;
    // smallest root of the base modulus
    Elem alpha = 0;
    bool found = false;
    for (uint64_t a = 0; a < size_ && !found; ++a) {
      Elem acc = 0;
      for (size_t i = base_mod.size(); i-- > 0;) acc = add(mul(acc, static_cast<Elem>(a)), from_int(base_mod[i]));
      if (acc == 0) {
        alpha = static_cast<Elem>(a);
        found = true;
      }
    }
    if (!found) throw InvariantError("SmallField: base modulus has no root");
    base_embed_.assign(q_, 0);
    base_project_.assign(size_, -1);
    for (uint64_t b = 0; b < q_; ++b) {
      uint64_t v = b;
      Elem acc = 0, power = 1;
      for (uint32_t i = 0; i < k; ++i) {
        acc = add(acc, mul(from_int(static_cast<int64_t>(v % p_)), power));
        v /= p_;
        power = mul(power, alpha);
      }
      base_embed_[b] = acc;
      base_project_[acc] = static_cast<int32_t>(b);
    }
  }

  FieldDesc desc_;
  uint32_t p_ = 2, d_ = 1;
  uint64_t size_ = 2, q_ = 2;
  std::vector<Elem> add_table_, neg_, exp_, frob_;
  std::vector<uint32_t> log_;
  std::vector<Elem> base_embed_;
  std::vector<int32_t> base_project_;
};

}  // namespace twistkit
