#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace twistkit {

/// Thrown when an input violates a documented precondition.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when a configured size guard would be exceeded.
class GuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown when an internal mathematical invariant fails. Never expected.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline bool is_prime(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline uint64_t mul_mod(uint64_t a, uint64_t b, uint64_t m) {
  return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

inline uint64_t pow_mod(uint64_t base, uint64_t exp, uint64_t m) {
  uint64_t result = 1 % m;
  base %= m;
  while (exp) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

inline uint64_t ipow(uint64_t base, uint32_t exp) {
  uint64_t r = 1;
  while (exp--) r *= base;
  return r;
}

/// Prime field Z/p for p < 2^32.
class PrimeField {
 public:
  using Elem = uint32_t;

  PrimeField() = default;
  explicit PrimeField(uint32_t p) : p_(p) {
    if (!is_prime(p)) throw PreconditionError("PrimeField: " + std::to_string(p) + " is not prime");
  }

  uint32_t characteristic() const { return p_; }
  uint64_t size() const { return p_; }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  bool is_zero(Elem a) const { return a == 0; }
  Elem add(Elem a, Elem b) const {
    uint64_t s = uint64_t{a} + b;
    return static_cast<Elem>(s >= p_ ? s - p_ : s);
  }
  Elem sub(Elem a, Elem b) const { return a >= b ? a - b : static_cast<Elem>(uint64_t{a} + p_ - b); }
  Elem neg(Elem a) const { return a == 0 ? 0 : p_ - a; }
  Elem mul(Elem a, Elem b) const { return static_cast<Elem>(uint64_t{a} * b % p_); }
  Elem inv(Elem a) const {
    if (a == 0) throw PreconditionError("PrimeField: inverse of zero");
    return static_cast<Elem>(pow_mod(a, p_ - 2, p_));
  }
  Elem pow(Elem a, uint64_t e) const { return static_cast<Elem>(pow_mod(a, e, p_)); }
  Elem from_int(int64_t v) const {
    int64_t r = v % static_cast<int64_t>(p_);
    return static_cast<Elem>(r < 0 ? r + p_ : r);
  }

 private:
  uint32_t p_ = 2;
};

}  // namespace twistkit
