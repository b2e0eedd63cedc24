#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <string>
#include <tuple>
#include <vector>

#include "twistkit/algebra/polynomial.hpp"
#include "twistkit/algebra/prime_field.hpp"

namespace twistkit {

/// Description of F_{q^m} with q = p^k, always represented directly over F_p
/// as F_p[x]/(modulus) with deg(modulus) = k*m.
struct FieldDesc {
  uint32_t p = 2;
  uint32_t k = 1;
  uint32_t m = 1;
  std::vector<uint32_t> modulus;  // monic, constant term first

  uint32_t degree() const { return k * m; }
  uint64_t q() const { return ipow(p, k); }
  /// Number of elements, saturating at UINT64_MAX.
  uint64_t size() const {
    uint64_t r = 1;
    for (uint32_t i = 0; i < degree(); ++i) {
      if (r > UINT64_MAX / p) return UINT64_MAX;
      r *= p;
    }
    return r;
  }
  bool operator==(const FieldDesc&) const = default;
};

namespace detail {

// Lexicographically smallest monic irreducible of degree d, comparing the
// coefficient lists (c_0, c_1, ..., c_{d-1}) with c_0 most significant.
inline std::vector<uint32_t> smallest_irreducible(uint32_t p, uint32_t d) {
  PrimeField f(p);
  std::vector<uint32_t> c(d, 0);
  if (d >= 2) c[0] = 1;  // c_0 = 0 means x divides the polynomial
  while (true) {
    poly::Poly<PrimeField> cand(c.begin(), c.end());
    cand.push_back(1);
    if (poly::is_irreducible(f, cand)) return cand;
    // odometer with the last coefficient least significant
    size_t i = d;
    while (i > 0) {
      --i;
      if (++c[i] < p) break;
      c[i] = 0;
      if (i == 0) throw InvariantError("smallest_irreducible: exhausted candidates");
    }
  }
}

}  // namespace detail

/// Builds the descriptor of F_{(p^k)^m}; moduli are cached so rebuilding is cheap
/// and bit-identical.
inline FieldDesc field_make(uint32_t p, uint32_t k, uint32_t m) {
  if (!is_prime(p)) throw PreconditionError("field_make: p = " + std::to_string(p) + " is not prime");
  if (k == 0 || m == 0) throw PreconditionError("field_make: degree must be positive");
  if (p > 251) throw PreconditionError("field_make: p must be < 256");
  uint32_t d = k * m;
  if (d > 64) throw GuardError("field_make: total degree k*m exceeds 64");
  static std::mutex mu;
  static std::map<std::pair<uint32_t, uint32_t>, std::vector<uint32_t>> cache;
  std::vector<uint32_t> modulus;
  {
    std::lock_guard lock(mu);
    auto key = std::make_pair(p, d);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, detail::smallest_irreducible(p, d)).first;
    modulus = it->second;
  }
  return FieldDesc{p, k, m, std::move(modulus)};
}

}  // namespace twistkit
