#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <numeric>
#include <string>
#include <vector>

#include "twistkit/algebra/prime_field.hpp"

namespace twistkit {

/// Integer polynomials, constant term first.
using IntPoly = std::vector<int64_t>;

namespace detail {

inline void int_trim(IntPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

/// a mod m for monic m.
inline IntPoly int_mod_monic(IntPoly a, const IntPoly& m) {
  const size_t dm = m.size() - 1;
  for (size_t i = a.size(); i-- > dm;) {
    const int64_t c = a[i];
    if (c == 0) continue;
    for (size_t j = 0; j <= dm; ++j) a[i - dm + j] -= c * m[j];
  }
  a.resize(std::min(a.size(), dm));
  a.resize(dm, 0);
  return a;
}

/// Exact quotient a / m for monic m dividing a.
inline IntPoly int_div_monic(IntPoly a, const IntPoly& m) {
  const size_t dm = m.size() - 1;
  if (a.size() < m.size()) return {};
  IntPoly q(a.size() - dm, 0);
  for (size_t i = a.size(); i-- > dm;) {
    const int64_t c = a[i];
    q[i - dm] = c;
    if (c == 0) continue;
    for (size_t j = 0; j <= dm; ++j) a[i - dm + j] -= c * m[j];
  }
  int_trim(a);
  if (!a.empty()) throw InvariantError("int_div_monic: division is not exact");
  return q;
}

}  // namespace detail

/// The e-th cyclotomic polynomial Phi_e (cached).
inline const IntPoly& cyclotomic_poly(uint64_t e) {
  static std::mutex mu;
  static std::map<uint64_t, IntPoly> cache;
  {
    std::lock_guard lock(mu);
    auto it = cache.find(e);
    if (it != cache.end()) return it->second;
  }
  if (e == 0) throw PreconditionError("cyclotomic_poly: e must be positive");
  IntPoly a(e + 1, 0);
  a[0] = -1;
  a[e] = 1;
  for (uint64_t d = 1; d < e; ++d)
    if (e % d == 0) a = detail::int_div_monic(a, cyclotomic_poly(d));
  std::lock_guard lock(mu);
  return cache.emplace(e, std::move(a)).first->second;
}

inline uint64_t euler_phi(uint64_t e) { return cyclotomic_poly(e).size() - 1; }

/// Exact element of Z[zeta_e], stored as the coefficients of its reduction
/// modulo Phi_e (length phi(e)). Two values are equal iff the vectors are.
struct Cyclotomic {
  uint64_t e = 1;
  IntPoly coeffs;

  /// sum_i counts[i] zeta_e^i
  static Cyclotomic from_counts(uint64_t e, const std::vector<int64_t>& counts) {
    return {e, detail::int_mod_monic(IntPoly(counts.begin(), counts.end()), cyclotomic_poly(e))};
  }
  static Cyclotomic integer(uint64_t e, int64_t v) {
    std::vector<int64_t> c(e, 0);
    c[0] = v;
    return from_counts(e, c);
  }

  bool operator==(const Cyclotomic& o) const { return e == o.e && coeffs == o.coeffs; }
  bool operator<(const Cyclotomic& o) const { return coeffs < o.coeffs; }

  bool is_integer() const {
    for (size_t i = 1; i < coeffs.size(); ++i)
      if (coeffs[i] != 0) return false;
    return true;
  }
  int64_t integer_value() const { return coeffs.empty() ? 0 : coeffs[0]; }

  /// Image under zeta_e -> theta in F_ell.
  uint64_t mod_image(uint64_t ell, uint64_t theta) const {
    uint64_t acc = 0, pw = 1;
    for (auto c : coeffs) {
      int64_t cm = c % static_cast<int64_t>(ell);
      if (cm < 0) cm += static_cast<int64_t>(ell);
      acc = (acc + mul_mod(static_cast<uint64_t>(cm), pw, ell)) % ell;
      pw = mul_mod(pw, theta, ell);
    }
    return acc;
  }

  std::string to_string() const {
    std::string s;
    for (size_t i = 0; i < coeffs.size(); ++i) {
      if (coeffs[i] == 0) continue;
      if (!s.empty()) s += coeffs[i] > 0 ? "+" : "";
      s += std::to_string(coeffs[i]);
      if (i > 0) s += "z" + (i > 1 ? "^" + std::to_string(i) : std::string{});
    }
    return s.empty() ? "0" : s;
  }
};

/// Modular setting for character values: prime ell = 1 mod e with
/// ell > 2 ceil(sqrt |G|), and theta of multiplicative order e in F_ell.
struct DixonPrime {
  uint64_t e = 1;
  uint64_t ell = 2;
  uint64_t theta = 1;
  uint64_t primitive_root = 1;

  static DixonPrime select(uint64_t exponent, uint64_t group_order) {
    uint64_t root = 0;
    while (root * root < group_order) ++root;
    const uint64_t bound = 2 * root;
    DixonPrime d;
    d.e = exponent;
    uint64_t ell = exponent + 1;
    while (ell <= bound || !is_prime(ell)) {
      ell += exponent;
      if (ell > (uint64_t{1} << 31)) throw GuardError("DixonPrime: no prime found below 2^31");
    }
    d.ell = ell;
    // smallest primitive root: g^((ell-1)/s) != 1 for every prime s | ell-1
    std::vector<uint64_t> primes;
    uint64_t t = ell - 1;
    for (uint64_t s = 2; s * s <= t; ++s)
      if (t % s == 0) {
        primes.push_back(s);
        while (t % s == 0) t /= s;
      }
    if (t > 1) primes.push_back(t);
    for (uint64_t g = 2;; ++g) {
      bool ok = true;
      for (auto s : primes) ok = ok && pow_mod(g, (ell - 1) / s, ell) != 1;
      if (ok) {
        d.primitive_root = g;
        break;
      }
    }
    d.theta = pow_mod(d.primitive_root, (ell - 1) / exponent, ell);
    return d;
  }

  /// Image of zeta_e^i.
  uint64_t root(int64_t i) const {
    int64_t r = i % static_cast<int64_t>(e);
    if (r < 0) r += static_cast<int64_t>(e);
    return pow_mod(theta, static_cast<uint64_t>(r), ell);
  }
  uint64_t inv(uint64_t a) const { return pow_mod(a % ell, ell - 2, ell); }
  uint64_t reduce(int64_t v) const {
    int64_t r = v % static_cast<int64_t>(ell);
    return static_cast<uint64_t>(r < 0 ? r + static_cast<int64_t>(ell) : r);
  }
};

}  // namespace twistkit
