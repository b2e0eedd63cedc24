#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "twistkit/algebra/prime_field.hpp"

namespace twistkit::poly {

// Dense univariate polynomials over an arbitrary field type F, stored as
// coefficient vectors with the constant term first. The zero polynomial is
// the empty vector.

template <class F>
using Poly = std::vector<typename F::Elem>;

template <class F>
void trim(const F& f, Poly<F>& a) {
  while (!a.empty() && f.is_zero(a.back())) a.pop_back();
}

template <class F>
int degree(const Poly<F>& a) {
  return static_cast<int>(a.size()) - 1;
}

template <class F>
Poly<F> monomial(const F& f, size_t deg) {
  Poly<F> r(deg + 1, f.zero());
  r[deg] = f.one();
  return r;
}

template <class F>
Poly<F> add(const F& f, const Poly<F>& a, const Poly<F>& b) {
  Poly<F> r(std::max(a.size(), b.size()), f.zero());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] = f.add(r[i], b[i]);
  trim(f, r);
  return r;
}

template <class F>
Poly<F> sub(const F& f, const Poly<F>& a, const Poly<F>& b) {
  Poly<F> r(std::max(a.size(), b.size()), f.zero());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] = f.sub(r[i], b[i]);
  trim(f, r);
  return r;
}

template <class F>
Poly<F> mul(const F& f, const Poly<F>& a, const Poly<F>& b) {
  if (a.empty() || b.empty()) return {};
  Poly<F> r(a.size() + b.size() - 1, f.zero());
  for (size_t i = 0; i < a.size(); ++i) {
    if (f.is_zero(a[i])) continue;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = f.add(r[i + j], f.mul(a[i], b[j]));
  }
  trim(f, r);
  return r;
}

template <class F>
Poly<F> scale(const F& f, const Poly<F>& a, typename F::Elem s) {
  Poly<F> r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = f.mul(a[i], s);
  trim(f, r);
  return r;
}

/// Quotient and remainder; b must be nonzero.
template <class F>
std::pair<Poly<F>, Poly<F>> divmod(const F& f, Poly<F> a, const Poly<F>& b) {
  if (b.empty()) throw PreconditionError("poly::divmod: division by zero polynomial");
  trim(f, a);
  if (a.size() < b.size()) return {{}, a};
  auto lead_inv = f.inv(b.back());
  Poly<F> q(a.size() - b.size() + 1, f.zero());
  for (size_t i = a.size(); i-- >= b.size();) {
    auto c = f.mul(a[i], lead_inv);
    q[i - (b.size() - 1)] = c;
    if (f.is_zero(c)) continue;
    for (size_t j = 0; j < b.size(); ++j) {
      size_t idx = i - (b.size() - 1) + j;
      a[idx] = f.sub(a[idx], f.mul(c, b[j]));
    }
  }
  a.resize(b.size() - 1);
  trim(f, a);
  trim(f, q);
  return {q, a};
}

template <class F>
Poly<F> mod(const F& f, const Poly<F>& a, const Poly<F>& b) {
  return divmod(f, a, b).second;
}

template <class F>
Poly<F> make_monic(const F& f, Poly<F> a) {
  trim(f, a);
  if (a.empty()) return a;
  return scale(f, a, f.inv(a.back()));
}

/// Monic gcd (zero if both inputs are zero).
template <class F>
Poly<F> gcd(const F& f, Poly<F> a, Poly<F> b) {
  trim(f, a);
  trim(f, b);
  while (!b.empty()) {
    auto r = mod(f, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return make_monic(f, a);
}

/// Returns (g, s) with g = gcd(a, m) monic and s*a = g mod m.
template <class F>
std::pair<Poly<F>, Poly<F>> gcd_inverse(const F& f, Poly<F> a, Poly<F> m) {
  Poly<F> s0{f.one()}, s1{};
  Poly<F> r0 = std::move(a), r1 = std::move(m);
  trim(f, r0);
  trim(f, r1);
  while (!r1.empty()) {
    auto [q, r] = divmod(f, r0, r1);
    auto s2 = sub(f, s0, mul(f, q, s1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (r0.empty()) return {{}, {}};
  auto li = f.inv(r0.back());
  return {scale(f, r0, li), scale(f, s0, li)};
}

template <class F>
Poly<F> derivative(const F& f, const Poly<F>& a) {
  if (a.size() <= 1) return {};
  Poly<F> r(a.size() - 1);
  for (size_t i = 1; i < a.size(); ++i) r[i - 1] = f.mul(f.from_int(static_cast<int64_t>(i)), a[i]);
  trim(f, r);
  return r;
}

template <class F>
typename F::Elem eval(const F& f, const Poly<F>& a, typename F::Elem x) {
  auto acc = f.zero();
  for (size_t i = a.size(); i-- > 0;) acc = f.add(f.mul(acc, x), a[i]);
  return acc;
}

template <class F>
Poly<F> mulmod(const F& f, const Poly<F>& a, const Poly<F>& b, const Poly<F>& m) {
  return mod(f, mul(f, a, b), m);
}

template <class F>
Poly<F> powmod(const F& f, Poly<F> base, uint64_t e, const Poly<F>& m) {
  Poly<F> result = mod(f, Poly<F>{f.one()}, m);
  base = mod(f, base, m);
  while (e) {
    if (e & 1) result = mulmod(f, result, base, m);
    base = mulmod(f, base, base, m);
    e >>= 1;
  }
  return result;
}

/// Squarefree test via gcd(f, f'). Over a finite (perfect) field a nonconstant
/// polynomial with f' = 0 is a p-th power, so it is reported as not squarefree;
/// this agrees with testing for distinct roots in a splitting field.
template <class F>
bool is_squarefree(const F& f, const Poly<F>& a) {
  if (degree<F>(a) <= 0) return true;
  auto d = derivative(f, a);
  if (d.empty()) return false;
  return degree<F>(gcd(f, a, d)) == 0;
}

/// Rabin irreducibility test over a prime field: a monic polynomial of degree d
/// is irreducible iff x^(p^d) = x mod a and gcd(x^(p^(d/s)) - x, a) = 1 for
/// every prime s dividing d.
inline bool is_irreducible(const PrimeField& f, const Poly<PrimeField>& a) {
  int d = degree<PrimeField>(a);
  if (d <= 0) return false;
  if (d == 1) return true;
  const Poly<PrimeField> x{0, 1};
  const uint64_t p = f.characteristic();
  // x^(p^j) mod a for j = 0..d by repeated p-th powers.
  std::vector<Poly<PrimeField>> frob_powers{mod(f, x, a)};
  for (int j = 1; j <= d; ++j) frob_powers.push_back(powmod(f, frob_powers.back(), p, a));
  if (sub(f, frob_powers[static_cast<size_t>(d)], mod(f, x, a)).size() != 0) return false;
  for (int s = 2; s <= d; ++s) {
    if (d % s != 0 || !is_prime(static_cast<uint64_t>(s))) continue;
    auto diff = sub(f, frob_powers[static_cast<size_t>(d / s)], x);
    if (degree<PrimeField>(gcd(f, diff, a)) != 0) return false;
  }
  return true;
}

}  // namespace twistkit::poly
