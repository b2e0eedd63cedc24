#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <vector>

#include "twistkit/core/parallel.hpp"
#include "twistkit/flags/flag.hpp"
#include "twistkit/flags/springer.hpp"

namespace twistkit {

namespace detail {

inline constexpr uint64_t kFlagGuard = 10'000'000;

/// (Q^n - 1)/(Q - 1), saturating at kFlagGuard + 1.
inline uint64_t projective_count(uint64_t Q, size_t n) {
  uint64_t acc = 0, pw = 1;
  for (size_t i = 0; i < n; ++i) {
    acc += pw;
    if (acc > kFlagGuard) return kFlagGuard + 1;
    pw *= Q;
    if (pw > kFlagGuard) pw = kFlagGuard + 1;
  }
  return acc;
}

/// [N]_Q! = prod_{i <= N} (Q^i - 1)/(Q - 1), saturating.
inline uint64_t q_factorial(uint64_t Q, size_t n) {
  uint64_t acc = 1;
  for (size_t i = 1; i <= n; ++i) {
    acc *= projective_count(Q, i);
    if (acc > kFlagGuard) return kFlagGuard + 1;
  }
  return acc;
}

/// Normalised representatives of the lines of F^N modulo the span of e:
/// zero at e's pivots, first free entry 1. Entries on later free
/// coordinates range over `values`.
inline std::vector<FVec> complement_lines(const Echelon& e, const std::vector<uint16_t>& values) {
  const size_t n = e.dim();
  std::vector<bool> pivot(n, false);
  for (auto p : e.pivots()) pivot[p] = true;
  std::vector<size_t> free;
  for (size_t i = 0; i < n; ++i)
    if (!pivot[i]) free.push_back(i);
  std::vector<FVec> out;
  for (size_t lead = 0; lead < free.size(); ++lead) {
    const size_t rest = free.size() - lead - 1;
    std::vector<size_t> digit(rest, 0);
    while (true) {
      FVec v(n, 0);
      v[free[lead]] = 1;
      for (size_t t = 0; t < rest; ++t) v[free[lead + 1 + t]] = values[digit[t]];
      out.push_back(std::move(v));
      size_t t = rest;
      while (t > 0 && ++digit[t - 1] == values.size()) digit[--t] = 0;
      if (t == 0) break;
    }
  }
  return out;
}

inline FVec frob_vec(const SmallField& f, FVec v) {
  for (auto& x : v) x = f.frob(x);
  return v;
}

/// dim(span(a[0..i)) cap span(b[0..j))).
inline size_t meet_dim(const SmallField& f, const std::vector<FVec>& a, size_t i, const std::vector<FVec>& b, size_t j) {
  Echelon e(f, a.front().size());
  for (size_t t = 0; t < i; ++t) e.insert(a[t]);
  for (size_t t = 0; t < j; ++t) e.insert(b[t]);
  return i + j - e.rank();
}

/// Expected dim(V_i cap V'_j) when relpos = w: #{k <= i : w(k) <= j}.
inline size_t expected_meet(const Perm& w, size_t i, size_t j) {
  size_t c = 0;
  for (size_t k = 0; k < i; ++k) c += (w[k] + 1 <= j);
  return c;
}

}  // namespace detail

struct BruteOptions {
  bool require_springer = true;
  unsigned threads = 1;
};

/// All flags over F_{q^m} in B_{u,w}: u-stable with relpos(f, F f) = w.
/// The search prunes on u-stability and on every entry of the d-table
/// that is determined by the pieces already chosen.
inline std::vector<Flag> enumerate_buw_brute(const FlagContext& c, const Perm& w, const BruteOptions& opt = {}) {
  const size_t n = c.dim();
  if (w.size() != n) throw PreconditionError("enumerate_buw_brute: permutation size differs from nr");
  const uint64_t total = detail::q_factorial(c.field_size(), n);
  if (total > detail::kFlagGuard)
    throw GuardError("enumerate_buw_brute: [N]_{q^m}! exceeds 1e7 for N = " + std::to_string(n) +
                     ", q^m = " + std::to_string(c.field_size()));
  const SmallField& f = *c.field;
  std::vector<uint16_t> all(f.size());
  for (size_t i = 0; i < all.size(); ++i) all[i] = static_cast<uint16_t>(i);

  auto consistent = [&](const std::vector<FVec>& rows, const std::vector<FVec>& frows) {
    const size_t i = rows.size();
    for (size_t j = 1; j <= i; ++j) {
      if (detail::meet_dim(f, rows, i, frows, j) != detail::expected_meet(w, i, j)) return false;
      if (j < i && detail::meet_dim(f, rows, j, frows, i) != detail::expected_meet(w, j, i)) return false;
    }
    return true;
  };

  struct Search {
    const FlagContext& c;
    const SmallField& f;
    const std::vector<uint16_t>& all;
    const BruteOptions& opt;
    decltype(consistent)& ok;
    std::vector<Flag>& out;
    void run(Echelon& e, std::vector<FVec>& rows, std::vector<FVec>& frows) {
      if (rows.size() == e.dim()) {
        out.emplace_back(f, rows);
        return;
      }
      for (auto& v : detail::complement_lines(e, all)) step(e, rows, frows, v);
    }
    void step(Echelon& e, std::vector<FVec>& rows, std::vector<FVec>& frows, const FVec& v) {
      e.insert(v);
      if (!opt.require_springer || e.contains(Flag::mat_vec(c.u, v))) {
        rows.push_back(v);
        frows.push_back(detail::frob_vec(f, v));
        if (ok(rows, frows)) run(e, rows, frows);
        rows.pop_back();
        frows.pop_back();
      }
      e.pop();
    }
  };

  Echelon root(f, n);
  auto firsts = detail::complement_lines(root, all);
  std::vector<std::vector<Flag>> parts(firsts.size());
  parallel_for(firsts.size(), opt.threads, [&](size_t i) {
    Echelon e(f, n);
    std::vector<FVec> rows, frows;
    Search s{c, f, all, opt, consistent, parts[i]};
    s.step(e, rows, frows, firsts[i]);
  });
  std::vector<Flag> out;
  for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  std::sort(out.begin(), out.end());
  return out;
}

/// Histogram of relpos(f, F f) over every complete flag of F_{q^m}^N.
inline std::map<Perm, uint64_t> relpos_histogram(const FlagContext& c, unsigned threads = 1) {
  const size_t n = c.dim();
  if (detail::q_factorial(c.field_size(), n) > detail::kFlagGuard)
    throw GuardError("relpos_histogram: [N]_{q^m}! exceeds 1e7");
  const SmallField& f = *c.field;
  std::vector<uint16_t> all(f.size());
  for (size_t i = 0; i < all.size(); ++i) all[i] = static_cast<uint16_t>(i);
  Echelon root(f, n);
  auto firsts = detail::complement_lines(root, all);
  std::vector<std::map<Perm, uint64_t>> parts(firsts.size());
  parallel_for(firsts.size(), threads, [&](size_t i) {
    Echelon e(f, n);
    std::vector<FVec> rows;
    auto rec = [&](auto& self) -> void {
      if (rows.size() == n) {
        Flag fl(f, rows);
        ++parts[i][relpos(fl, fl.frobenius())];
        return;
      }
      for (auto& v : detail::complement_lines(e, all)) {
        e.insert(v);
        rows.push_back(v);
        self(self);
        rows.pop_back();
        e.pop();
      }
    };
    e.insert(firsts[i]);
    rows.push_back(firsts[i]);
    rec(rec);
  });
  std::map<Perm, uint64_t> out;
  for (auto& p : parts)
    for (auto& [w, k] : p) out[w] += k;
  return out;
}

/// B_{u,w} for w = cycle_perm(N, z), built as V_1 = <v> with v in ker(u - 1),
/// V_i = V_{i-1} + F^{i-1} V_1 growing strictly up to an F-stable V_z,
/// followed by every rational u-stable completion.
inline std::vector<Flag> enumerate_buw_cycle(const FlagContext& c, size_t z, unsigned threads = 1) {
  const size_t n = c.dim();
  if (z < 1 || z > n) throw PreconditionError("enumerate_buw_cycle: z must lie in [1, nr]");
  if (detail::projective_count(c.field_size(), n) > detail::kFlagGuard)
    throw GuardError("enumerate_buw_cycle: line count (q^{mN}-1)/(q^m-1) exceeds 1e7");
  const SmallField& f = *c.field;
  const Perm w = cycle_perm(n, z);
  std::vector<uint16_t> all(f.size()), rational;
  for (size_t i = 0; i < all.size(); ++i) all[i] = static_cast<uint16_t>(i);
  for (uint32_t t = 0; t < c.q(); ++t) rational.push_back(c.base(t));

  // lines of ker(u - 1) = span x^{(r-1)}
  std::vector<FVec> lines;
  {
    Echelon sub(f, c.n);
    for (auto& v : detail::complement_lines(sub, all)) {
      FVec x(n, 0);
      for (size_t j = 1; j <= c.n; ++j) x[c.coord(j, c.r - 1)] = v[j - 1];
      lines.push_back(std::move(x));
    }
  }

  std::vector<std::vector<Flag>> parts(lines.size());
  parallel_for(lines.size(), threads, [&](size_t li) {
    Echelon e(f, n);
    std::vector<FVec> rows;
    FVec cur = lines[li];
    for (size_t i = 1; i <= z; ++i) {
      if (!e.insert(cur)) return;  // growth stopped before z
      if (!e.contains(Flag::mat_vec(c.u, cur))) return;
      rows.push_back(cur);
      cur = detail::frob_vec(f, cur);
    }
    if (!e.contains(cur)) return;  // V_z not F-stable
    // V_z is F-stable, so its reduced row echelon basis is rational
    Matrix<SmallField> m(f, z, n);
    for (size_t i = 0; i < z; ++i)
      for (size_t t = 0; t < n; ++t) m(i, t) = rows[i][t];
    rref(m);
    Echelon rat(f, n);
    for (size_t i = 0; i < z; ++i) {
      FVec v(n);
      for (size_t t = 0; t < n; ++t) {
        v[t] = m(i, t);
        if (!c.is_rational(v[t])) throw InvariantError("enumerate_buw_cycle: F-stable V_z has a non-rational echelon basis");
      }
      rat.insert(v);
    }
    auto rec = [&](auto& self) -> void {
      if (rows.size() == n) {
        Flag fl(f, rows);
        if (!springer_membership(fl, c.u) || !dl_membership(fl, w))
          throw InvariantError("enumerate_buw_cycle: constructed flag fails membership");
        parts[li].push_back(std::move(fl));
        return;
      }
      for (auto& v : detail::complement_lines(rat, rational)) {
        rat.insert(v);
        if (rat.contains(Flag::mat_vec(c.u, v))) {
          rows.push_back(v);
          self(self);
          rows.pop_back();
        }
        rat.pop();
      }
    };
    rec(rec);
  });
  std::vector<Flag> out;
  for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  std::sort(out.begin(), out.end());
  return out;
}

/// Points of P^{z-1}(F_{q^m}) on no F_q-rational hyperplane.
inline uint64_t coxeter_count(size_t z, uint32_t p, uint32_t k, uint32_t m) {
  if (z < 2) throw PreconditionError("coxeter_count: z must be at least 2");
  SmallField f(field_make(p, k, m));
  if (detail::projective_count(f.size(), z) > detail::kFlagGuard)
    throw GuardError("coxeter_count: (q^{mz}-1)/(q^m-1) exceeds 1e7");
  std::vector<uint16_t> all(f.size()), rational;
  for (size_t i = 0; i < all.size(); ++i) all[i] = static_cast<uint16_t>(i);
  const uint64_t q = ipow(p, k);
  for (uint32_t t = 0; t < q; ++t) rational.push_back(f.embed_base(t));
  Echelon none(f, z);
  auto points = detail::complement_lines(none, all);
  auto normals = detail::complement_lines(none, rational);
  uint64_t count = 0;
  for (const auto& v : points) {
    bool avoids = true;
    for (const auto& a : normals) {
      uint16_t s = 0;
      for (size_t i = 0; i < z; ++i) s = f.add(s, f.mul(a[i], v[i]));
      if (s == 0) {
        avoids = false;
        break;
      }
    }
    count += avoids;
  }
  return count;
}

}  // namespace twistkit
