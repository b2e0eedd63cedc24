#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "twistkit/algebra/embedding.hpp"
#include "twistkit/algebra/poly_field.hpp"
#include "twistkit/groups/class_table.hpp"

namespace twistkit {

/// F_q-basis of the transporter {x in M_n(F_q[pi]/pi^r) : x g = g' x}. Its
/// F_{q^m}-span is the transporter over F_{q^m}[pi]/pi^r.
inline std::vector<GroupTable::Mat> transporter_basis(const GroupTable::Mat& g, const GroupTable::Mat& gp) {
  const SmallField& f = g.field();
  const size_t n = g.n(), r = g.r(), dim = n * n * r;
  Matrix<SmallField> sys(f, dim, dim);
  auto idx = [&](size_t l, size_t i, size_t j) { return (l * n + i) * n + j; };
  for (size_t a = 0; a < r; ++a)
    for (size_t i = 0; i < n; ++i)
      for (size_t k = 0; k < n; ++k) {
        const size_t col = idx(a, i, k);
        for (size_t b = 0; a + b < r; ++b)
          for (size_t j = 0; j < n; ++j) {
            // x_a(i,k) g_b(k,j) in (x g)_{a+b}(i,j)
            auto& c1 = sys(idx(a + b, i, j), col);
            c1 = f.add(c1, g.at(b, k, j));
            // g'_b(j,i) x_a(i,k) in (g' x)_{a+b}(j,k)
            auto& c2 = sys(idx(a + b, j, k), col);
            c2 = f.sub(c2, gp.at(b, j, i));
          }
      }
  std::vector<GroupTable::Mat> out;
  for (auto& v : kernel_basis(sys)) {
    GroupTable::Mat x(f, n, r);
    for (size_t t = 0; t < dim; ++t) x.raw()[t] = v[t];
    out.push_back(std::move(x));
  }
  return out;
}

/// Result of a geometric-conjugacy partition, valid up to extension degree m_max.
struct GeometricPartition {
  uint32_t m_max = 0;
  std::vector<uint32_t> block_of;             // class -> block index
  std::vector<std::vector<uint32_t>> blocks;  // sorted, ordered by least class
  struct Merge {
    uint32_t a, b, m;
  };
  std::vector<Merge> merges;       // evidence: a and b conjugate over F_{q^m}
  size_t pairs_tested = 0;
  size_t pairs_certified_apart = 0;  // transporter has no invertible element over any extension
  size_t pairs_unresolved = 0;       // not merged at any m <= m_max and not certified apart
};

namespace detail {

class GeometricSearch {
 public:
  static constexpr uint64_t kExhaustive = 200'000;
  static constexpr int kTrials = 4096;
  static constexpr uint64_t kZeroTestLimit = 1'000'000;
  static constexpr uint64_t kRootEnumLimit = uint64_t{1} << 22;

  GeometricSearch(const ClassTable& ct, uint64_t seed) : ct_(ct), seed_(seed) {}

  const PolyField& ext(uint32_t m) {
    auto it = fields_.find(m);
    if (it == fields_.end()) {
      const auto& s = ct_.group().spec();
      it = fields_.emplace(m, std::make_unique<PolyField>(field_make(s.p, s.k, m))).first;
    }
    return *it->second;
  }

  /// True iff det of the residue of every combination of the basis vanishes
  /// identically (certified by evaluation on a grid S^t with |S| > n).
  std::optional<bool> residue_det_identically_zero(const std::vector<GroupTable::Mat>& basis) {
    const size_t n = ct_.group().n(), t = basis.size();
    if (t == 0) return true;
    const uint64_t q = ct_.group().spec().q();
    uint32_t m = 1;
    for (uint64_t sz = q; sz < n + 1; sz *= q) ++m;
    const PolyField& f = ext(m);
    double grid = std::pow(double(n + 1), double(t));
    if (grid > double(kZeroTestLimit)) return std::nullopt;
    std::vector<PolyField::Elem> s;
    for (uint64_t v = 0; s.size() < n + 1; ++v) s.push_back(elem_from_index(f, v));
    std::vector<size_t> digit(t, 0);
    while (true) {
      Matrix<PolyField> res(f, n, n);
      for (size_t b = 0; b < t; ++b)
        for (size_t i = 0; i < n; ++i)
          for (size_t j = 0; j < n; ++j)
            res(i, j) = f.add(res(i, j), f.mul(s[digit[b]], f.embed_base(basis[b].at(0, i, j))));
      if (!f.is_zero(determinant(res))) return false;
      size_t b = 0;
      while (b < t && ++digit[b] == n + 1) digit[b++] = 0;
      if (b == t) break;
    }
    return true;
  }

  /// Searches the F_{q^m}-span of the basis for an invertible transporter
  /// (with determinant 1 after scalar adjustment for SL).
  bool conjugate_at(const std::vector<GroupTable::Mat>& basis, uint32_t m, uint64_t pair_seed) {
    const PolyField& f = ext(m);
    const size_t n = ct_.group().n(), r = ct_.group().r(), t = basis.size();
    if (t == 0) return false;
    std::vector<TruncMat<PolyField>> eb;
    for (const auto& b : basis) {
      TruncMat<PolyField> x(f, n, r);
      for (size_t i = 0; i < x.raw().size(); ++i) x.raw()[i] = f.embed_base(b.raw()[i]);
      eb.push_back(std::move(x));
    }
    const double fsize = std::pow(double(f.characteristic()), double(f.degree()));
    const double space = std::pow(fsize, double(t));
    std::vector<PolyField::Elem> c(t, f.zero());
    auto try_combo = [&]() {
      TruncMat<PolyField> x(f, n, r);
      for (size_t b = 0; b < t; ++b) {
        if (f.is_zero(c[b])) continue;
        for (size_t i = 0; i < x.raw().size(); ++i) x.raw()[i] = f.add(x.raw()[i], f.mul(c[b], eb[b].raw()[i]));
      }
      if (!x.is_invertible()) return false;
      if (ct_.group().spec().family == Family::GL) return true;
      return has_nth_root(f, x.det().inverse(), n);
    };
    if (space <= double(kExhaustive)) {
      const uint64_t fs = static_cast<uint64_t>(fsize);
      std::vector<uint64_t> digit(t, 0);
      while (true) {
        size_t b = 0;
        while (b < t && ++digit[b] == fs) digit[b++] = 0;
        if (b == t) return false;
        for (size_t i = 0; i < t; ++i) c[i] = elem_from_index(f, digit[i]);
        if (try_combo()) return true;
      }
    }
    std::mt19937_64 rng(pair_seed ^ (uint64_t{m} * 0x9E3779B97F4A7C15ULL));
    for (int trial = 0; trial < kTrials; ++trial) {
      for (auto& x : c) {
        std::vector<uint32_t> coeffs(f.degree());
        for (auto& v : coeffs) v = static_cast<uint32_t>(rng() % f.characteristic());
        x = f.from_coeffs(coeffs);
      }
      if (try_combo()) return true;
    }
    return false;
  }

 private:
  static PolyField::Elem elem_from_index(const PolyField& f, uint64_t v) {
    std::vector<uint32_t> coeffs(f.degree(), 0);
    for (uint32_t i = 0; i < f.degree() && v; ++i) {
      coeffs[i] = static_cast<uint32_t>(v % f.characteristic());
      v /= f.characteristic();
    }
    return f.from_coeffs(coeffs);
  }

  // An n-th root of c in F_{q^m}[pi]/pi^r: enumerate the residue root, then
  // lift by Newton iteration (needs p not dividing n).
  bool has_nth_root(const PolyField& f, const TruncElem<PolyField>& c, size_t n) {
    if (n == 1) return true;
    if (n % f.characteristic() == 0) return false;
    const double fsize = std::pow(double(f.characteristic()), double(f.degree()));
    if (fsize > double(kRootEnumLimit)) return false;
    const uint64_t total = static_cast<uint64_t>(fsize);
    for (uint64_t v = 1; v < total; ++v) {
      auto x0 = elem_from_index(f, v);
      if (!(f.pow(x0, n) == c[0])) continue;
      auto lam = TruncElem<PolyField>::constant(f, c.r(), x0);
      auto nn = f.from_int(static_cast<int64_t>(n));
      for (size_t it = 0; it < c.r(); ++it) {
        auto deriv = lam.pow(n - 1).scaled(nn);
        lam = lam - (lam.pow(n) - c) * deriv.inverse();
      }
      if (!(lam.pow(n) == c)) throw InvariantError("geometric_partition: Newton lift failed");
      return true;
    }
    return false;
  }

  const ClassTable& ct_;
  uint64_t seed_;
  std::map<uint32_t, std::unique_ptr<PolyField>> fields_;
};

}  // namespace detail

/// Characteristic polynomial of iota(g) over F_q, as field indices (constant term first).
inline std::vector<uint16_t> embedded_charpoly(const GroupTable& g, size_t element) {
  auto cp = charpoly(iota(g.element(element)));
  return {cp.begin(), cp.end()};
}

/// Partition of rational classes into classes that become conjugate over
/// F_{q^m}[pi]/pi^r for some m <= m_max.
inline GeometricPartition geometric_partition(const ClassTable& ct, uint32_t m_max, uint64_t seed = 0) {
  if (m_max < 1) throw PreconditionError("geometric_partition: m_max must be at least 1");
  const GroupTable& g = ct.group();
  const size_t nc = ct.num_classes();
  GeometricPartition out;
  out.m_max = m_max;
  std::vector<uint32_t> parent(nc);
  std::iota(parent.begin(), parent.end(), 0u);
  auto find = [&](uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  // invariants of geometric conjugacy: embedded charpoly, level, element order
  std::map<std::tuple<std::vector<uint16_t>, size_t, uint64_t>, std::vector<uint32_t>> buckets;
  for (uint32_t c = 0; c < nc; ++c)
    buckets[{embedded_charpoly(g, ct.rep(c)), ct.level(c), ct.element_order(c)}].push_back(c);

  detail::GeometricSearch search(ct, seed);
  for (const auto& [key, members] : buckets) {
    for (size_t i = 0; i < members.size(); ++i)
      for (size_t j = i + 1; j < members.size(); ++j) {
        const uint32_t a = members[i], b = members[j];
        if (find(a) == find(b)) continue;
        ++out.pairs_tested;
        auto basis = transporter_basis(g.element(ct.rep(a)), g.element(ct.rep(b)));
        auto zero = search.residue_det_identically_zero(basis);
        if (zero && *zero) {
          ++out.pairs_certified_apart;
          continue;
        }
        bool merged = false;
        const uint64_t pair_seed = seed ^ (uint64_t{a} << 32 | b);
        for (uint32_t m = 1; m <= m_max && !merged; ++m)
          if (search.conjugate_at(basis, m, pair_seed)) {
            parent[find(b)] = find(a);
            out.merges.push_back({a, b, m});
            merged = true;
          }
        if (!merged) ++out.pairs_unresolved;
      }
  }
  std::map<uint32_t, uint32_t> root_to_block;
  out.block_of.resize(nc);
  for (uint32_t c = 0; c < nc; ++c) {
    auto [it, fresh] = root_to_block.emplace(find(c), static_cast<uint32_t>(out.blocks.size()));
    if (fresh) out.blocks.emplace_back();
    out.block_of[c] = it->second;
    out.blocks[it->second].push_back(c);
  }
  return out;
}

}  // namespace twistkit
