#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "twistkit/characters/dixon.hpp"

namespace twistkit {

enum class OrbitType { Zero, RegularNilpotent, RegularSemisimple, Other };

inline std::string orbit_type_name(OrbitType t) {
  switch (t) {
    case OrbitType::Zero: return "zero";
    case OrbitType::RegularNilpotent: return "regular-nilpotent";
    case OrbitType::RegularSemisimple: return "regular-semisimple";
    case OrbitType::Other: return "other";
  }
  return "other";
}

/// Classification of X in gl_n(F_q) by its minimal polynomial.
inline OrbitType classify_lie_element(const Matrix<SmallField>& x) {
  if (x.is_zero()) return OrbitType::Zero;
  const SmallField& f = x.field();
  auto mp = min_poly(x);
  const bool regular = poly::degree<SmallField>(mp) == static_cast<int>(x.rows());
  bool nilpotent = true;
  for (size_t i = 0; i + 1 < mp.size(); ++i) nilpotent = nilpotent && f.is_zero(mp[i]);
  if (regular && nilpotent) return OrbitType::RegularNilpotent;
  if (regular && poly::is_squarefree(f, mp)) return OrbitType::RegularSemisimple;
  return OrbitType::Other;
}

/// The Lie algebra g^F (sl_n for SL, gl_n for GL), its trace pairing and the
/// adjoint orbits of the residue group G_1^F.
class LieAlgebra {
 public:
  explicit LieAlgebra(const GroupTable& g) : g_(&g) {
    const auto& spec = g.spec();
    const SmallField& f = g.field();
    const size_t n = g.n(), nn = n * n;
    if (spec.family == Family::SL && n % spec.p == 0)
      throw PreconditionError("orbit_map: trace form is degenerate on sl_n when p divides n");
    const uint64_t q = spec.q();
    const uint64_t total = ipow(q, static_cast<uint32_t>(nn));
    for (uint64_t v = 0; v < total; ++v) {
      Matrix<SmallField> x(f, n, n);
      uint64_t t = v;
      for (size_t e = nn; e-- > 0;) {
        x(e / n, e % n) = static_cast<uint16_t>(t % q);
        t /= q;
      }
      if (spec.family == Family::SL) {
        uint16_t tr = 0;
        for (size_t i = 0; i < n; ++i) tr = f.add(tr, x(i, i));
        if (tr != 0) continue;
      }
      index_.emplace(x.data(), elems_.size());
      elems_.push_back(std::move(x));
    }
    build_orbits();
  }

  const GroupTable& group() const { return *g_; }
  size_t size() const { return elems_.size(); }
  const Matrix<SmallField>& element(size_t i) const { return elems_[i]; }
  size_t index_of(const Matrix<SmallField>& x) const { return index_.at(x.data()); }
  size_t zero_index() const { return index_of(Matrix<SmallField>(g_->field(), g_->n(), g_->n())); }

  /// Tr_{F_q/F_p}(tr(XY)) in F_p.
  uint32_t pairing(size_t x, size_t y) const {
    const SmallField& f = g_->field();
    const auto &a = elems_[x], &b = elems_[y];
    uint16_t tr = 0;
    for (size_t i = 0; i < a.rows(); ++i)
      for (size_t k = 0; k < a.rows(); ++k) tr = f.add(tr, f.mul(a(i, k), b(k, i)));
    return f.trace_to_prime(tr);
  }

  /// Group element I + pi^{r-1} Y of the deepest congruence layer.
  size_t kernel_element(size_t y) const {
    auto m = GroupTable::Mat::identity(g_->field(), g_->n(), g_->r());
    m.set_level_block(g_->r() - 1, elems_[y]);
    return g_->require_index(m);
  }

  size_t num_orbits() const { return orbits_.size(); }
  const std::vector<size_t>& orbit(size_t o) const { return orbits_[o]; }
  size_t orbit_of(size_t x) const { return orbit_of_[x]; }
  OrbitType orbit_type(size_t o) const { return types_[o]; }
  /// "o1"/"o2" for the two regular nilpotent orbits of sl_2 (o1 contains E_12),
  /// "o" for a regular nilpotent orbit otherwise, empty for other types.
  const std::string& orbit_label(size_t o) const { return labels_[o]; }

 private:
  void build_orbits() {
    const SmallField& f = g_->field();
    const size_t n = g_->n();
    std::vector<std::pair<Matrix<SmallField>, Matrix<SmallField>>> conj;
    for (auto s : g_->residue_subgroup()) {
      auto m = g_->element(s).residue();
      conj.emplace_back(m, inverse(m));
    }
    orbit_of_.assign(elems_.size(), SIZE_MAX);
    for (size_t x = 0; x < elems_.size(); ++x) {
      if (orbit_of_[x] != SIZE_MAX) continue;
      const size_t o = orbits_.size();
      orbits_.emplace_back();
      for (const auto& [s, si] : conj) {
        size_t y = index_of(s * elems_[x] * si);
        if (orbit_of_[y] == SIZE_MAX) {
          orbit_of_[y] = o;
          orbits_[o].push_back(y);
        }
      }
      std::sort(orbits_[o].begin(), orbits_[o].end());
      types_.push_back(classify_lie_element(elems_[x]));
    }
    Matrix<SmallField> e12(f, n, n);
    if (n >= 2) e12(0, n - 1) = f.one();
    const bool sl2 = g_->spec().family == Family::SL && n == 2;
    for (size_t o = 0; o < orbits_.size(); ++o) {
      std::string label;
      if (types_[o] == OrbitType::RegularNilpotent) {
        if (sl2) {
          auto it = index_.find(e12.data());
          label = (it != index_.end() && orbit_of_[it->second] == o) ? "o1" : "o2";
        } else {
          label = "o";
        }
      }
      labels_.push_back(label);
    }
  }

  const GroupTable* g_;
  std::vector<Matrix<SmallField>> elems_;
  std::map<std::vector<uint16_t>, size_t> index_;
  std::vector<std::vector<size_t>> orbits_;
  std::vector<size_t> orbit_of_;
  std::vector<OrbitType> types_;
  std::vector<std::string> labels_;
};

/// Decomposition of a class function restricted to the deepest congruence
/// layer K into the additive characters psi_X(Y) = zeta_p^{Tr tr(XY)}.
struct OrbitDecomposition {
  std::vector<uint64_t> multiplicity;  // per Lie element X, in F_ell
  std::vector<size_t> support;         // X with nonzero multiplicity
  bool single_orbit = false;
  bool constant_multiplicity = false;
  size_t orbit = SIZE_MAX;             // valid when single_orbit
  uint64_t e = 0;                      // Clifford multiplicity
};

struct OrbitMapEntry {
  size_t orbit = 0;
  OrbitType type = OrbitType::Zero;
  std::string label;
  uint64_t e = 0;
  size_t orbit_size = 0;
  bool primitive = false;
};

class OrbitMap {
 public:
  OrbitMap(std::shared_ptr<const CharacterTable> tab) : tab_(std::move(tab)), lie_(tab_->classes().group()) {
    const auto& g = tab_->classes().group();
    if (g.r() < 2) throw PreconditionError("orbit_map: requires r >= 2");
    if (tab_->exponent() % g.spec().p != 0) throw InvariantError("orbit_map: p does not divide the exponent");
    kernel_class_.resize(lie_.size());
    for (size_t y = 0; y < lie_.size(); ++y) kernel_class_[y] = tab_->classes().class_of(lie_.kernel_element(y));
    pairing_.resize(lie_.size() * lie_.size());
    for (size_t x = 0; x < lie_.size(); ++x)
      for (size_t y = 0; y < lie_.size(); ++y) pairing_[x * lie_.size() + y] = lie_.pairing(x, y);
    for (size_t i = 0; i < tab_->size(); ++i) {
      auto dec = decompose(tab_->row(i).mod);
      if (!dec.single_orbit || !dec.constant_multiplicity)
        throw InvariantError("orbit_map: restriction of row " + std::to_string(i) + " is not a single orbit");
      OrbitMapEntry en;
      en.orbit = dec.orbit;
      en.type = lie_.orbit_type(dec.orbit);
      en.label = lie_.orbit_label(dec.orbit);
      en.e = dec.e;
      en.orbit_size = lie_.orbit(dec.orbit).size();
      en.primitive = en.type != OrbitType::Zero;
      entries_.push_back(en);
    }
  }

  const LieAlgebra& lie() const { return lie_; }
  const CharacterTable& table() const { return *tab_; }
  const OrbitMapEntry& entry(size_t row) const { return entries_[row]; }
  size_t size() const { return entries_.size(); }
  /// Class of I + pi^{r-1} Y.
  uint32_t kernel_class(size_t y) const { return kernel_class_[y]; }

  /// a_X = |K|^{-1} sum_Y f(I + pi^{r-1} Y) theta_p^{-<X,Y>} mod ell.
  OrbitDecomposition decompose(const std::vector<uint64_t>& f) const {
    const auto& dp = tab_->prime();
    const uint32_t p = lie_.group().spec().p;
    const size_t nk = lie_.size();
    std::vector<uint64_t> zeta(p);
    for (uint32_t t = 0; t < p; ++t) zeta[t] = dp.root(-static_cast<int64_t>(t * (dp.e / p)));
    const uint64_t inv_k = dp.inv(nk % dp.ell);
    OrbitDecomposition out;
    out.multiplicity.resize(nk);
    for (size_t x = 0; x < nk; ++x) {
      uint64_t acc = 0;
      for (size_t y = 0; y < nk; ++y)
        acc = (acc + mul_mod(f[kernel_class_[y]], zeta[pairing_[x * nk + y]], dp.ell)) % dp.ell;
      out.multiplicity[x] = mul_mod(acc, inv_k, dp.ell);
      if (out.multiplicity[x] != 0) out.support.push_back(x);
    }
    if (out.support.empty()) return out;
    const size_t o = lie_.orbit_of(out.support.front());
    out.single_orbit = out.support == lie_.orbit(o);
    out.orbit = out.single_orbit ? o : SIZE_MAX;
    out.e = out.multiplicity[out.support.front()];
    out.constant_multiplicity = true;
    for (auto x : out.support) out.constant_multiplicity = out.constant_multiplicity && out.multiplicity[x] == out.e;
    return out;
  }

  CheckList verify() const {
    CheckList out;
    Json bad = nullptr;
    for (size_t i = 0; i < entries_.size() && bad.is_null(); ++i)
      if (entries_[i].e * entries_[i].orbit_size != tab_->row(i).degree)
        bad = Json{{"row", i}, {"e", entries_[i].e}, {"orbit_size", entries_[i].orbit_size}};
    out.add("clifford_restriction_e_times_orbit_sum", bad.is_null(), "chi(1) = e |orbit| for every row", bad);
    out.add("trivial_character_orbit_zero", !entries_.empty() && entries_[0].type == OrbitType::Zero);
    return out;
  }

 private:
  std::shared_ptr<const CharacterTable> tab_;
  LieAlgebra lie_;
  std::vector<uint32_t> kernel_class_;
  std::vector<uint32_t> pairing_;
  std::vector<OrbitMapEntry> entries_;
};

}  // namespace twistkit
