#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "twistkit/characters/clifford.hpp"
#include "twistkit/characters/invariance.hpp"

using namespace twistkit;

namespace {

struct Suite {
  std::shared_ptr<const ClassTable> ct;
  std::shared_ptr<const CharacterTable> tab;
  std::shared_ptr<OrbitMap> om;
  TwistResult tw;
};

const Suite& suite(uint32_t p, uint32_t r = 2) {
  static std::map<std::pair<uint32_t, uint32_t>, Suite> cache;
  auto it = cache.find({p, r});
  if (it != cache.end()) return it->second;
  Suite s;
  s.ct = ClassTable::build(GroupTable::build(GroupSpec{Family::SL, 2, p, 1, r}));
  s.tab = CharacterTable::build(s.ct, 1);
  if (r >= 2) {
    s.om = std::make_shared<OrbitMap>(s.tab);
    LangSolver solver(s.ct);
    s.tw = compute_twist(solver, TwistOptions{0, 1});
  }
  return cache.emplace(std::make_pair(p, r), std::move(s)).first->second;
}

std::multiset<uint64_t> degrees(const CharacterTable& t) {
  std::multiset<uint64_t> d;
  for (size_t i = 0; i < t.size(); ++i) d.insert(t.row(i).degree);
  return d;
}

}  // namespace

TEST(Cyclotomic, RelationsReduceToCanonicalForm) {
  EXPECT_TRUE(Cyclotomic::from_counts(3, {1, 1, 1}) == Cyclotomic::integer(3, 0));
  EXPECT_TRUE(Cyclotomic::from_counts(4, {0, 0, 1, 0}) == Cyclotomic::integer(4, -1));
  EXPECT_FALSE(Cyclotomic::from_counts(4, {0, 1, 0, 0}) == Cyclotomic::integer(4, 1));
  auto v = Cyclotomic::from_counts(12, {2, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0});
  EXPECT_FALSE(v.is_integer());
}

TEST(Cyclotomic, ModImageIsRingHomomorphismOnSums) {
  auto dp = DixonPrime::select(12, 24);
  EXPECT_EQ(dp.ell, 13u);
  std::mt19937_64 rng(4);
  for (int it = 0; it < 50; ++it) {
    std::vector<int64_t> a(12), b(12), s(12);
    for (size_t i = 0; i < 12; ++i) {
      a[i] = rng() % 3;
      b[i] = rng() % 3;
      s[i] = a[i] + b[i];
    }
    auto ma = Cyclotomic::from_counts(12, a).mod_image(dp.ell, dp.root(1));
    auto mb = Cyclotomic::from_counts(12, b).mod_image(dp.ell, dp.root(1));
    EXPECT_EQ(Cyclotomic::from_counts(12, s).mod_image(dp.ell, dp.root(1)), (ma + mb) % dp.ell);
  }
}

TEST(DixonPrime, SelectionRule) {
  for (auto [e, order] : std::vector<std::pair<uint64_t, uint64_t>>{{12, 24}, {36, 648}, {60, 15000}}) {
    auto dp = DixonPrime::select(e, order);
    EXPECT_EQ((dp.ell - 1) % e, 0u);
    EXPECT_GT(dp.ell, 2 * static_cast<uint64_t>(std::ceil(std::sqrt(double(order)))));
    EXPECT_TRUE(is_prime(dp.ell));
    EXPECT_EQ(pow_mod(dp.root(1), e, dp.ell), 1u);
    for (uint64_t d = 1; d < e; ++d)
      if (e % d == 0) { EXPECT_NE(pow_mod(dp.root(1), d, dp.ell), 1u); }
  }
  EXPECT_EQ(DixonPrime::select(36, 648).ell, 73u);
}

// Oracle: the regular representation of F_13[SL_2(F_3)] splits under a generic
// central element into isotypic blocks of dimension d_i^2.
TEST(DixonTable, DegreesMatchRegularRepresentationOracle) {
  auto g = GroupTable::build(GroupSpec{Family::SL, 2, 3, 1, 1});
  const size_t n = g->order();
  std::vector<int> cls(n, -1);
  std::vector<std::vector<size_t>> members;
  for (size_t x = 0; x < n; ++x) {
    if (cls[x] >= 0) continue;
    members.emplace_back();
    for (size_t s = 0; s < n; ++s) {
      size_t y = g->conjugate(s, x);
      if (cls[y] < 0) {
        cls[y] = static_cast<int>(members.size() - 1);
        members.back().push_back(y);
      }
    }
  }
  ASSERT_EQ(members.size(), 7u);
  PrimeField f(13);
  std::mt19937_64 rng(1);
  std::multiset<uint64_t> oracle;
  for (int attempt = 0; attempt < 20 && oracle.empty(); ++attempt) {
    Matrix<PrimeField> m(f, n, n);
    for (const auto& c : members) {
      const uint32_t coeff = rng() % 13;
      for (auto x : c)
        for (size_t y = 0; y < n; ++y) m(g->mul(x, y), y) = f.add(m(g->mul(x, y), y), coeff);
    }
    std::multiset<uint64_t> dims;
    size_t total = 0;
    for (uint32_t lam = 0; lam < 13; ++lam) {
      auto shifted = m;
      for (size_t i = 0; i < n; ++i) shifted(i, i) = f.sub(shifted(i, i), lam);
      const size_t k = n - rank(shifted);
      if (k) dims.insert(k), total += k;
    }
    if (total == n && dims.size() == members.size())
      for (auto d : dims) oracle.insert(static_cast<uint64_t>(std::lround(std::sqrt(double(d)))));
  }
  ASSERT_FALSE(oracle.empty());
  EXPECT_EQ(oracle, (std::multiset<uint64_t>{1, 1, 1, 2, 2, 2, 3}));
  EXPECT_EQ(degrees(*suite(3, 1).tab), oracle);
}

TEST(DixonTable, SL2F3EpsValidity) {
  const auto& s = suite(3);
  for (const auto& c : s.tab->verify().items()) EXPECT_TRUE(c.passed) << c.name << ": " << c.detail;
  uint64_t sq = 0;
  auto allowed = sl2_degree_list(3);
  for (size_t i = 0; i < s.tab->size(); ++i) {
    const auto d = s.tab->row(i).degree;
    sq += d * d;
    EXPECT_TRUE(allowed.count(d)) << d;
  }
  EXPECT_EQ(sq, 648u);
  EXPECT_EQ(s.tab->size(), s.ct->num_classes());
  for (const auto& v : s.tab->row(0).exact) EXPECT_TRUE(v == Cyclotomic::integer(v.e, 1));
}

TEST(DixonTable, FirstOrthogonalityRecomputedModEll) {
  const auto& s = suite(3);
  const auto& ct = *s.ct;
  const uint64_t ell = s.tab->prime().ell, order = ct.group().order();
  for (size_t i = 0; i < s.tab->size(); ++i)
    for (size_t j = 0; j < s.tab->size(); ++j) {
      uint64_t acc = 0;
      for (size_t c = 0; c < ct.num_classes(); ++c)
        acc = (acc + mul_mod(ct.size(c) % ell, mul_mod(s.tab->row(i).mod[c], s.tab->row(j).mod[ct.inverse_class(c)], ell),
                             ell)) % ell;
      EXPECT_EQ(acc, i == j ? order % ell : 0u);
    }
}

TEST(OrbitMap, TypesOfSL2F3EpsRows) {
  const auto& s = suite(3);
  for (const auto& c : s.om->verify().items()) EXPECT_TRUE(c.passed) << c.name;
  EXPECT_EQ(s.om->entry(0).type, OrbitType::Zero);
  EXPECT_FALSE(s.om->entry(0).primitive);
  size_t nilpotent = 0, o1 = 0, o2 = 0;
  for (size_t i = 0; i < s.om->size(); ++i) {
    const auto& en = s.om->entry(i);
    if (s.tab->row(i).degree == 12) { EXPECT_EQ(en.type, OrbitType::RegularSemisimple); }
    if (en.type == OrbitType::RegularNilpotent) {
      ++nilpotent;
      o1 += en.label == "o1";
      o2 += en.label == "o2";
    }
  }
  EXPECT_EQ(nilpotent, 12u);
  EXPECT_EQ(o1 + o2, 12u);
  EXPECT_EQ(o1, o2);
}

TEST(Clifford, InducedCharactersAtQ3) {
  const auto& s = suite(3);
  auto cl = clifford_nilpotent_chars(*s.om);
  for (const auto& c : cl.checks.items()) EXPECT_TRUE(c.passed) << c.name << ": " << c.detail;
  EXPECT_EQ(cl.z_order, 162u);
  ASSERT_EQ(cl.chars.size(), 12u);
  std::set<int> rows;
  for (const auto& ic : cl.chars) {
    EXPECT_EQ(ic.degree, 4);
    ASSERT_GE(ic.matched_row, 0);
    EXPECT_TRUE(ic.exact == s.tab->row(ic.matched_row).exact);
    EXPECT_EQ(s.om->entry(ic.matched_row).type, OrbitType::RegularNilpotent);
    rows.insert(ic.matched_row);
  }
  EXPECT_EQ(rows.size(), 12u);
}

TEST(ShInvariance, ShFixedIffRegularSemisimpleAtQ3) {
  const auto& s = suite(3);
  auto cl = clifford_nilpotent_chars(*s.om);
  auto rep = verify_sh_fixed_rows(*s.om, s.tw.nf, cl);
  for (const auto& c : rep.checks.items()) EXPECT_TRUE(c.passed) << c.name << ": " << c.detail;
  for (size_t i = 0; i < s.tab->size(); ++i) {
    const auto d = s.tab->row(i).degree;
    const bool fixed = row_sh_fixed(s.tab->row(i), s.tw.nf);
    if (d == 12 || d == 6) { EXPECT_TRUE(fixed) << "row " << i; }
    if (s.om->entry(i).type == OrbitType::RegularNilpotent) { EXPECT_FALSE(fixed) << "row " << i; }
  }
}

TEST(ShInvariance, OrbitInvarianceUnderSh) {
  const auto& s = suite(3);
  auto rep = verify_orbit_invariance(*s.om, s.tw.nf);
  EXPECT_EQ(rep.exceptions, 0u);
}
