#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "twistkit/flags/cycle_positions.hpp"

using namespace twistkit;

namespace {

FVec unit(size_t dim, size_t i) {
  FVec v(dim, 0);
  v[i] = 1;
  return v;
}

Flag random_flag(const SmallField& f, size_t dim, std::mt19937_64& rng) {
  Echelon e(f, dim);
  std::vector<FVec> rows;
  while (rows.size() < dim) {
    FVec v(dim);
    for (auto& x : v) x = static_cast<uint16_t>(rng() % f.size());
    if (e.insert(v)) rows.push_back(v);
  }
  return Flag(f, rows);
}

uint64_t ipow64(uint64_t b, size_t e) {
  uint64_t out = 1;
  while (e--) out *= b;
  return out;
}

// [n]_Q! computed as a product of projective-space sizes
uint64_t flag_count(uint64_t Q, size_t n) {
  uint64_t out = 1;
  for (size_t i = 1; i <= n; ++i) out *= (ipow64(Q, i) - 1) / (Q - 1);
  return out;
}

}  // namespace

TEST(Echelon, InsertContainsPop) {
  SmallField f(field_make(3, 1, 1));
  Echelon e(f, 3);
  EXPECT_TRUE(e.insert({1, 2, 0}));
  EXPECT_TRUE(e.insert({0, 1, 1}));
  EXPECT_FALSE(e.insert({1, 0, 1}));  // (1,2,0) + (0,1,1) mod 3
  EXPECT_TRUE(e.contains({2, 1, 0}));
  EXPECT_EQ(e.rank(), 2u);
  e.pop();
  EXPECT_EQ(e.rank(), 1u);
  EXPECT_FALSE(e.contains({0, 1, 1}));
}

TEST(Flag, CanonicalFormIgnoresLowerTriangularChangeOfBasis) {
  SmallField f(field_make(3, 1, 2));
  std::mt19937_64 rng(3);
  for (int it = 0; it < 30; ++it) {
    auto a = random_flag(f, 4, rng);
    EXPECT_TRUE(Flag(f, a.rows()) == a);
    // V_i is unchanged by scaling row i and adding earlier rows
    auto rows = a.rows();
    for (size_t i = 0; i < rows.size(); ++i) {
      const uint16_t s = static_cast<uint16_t>(1 + rng() % (f.size() - 1));
      for (auto& x : rows[i]) x = f.mul(s, x);
      for (size_t j = 0; j < i; ++j) {
        const uint16_t c = static_cast<uint16_t>(rng() % f.size());
        for (size_t t = 0; t < rows[i].size(); ++t) rows[i][t] = f.add(rows[i][t], f.mul(c, rows[j][t]));
      }
    }
    EXPECT_TRUE(Flag(f, rows) == a);
  }
}

TEST(RelPos, CoordinateFlagsRealiseEveryPermutation) {
  SmallField f(field_make(3, 1, 1));
  const size_t n = 4;
  std::vector<FVec> std_rows;
  for (size_t i = 0; i < n; ++i) std_rows.push_back(unit(n, i));
  const Flag base(f, std_rows);
  Perm s = identity_perm(n);
  do {
    std::vector<FVec> rows;
    for (size_t i = 0; i < n; ++i) rows.push_back(unit(n, s[i]));
    // V_i meets span(e_{s(1)}, ..., e_{s(j)}) in #{k <= j : s(k) <= i}, so w = s^{-1}
    EXPECT_EQ(relpos(base, Flag(f, rows)), inverse_perm(s)) << perm_to_string(s);
  } while (std::next_permutation(s.begin(), s.end()));
}

TEST(RelPos, SwappingArgumentsInverts) {
  SmallField f(field_make(2, 1, 3));
  std::mt19937_64 rng(5);
  for (int it = 0; it < 100; ++it) {
    auto a = random_flag(f, 5, rng), b = random_flag(f, 5, rng);
    EXPECT_EQ(relpos(a, b), inverse_perm(relpos(b, a)));
    EXPECT_EQ(relpos(a, a), identity_perm(5));
  }
}

TEST(RelPos, HistogramOverF9) {
  auto c = make_flag_context(2, 2, 3, 1, 2);
  auto hist = relpos_histogram(c, 1);
  uint64_t total = 0;
  for (const auto& [w, cnt] : hist) {
    total += cnt;
    // F^2 acts trivially, so relpos(V, FV) is its own inverse
    EXPECT_EQ(w, inverse_perm(w)) << perm_to_string(w);
  }
  EXPECT_EQ(total, flag_count(9, 4));
  EXPECT_EQ(total, 746200u);
  EXPECT_EQ(hist.size(), 10u);  // involutions in S_4
  EXPECT_EQ(hist.at(identity_perm(4)), flag_count(3, 4));
}

TEST(Springer, CommutantDimension) {
  for (auto [n, r, p] : std::vector<std::tuple<uint32_t, uint32_t, uint32_t>>{{2, 2, 3}, {3, 2, 2}, {2, 3, 2}}) {
    auto cm = commutant_check(make_flag_context(n, r, p, 1, 1));
    EXPECT_EQ(cm.dimension, size_t{n} * n * r);
    EXPECT_EQ(cm.dimension, cm.expected);
    EXPECT_TRUE(cm.basis_in_image);
    EXPECT_TRUE(cm.image_commutes);
    EXPECT_TRUE(cm.nilpotent_of_order_r);
  }
}

TEST(Springer, GuardOnDimension) { EXPECT_THROW(make_flag_context(5, 4, 2, 1, 1), GuardError); }

TEST(Springer, FirstLineMustBeFixedByU) {
  auto c = make_flag_context(2, 2, 3, 1, 1);
  std::vector<FVec> rows;
  for (size_t i = 0; i < c.dim(); ++i) rows.push_back(unit(c.dim(), i));
  // V_1 = <x_1^{(0)}> is moved by u
  EXPECT_FALSE(springer_membership(Flag(*c.field, rows), c.u));
  std::reverse(rows.begin(), rows.end());
  // x^{(1)} first, then x^{(0)}: every V_i is a sum of pi-stable pieces
  EXPECT_TRUE(springer_membership(Flag(*c.field, rows), c.u));
}

TEST(Coxeter, MatchesDrinfeldClosedForm) {
  // points of P^{z-1}(F_Q) whose coordinates are F_q-independent: prod_{i<z} (Q - q^i)
  for (auto [q, p, k] : std::vector<std::tuple<uint64_t, uint32_t, uint32_t>>{{2, 2, 1}, {3, 3, 1}, {4, 2, 2}})
    for (size_t z = 2; z <= 3; ++z)
      for (uint32_t m = 1; m <= 3; ++m) {
        const uint64_t Q = ipow64(q, m);
        if (Q > 200) continue;
        int64_t expect = 1;
        for (size_t i = 1; i < z; ++i) expect *= static_cast<int64_t>(Q) - static_cast<int64_t>(ipow64(q, i));
        EXPECT_EQ(static_cast<int64_t>(coxeter_count(z, p, k, m)), std::max<int64_t>(expect, 0))
            << "q=" << q << " z=" << z << " m=" << m;
      }
  EXPECT_EQ(coxeter_count(2, 3, 1, 1), 0u);
  EXPECT_EQ(coxeter_count(2, 3, 1, 2), 6u);
}

TEST(Enumerate, StructuredAgreesWithBrute) {
  for (uint32_t m : {1u, 2u}) {
    auto c = make_flag_context(2, 2, 3, 1, m);
    for (size_t z = 1; z <= 4; ++z) {
      auto fast = enumerate_buw_cycle(c, z);
      auto slow = enumerate_buw_brute(c, cycle_perm(4, z));
      EXPECT_EQ(fast, slow) << "m=" << m << " z=" << z;
      for (const auto& fl : fast) {
        EXPECT_TRUE(springer_membership(fl, c.u));
        EXPECT_TRUE(dl_membership(fl, cycle_perm(4, z)));
      }
    }
  }
}

TEST(Enumerate, BruteWithoutSpringerCountsDeligneLusztigCells) {
  // all flags over F_3 in relative position 1 with their Frobenius are the rational ones
  auto c = make_flag_context(2, 2, 3, 1, 1);
  BruteOptions opt;
  opt.require_springer = false;
  EXPECT_EQ(enumerate_buw_brute(c, identity_perm(4), opt).size(), flag_count(3, 4));
}

TEST(Enumerate, PointSetIsStableUnderFrobeniusAndGroup) {
  auto c = make_flag_context(2, 2, 3, 1, 2);
  auto pts = enumerate_buw_cycle(c, 2);
  ASSERT_EQ(pts.size(), 24u);
  const auto gens = gl_generators(c);
  for (const auto& fl : pts) {
    EXPECT_TRUE(std::binary_search(pts.begin(), pts.end(), fl.frobenius()));
    for (const auto& g : gens) EXPECT_TRUE(std::binary_search(pts.begin(), pts.end(), fl.apply(g)));
  }
}

TEST(CyclePositions, CaseClassification) {
  EXPECT_EQ(classify_cycle(2, 1), CycleCase::I);
  EXPECT_EQ(classify_cycle(3, 2), CycleCase::II);
  EXPECT_EQ(classify_cycle(2, 2), CycleCase::III);
  EXPECT_EQ(classify_cycle(2, 3), CycleCase::IV);
  EXPECT_EQ(cycle_case_name(CycleCase::IV), "iv");
}

TEST(CyclePositions, ExplicitCaseOneFlag) {
  for (auto [n, r, p] : std::vector<std::tuple<uint32_t, uint32_t, uint32_t>>{{2, 2, 3}, {3, 2, 2}, {2, 3, 2}}) {
    auto c = make_flag_context(n, r, p, 1, 1);
    auto fl = explicit_case1_flag(c);
    EXPECT_TRUE(springer_membership(fl, c.u));
    EXPECT_TRUE(dl_membership(fl, identity_perm(c.dim())));
    auto pts = enumerate_buw_cycle(c, 1);
    EXPECT_TRUE(std::binary_search(pts.begin(), pts.end(), fl));
  }
}

TEST(CyclePositions, AllCasesAtN2R2Q3) {
  const std::vector<uint64_t> expect_m2 = {0, 24, 0, 0};
  for (size_t z = 1; z <= 4; ++z) {
    auto rep = cycle_position_report(2, 2, 3, 1, z, {1, 2});
    for (const auto& ch : rep.checks.items()) EXPECT_TRUE(ch.passed) << "z=" << z << " " << ch.name << ": " << ch.detail;
    ASSERT_EQ(rep.rows.size(), 2u);
    EXPECT_TRUE(rep.rows[0].brute.has_value());
    if (z == 1) { EXPECT_EQ(rep.rows[0].count, 28u); }
    if (z > 1) { EXPECT_EQ(rep.rows[1].count, expect_m2[z - 1]); }
  }
  auto z2 = cycle_position_report(2, 2, 3, 1, 2, {2, 3});
  EXPECT_EQ(z2.rows[0].n_comp, std::optional<uint64_t>(4));
  EXPECT_EQ(z2.rows[1].count, 96u);
}

TEST(CyclePositions, CaseTwoFactorsThroughCoxeterCount) {
  auto rep = cycle_position_report(3, 2, 2, 1, 2, {2, 3});
  for (const auto& ch : rep.checks.items()) EXPECT_TRUE(ch.passed) << ch.name << ": " << ch.detail;
  EXPECT_EQ(rep.kind, CycleCase::II);
  EXPECT_EQ(rep.rows[0].count, 714u);
  EXPECT_EQ(rep.rows[1].count, 2142u);
  for (const auto& row : rep.rows) {
    ASSERT_TRUE(row.coxeter && row.n_comp);
    EXPECT_EQ(*row.coxeter * *row.n_comp, row.count);
  }
}

TEST(CyclePositions, CsvAndJsonShapes) {
  auto rep = cycle_position_report(2, 2, 3, 1, 4, {1});
  auto csv = cycle_position_csv(rep);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "n,r,q,z,m,count,case,N_comp");
  auto js = cycle_position_json(rep);
  EXPECT_TRUE(js.is_object());
}
