#include <gtest/gtest.h>

#include <random>
#include <set>

#include "twistkit/characters/clifford.hpp"
#include "twistkit/characters/invariance.hpp"
#include "twistkit/groups/class_table.hpp"
#include "twistkit/groups/geometric.hpp"

using namespace twistkit;

namespace {

std::shared_ptr<const ClassTable> classes(Family fam, uint32_t n, uint32_t p, uint32_t r) {
  return ClassTable::build(GroupTable::build(GroupSpec{fam, n, p, 1, r}));
}

GroupTable::Mat sl2_mat(const SmallField& f, uint32_t r, std::vector<std::vector<uint16_t>> levels) {
  GroupTable::Mat m(f, 2, r);
  for (size_t l = 0; l < levels.size(); ++l)
    for (size_t t = 0; t < 4; ++t) m.at(l, t / 2, t % 2) = levels[l][t];
  return m;
}

}  // namespace

TEST(GroupTable, OrdersMatchEnumerationAndClosedForm) {
  struct Case {
    Family f;
    uint32_t p, r;
    size_t order;
  };
  for (auto c : {Case{Family::SL, 3, 1, 24}, Case{Family::SL, 3, 2, 648}, Case{Family::GL, 3, 2, 3888}}) {
    auto g = GroupTable::build(GroupSpec{c.f, 2, c.p, 1, c.r});
    EXPECT_EQ(g->order(), c.order);
    EXPECT_EQ(static_cast<double>(g->order()), g->spec().closed_form_order());
  }
  // brute-force oracle for SL_2(F_3): count 2x2 matrices over Z/3 of determinant 1
  size_t det1 = 0;
  for (int v = 0; v < 81; ++v) {
    int a = v % 3, b = v / 3 % 3, c = v / 9 % 3, d = v / 27;
    det1 += ((a * d - b * c) % 3 + 3) % 3 == 1;
  }
  EXPECT_EQ(det1, 24u);
}

TEST(GroupTable, ClosedUnderProductsAndInverses) {
  auto g = GroupTable::build(GroupSpec{Family::SL, 2, 3, 1, 2});
  std::mt19937_64 rng(1);
  for (int it = 0; it < 500; ++it) {
    size_t a = rng() % g->order(), b = rng() % g->order();
    EXPECT_TRUE(g->index_of(g->element(a) * g->element(b)).has_value());
    EXPECT_EQ(g->mul(a, g->inverse(a)), g->identity_index());
  }
}

TEST(GroupTable, GuardAndValidation) {
  EXPECT_THROW(GroupTable::build(GroupSpec{Family::GL, 3, 3, 1, 2}, 1000), GuardError);
  EXPECT_THROW(GroupTable::build(GroupSpec{Family::SL, 2, 4, 1, 2}), PreconditionError);
}

TEST(ClassTable, MatchesBruteForcePartitionOfSL2F3) {
  auto ct = classes(Family::SL, 2, 3, 1);
  const auto& g = ct->group();
  // oracle: orbits under conjugation by every element, computed directly on matrices
  std::vector<int> label(g.order(), -1);
  int next = 0;
  for (size_t x = 0; x < g.order(); ++x) {
    if (label[x] >= 0) continue;
    for (size_t s = 0; s < g.order(); ++s) {
      auto sm = g.element(s);
      label[*g.index_of(sm * g.element(x) * sm.inverse())] = next;
    }
    ++next;
  }
  EXPECT_EQ(next, 7);
  EXPECT_EQ(ct->num_classes(), 7u);
  for (size_t x = 0; x < g.order(); ++x)
    for (size_t y = 0; y < g.order(); ++y) ASSERT_EQ(label[x] == label[y], ct->class_of(x) == ct->class_of(y));
}

TEST(ClassTable, PartitionPropertiesOfSL2F3Eps) {
  auto ct = classes(Family::SL, 2, 3, 2);
  const auto& g = ct->group();
  size_t total = 0;
  for (size_t c = 0; c < ct->num_classes(); ++c) {
    total += ct->size(c);
    EXPECT_EQ(g.order() % ct->size(c), 0u);
    // representative is the least member under the canonical order
    for (auto x : ct->members(c)) EXPECT_LE(g.code(ct->rep(c)), g.code(x));
    // orbit-stabiliser
    EXPECT_EQ(centraliser(g, ct->rep(c)).size() * ct->size(c), g.order());
  }
  EXPECT_EQ(total, 648u);
  EXPECT_EQ(ct->size(ct->identity_class()), 1u);
  // rebuilding gives identical representatives
  auto again = classes(Family::SL, 2, 3, 2);
  for (size_t c = 0; c < ct->num_classes(); ++c) EXPECT_EQ(again->rep(c), ct->rep(c));
}

TEST(Jordan, TrivialCases) {
  auto ct = classes(Family::SL, 2, 3, 2);
  const auto& g = ct->group();
  const SmallField& f = g.field();
  const uint16_t m1 = f.neg(f.one());
  size_t unip = g.require_index(sl2_mat(f, 2, {{1, 1, 0, 1}, {0, 0, 0, 0}}));
  auto [s1, u1] = jordan_decomp(*ct, unip);
  EXPECT_EQ(s1, g.identity_index());
  EXPECT_EQ(u1, unip);
  size_t minus = g.require_index(sl2_mat(f, 2, {{m1, 0, 0, m1}, {0, 0, 0, 0}}));
  auto [s2, u2] = jordan_decomp(*ct, minus);
  EXPECT_EQ(s2, minus);
  EXPECT_EQ(u2, g.identity_index());
}

TEST(Jordan, XPrimeSplitsAsMinusIdentityTimesUnipotent) {
  auto ct = classes(Family::SL, 2, 3, 2);
  const auto& g = ct->group();
  const SmallField& f = g.field();
  const uint16_t m1 = f.neg(f.one());
  auto xp = sl2_mat(f, 2, {{m1, 0, 0, m1}, {0, 1, 0, 0}});
  // oracle: X'^3 = -I and X'^4 = -X' = I - eps E_12 by direct powering
  EXPECT_TRUE(xp.pow(3) == sl2_mat(f, 2, {{m1, 0, 0, m1}, {0, 0, 0, 0}}));
  EXPECT_TRUE(xp.pow(4) == sl2_mat(f, 2, {{1, 0, 0, 1}, {0, m1, 0, 0}}));
  auto [s, u] = jordan_decomp(*ct, g.require_index(xp));
  EXPECT_EQ(s, g.require_index(sl2_mat(f, 2, {{m1, 0, 0, m1}, {0, 0, 0, 0}})));
  EXPECT_EQ(u, g.require_index(sl2_mat(f, 2, {{1, 0, 0, 1}, {0, m1, 0, 0}})));
  EXPECT_EQ(g.mul(s, u), g.require_index(xp));
}

TEST(Centraliser, SplitTorusInSL2F5) {
  auto g = GroupTable::build(GroupSpec{Family::SL, 2, 5, 1, 1});
  const SmallField& f = g->field();
  const uint16_t a = f.from_int(2);
  auto d = sl2_mat(f, 1, {{a, 0, 0, f.inv(a)}});
  auto z = centraliser(*g, g->require_index(d));
  EXPECT_EQ(z.size(), 4u);
  for (auto h : z) {
    auto m = g->element(h);
    EXPECT_EQ(m.at(0, 0, 1), 0);
    EXPECT_EQ(m.at(0, 1, 0), 0);
  }
  EXPECT_EQ(centraliser(*g, g->identity_index()).size(), g->order());
}

TEST(Geometric, GLBlocksAreSingletons) {
  auto ct = classes(Family::GL, 2, 3, 2);
  auto geo = geometric_partition(*ct, 4, 0);
  EXPECT_EQ(geo.blocks.size(), ct->num_classes());
  EXPECT_EQ(geo.pairs_unresolved, 0u);
}

TEST(Geometric, XPrimePairMergesInSL2F3Eps) {
  auto ct = classes(Family::SL, 2, 3, 2);
  auto geo = geometric_partition(*ct, 4, 0);
  const SmallField& f = ct->group().field();
  const uint32_t nu = least_nonsquare(f);
  auto a = class_of_xprime(*ct, f.one()), b = class_of_xprime(*ct, static_cast<uint16_t>(nu));
  EXPECT_NE(a, b);
  EXPECT_EQ(geo.block_of[a], geo.block_of[b]);
  EXPECT_EQ(geo.blocks[geo.block_of[a]].size(), 2u);
  // central classes stay alone
  for (size_t c = 0; c < ct->num_classes(); ++c)
    if (ct->size(c) == 1) { EXPECT_EQ(geo.blocks[geo.block_of[c]].size(), 1u); }
}

TEST(Geometric, TransporterOfElementWithItselfContainsIdentity) {
  auto g = GroupTable::build(GroupSpec{Family::SL, 2, 3, 1, 2});
  auto x = g->element(17);
  auto basis = transporter_basis(x, x);
  EXPECT_GE(basis.size(), 2u);
  for (const auto& t : basis) EXPECT_TRUE(t * x == x * t);
}
