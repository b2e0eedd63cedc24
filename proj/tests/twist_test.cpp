#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "twistkit/characters/clifford.hpp"
#include "twistkit/characters/invariance.hpp"
#include "twistkit/twist/twist.hpp"

using namespace twistkit;

namespace {

struct Fixture {
  std::shared_ptr<const ClassTable> ct;
  std::shared_ptr<LangSolver> solver;
  TwistResult tw;
};

const Fixture& fixture(Family fam, uint32_t p) {
  static std::map<std::pair<int, uint32_t>, Fixture> cache;
  auto key = std::make_pair(static_cast<int>(fam), p);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  Fixture fx;
  fx.ct = ClassTable::build(GroupTable::build(GroupSpec{fam, 2, p, 1, 2}));
  fx.solver = std::make_shared<LangSolver>(fx.ct);
  fx.tw = compute_twist(*fx.solver, TwistOptions{0, 1});
  return cache.emplace(key, std::move(fx)).first->second;
}

// Inner product sum_c |C| f(c) g(c) / |G| with rational class functions kept as |G| * <f, g>.
int64_t scaled_inner(const ClassTable& ct, const std::vector<int64_t>& f, const std::vector<int64_t>& g) {
  int64_t acc = 0;
  for (size_t c = 0; c < ct.num_classes(); ++c) acc += static_cast<int64_t>(ct.size(c)) * f[c] * g[c];
  return acc;
}

}  // namespace

TEST(Lang, IdentityNeedsNoExtension) {
  const auto& fx = fixture(Family::SL, 3);
  const auto& g = fx.ct->group();
  auto sol = fx.solver->solve(g.identity_index());
  EXPECT_EQ(sol.m, 1u);
  EXPECT_TRUE(sol.h.frob() == sol.h);
  EXPECT_TRUE(sol.h == TruncMat<PolyField>::identity(sol.h.field(), 2, 2));
  EXPECT_EQ(sol.image, g.identity_index());
}

TEST(Lang, OrderTwoResidueElementUsesQuadraticExtension) {
  const auto& fx = fixture(Family::SL, 3);
  const auto& g = fx.ct->group();
  const SmallField& f = g.field();
  GroupTable::Mat m(f, 2, 2);
  m.at(0, 0, 0) = m.at(0, 1, 1) = f.neg(f.one());
  auto sol = fx.solver->solve(g.require_index(m));
  EXPECT_EQ(sol.m, 2u);
  EXPECT_TRUE(sol.h.frob() == sol.h * fx.solver->embed(sol.h.field(), g.require_index(m)));
  EXPECT_TRUE(sol.h.det() == TruncElem<PolyField>::constant(sol.h.field(), 2, sol.h.field().one()));
}

TEST(Lang, SampledSolutionsSatisfyTheEquation) {
  const auto& fx = fixture(Family::SL, 3);
  const auto& g = fx.ct->group();
  std::mt19937_64 rng(2);
  for (int it = 0; it < 60; ++it) {
    size_t e = rng() % g.order();
    auto sol = fx.solver->solve(e, KernelPick::random(rng()));
    EXPECT_TRUE(sol.h.frob() == sol.h * fx.solver->embed(sol.h.field(), e));
    EXPECT_EQ(sol.kernel_dim, 8u);
    // h g h^{-1} is F-fixed, so it projects back into the table
    auto conj = sol.h * fx.solver->embed(sol.h.field(), e) * sol.h.inverse();
    EXPECT_TRUE(conj.frob() == conj);
    EXPECT_EQ(fx.solver->project(conj), sol.image);
  }
}

TEST(Twist, GLIsIdentity) {
  const auto& fx = fixture(Family::GL, 3);
  EXPECT_TRUE(fx.tw.nf.is_identity());
  EXPECT_EQ(sh_order(fx.tw.nf), 1u);
  EXPECT_TRUE(fx.tw.solution_independent);
}

TEST(Twist, SemisimpleAndCongruenceClassesFixed) {
  for (auto fam : {Family::SL, Family::GL}) {
    const auto& fx = fixture(fam, 3);
    const auto& ct = *fx.ct;
    for (size_t c = 0; c < ct.num_classes(); ++c) {
      if (ct.is_semisimple(c)) { EXPECT_EQ(fx.tw.nf[c], c) << "semisimple class " << c; }
      if (ct.level(c) >= 1) { EXPECT_EQ(fx.tw.nf[c], c) << "congruence class " << c; }
    }
  }
}

TEST(Twist, ResidueUnipotentFixedAndMovedClassesHaveSOrderTwo) {
  const auto& fx = fixture(Family::SL, 3);
  const auto& ct = *fx.ct;
  const auto& g = ct.group();
  const SmallField& f = g.field();
  auto u = GroupTable::Mat::identity(f, 2, 2);
  u.at(0, 0, 1) = f.one();
  const auto cu = ct.class_of(g.require_index(u));
  EXPECT_EQ(fx.tw.nf[cu], cu);
  size_t moved = 0;
  for (size_t c = 0; c < ct.num_classes(); ++c)
    if (fx.tw.nf[c] != c) {
      ++moved;
      EXPECT_EQ(ct.jordan(c).s_order, 2u);
    }
  EXPECT_GT(moved, 0u);
}

TEST(Twist, XPrimeGoesToNonsquareMultiple) {
  for (uint32_t p : {3u, 5u}) {
    const auto& fx = fixture(Family::SL, p);
    const SmallField& f = fx.ct->group().field();
    const auto nu = static_cast<uint16_t>(least_nonsquare(f));
    for (uint16_t x = 1; x < f.size(); ++x)
      EXPECT_EQ(fx.tw.nf[class_of_xprime(*fx.ct, x)], class_of_xprime(*fx.ct, f.mul(nu, x)));
  }
}

TEST(Shintani, ConstantsSemisimpleIndicatorsAndIsometry) {
  const auto& fx = fixture(Family::SL, 3);
  const auto& ct = *fx.ct;
  const size_t h = ct.num_classes();
  std::vector<int64_t> one(h, 1);
  EXPECT_EQ(shintani(fx.tw.nf, one), one);
  for (size_t c = 0; c < h; ++c) {
    if (!ct.is_semisimple(c)) continue;
    std::vector<int64_t> ind(h, 0);
    ind[c] = 1;
    EXPECT_EQ(shintani(fx.tw.nf, ind), ind);
  }
  std::mt19937_64 rng(9);
  for (int it = 0; it < 50; ++it) {
    std::vector<int64_t> a(h), b(h);
    for (size_t c = 0; c < h; ++c) {
      a[c] = static_cast<int64_t>(rng() % 21) - 10;
      b[c] = static_cast<int64_t>(rng() % 21) - 10;
    }
    EXPECT_EQ(scaled_inner(ct, shintani(fx.tw.nf, a), shintani(fx.tw.nf, b)), scaled_inner(ct, a, b));
  }
}

TEST(Shintani, OrderAgreesWithRepeatedComposition) {
  for (uint32_t p : {3u, 5u}) {
    const auto& nf = fixture(Family::SL, p).tw.nf;
    uint64_t k = 1;
    for (auto pw = nf; !pw.is_identity(); pw = pw.compose(nf)) ++k;
    EXPECT_EQ(sh_order(nf), k);
  }
}

TEST(TwistProperties, AllChecksPassForSL2F3Eps) {
  const auto& fx = fixture(Family::SL, 3);
  auto geo = geometric_partition(*fx.ct, 4, 0);
  auto rep = verify_twist_properties(*fx.ct, fx.tw, &geo, 0);
  for (const auto& c : rep.checks.items()) EXPECT_TRUE(c.passed) << c.name << ": " << c.detail;
  EXPECT_EQ(rep.order, 2u);
}

TEST(Twist, ThreeSolvesAgreeAndResultIsSeedIndependent) {
  const auto& fx = fixture(Family::SL, 3);
  EXPECT_TRUE(fx.tw.solution_independent);
  auto other = compute_twist(*fx.solver, TwistOptions{12345, 1});
  EXPECT_EQ(other.nf.image, fx.tw.nf.image);
}
