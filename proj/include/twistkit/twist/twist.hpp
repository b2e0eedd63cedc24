#pragma once

#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "twistkit/core/check.hpp"
#include "twistkit/core/parallel.hpp"
#include "twistkit/groups/geometric.hpp"
#include "twistkit/twist/lang.hpp"

namespace twistkit {

/// Permutation of class indices; image[c] is the class n_F(c).
struct TwistPermutation {
  std::vector<uint32_t> image;

  size_t size() const { return image.size(); }
  uint32_t operator[](size_t c) const { return image[c]; }
  bool is_identity() const {
    for (size_t c = 0; c < image.size(); ++c)
      if (image[c] != c) return false;
    return true;
  }
  bool is_bijection() const {
    std::vector<char> hit(image.size(), 0);
    for (auto v : image) {
      if (v >= image.size() || hit[v]) return false;
      hit[v] = 1;
    }
    return true;
  }
  TwistPermutation compose(const TwistPermutation& o) const {  // (this o o)(c) = this(o(c))
    TwistPermutation out;
    out.image.resize(image.size());
    for (size_t c = 0; c < image.size(); ++c) out.image[c] = image[o.image[c]];
    return out;
  }
  /// Cycle lengths, one entry per cycle, in order of least element.
  std::vector<size_t> cycle_lengths() const {
    std::vector<char> seen(image.size(), 0);
    std::vector<size_t> out;
    for (size_t c = 0; c < image.size(); ++c) {
      if (seen[c]) continue;
      size_t len = 0;
      for (size_t x = c; !seen[x]; x = image[x]) {
        seen[x] = 1;
        ++len;
      }
      out.push_back(len);
    }
    return out;
  }
};

/// Per-class record of how n_F was computed.
struct TwistClassData {
  uint32_t m = 1;
  size_t kernel_dim = 0;
  bool family_adjusted = false;
  uint32_t image = 0;            // from the representative, first kernel element
  uint32_t image_second = 0;     // representative, random kernel element != first
  size_t member = 0;             // random class member used for the third solve
  uint32_t image_member = 0;
};

struct TwistResult {
  TwistPermutation nf;
  std::vector<TwistClassData> data;
  bool solution_independent = true;  // all three solves agree on every class
};

struct TwistOptions {
  uint64_t seed = 0;
  unsigned threads = 1;
};

inline TwistResult compute_twist(const LangSolver& solver, const TwistOptions& opt = {}) {
  const ClassTable& ct = solver.classes();
  const size_t nc = ct.num_classes();
  TwistResult out;
  out.data.resize(nc);
  parallel_for(nc, opt.threads, [&](size_t c) {
    auto& d = out.data[c];
    auto first = solver.solve(ct.rep(c));
    d.m = first.m;
    d.kernel_dim = first.kernel_dim;
    d.family_adjusted = first.family_adjusted;
    d.image = solver.image_class(first);
    auto second = solver.solve(ct.rep(c), KernelPick::random(opt.seed ^ (0xA5A5ULL + c), &first.h));
    d.image_second = solver.image_class(second);
    std::mt19937_64 rng(opt.seed + c);
    const auto& members = ct.members(c);
    d.member = members[rng() % members.size()];
    d.image_member = solver.image_class(solver.solve(d.member));
  });
  out.nf.image.resize(nc);
  for (size_t c = 0; c < nc; ++c) {
    out.nf.image[c] = out.data[c].image;
    if (out.data[c].image_second != out.data[c].image || out.data[c].image_member != out.data[c].image)
      out.solution_independent = false;
  }
  return out;
}

/// (Sh f)(c) = f(n_F(c)).
template <class T>
std::vector<T> shintani(const TwistPermutation& nf, const std::vector<T>& f) {
  if (f.size() != nf.size()) throw PreconditionError("shintani: class function has the wrong length");
  std::vector<T> out(f.size());
  for (size_t c = 0; c < f.size(); ++c) out[c] = f[nf[c]];
  return out;
}

/// Order of the permutation n_F (lcm of its cycle lengths).
inline uint64_t sh_order(const TwistPermutation& nf) {
  uint64_t o = 1;
  for (auto len : nf.cycle_lengths()) o = std::lcm(o, static_cast<uint64_t>(len));
  return o;
}

/// Classes that contain an element of the residue subgroup G_1^F.
inline std::vector<char> classes_meeting_residue(const ClassTable& ct) {
  std::vector<char> out(ct.num_classes(), 0);
  for (auto e : ct.group().residue_subgroup()) out[ct.class_of(e)] = 1;
  return out;
}

struct TwistPropertyReport {
  CheckList checks;
  uint64_t order = 1;
  std::vector<size_t> cycle_lengths;
  std::vector<uint32_t> moved;
};

/// Finite checks on n_F: bijectivity, size/level/Jordan preservation, the
/// permutation-matrix structure of Sh, isometry, and the fixed-class
/// statements for semisimple, deep-congruence and residue unipotent classes.
inline TwistPropertyReport verify_twist_properties(const ClassTable& ct, const TwistResult& tw,
                                      const GeometricPartition* geo = nullptr, uint64_t seed = 0) {
  TwistPropertyReport rep;
  const auto& nf = tw.nf;
  const size_t nc = ct.num_classes();
  auto& ch = rep.checks;
  const size_t r = ct.group().r();

  for (uint32_t c = 0; c < nc; ++c)
    if (nf[c] != c) rep.moved.push_back(c);
  rep.order = sh_order(nf);
  rep.cycle_lengths = nf.cycle_lengths();

  ch.add("nf_bijection", nf.is_bijection());
  ch.add("nf_solution_independent", tw.solution_independent,
         "first and random kernel elements, and a random class member, give the same class");

  auto first_failure = [&](auto pred, const char* what) -> Json {
    for (uint32_t c = 0; c < nc; ++c)
      if (!pred(c)) return Json{{"class", c}, {"image", nf[c]}, {"violates", what}};
    return nullptr;
  };
  auto add_pred = [&](const std::string& name, auto pred, const char* what, std::string detail = {}) {
    Json w = first_failure(pred, what);
    ch.add(name, w.is_null(), std::move(detail), w);
  };

  add_pred("nf_preserves_size", [&](uint32_t c) { return ct.size(c) == ct.size(nf[c]); }, "class size");
  add_pred("nf_preserves_level", [&](uint32_t c) { return ct.level(c) == ct.level(nf[c]); }, "congruence level");
  add_pred(
      "nf_preserves_jordan_type",
      [&](uint32_t c) {
        const auto &a = ct.jordan(c), &b = ct.jordan(nf[c]);
        return a.s_order == b.s_order && a.u_order == b.u_order;
      },
      "orders of semisimple and unipotent parts");

  // Sh in the characteristic-function basis is the permutation matrix of n_F^{-1};
  // P^k = 1 for k = ord(n_F), so Sh is semisimple with root-of-unity eigenvalues.
  TwistPermutation power = nf;
  for (uint64_t k = 1; k < rep.order; ++k) power = power.compose(nf);
  ch.add("sh_permutation_matrix_of_finite_order", power.is_identity(),
         "Sh^" + std::to_string(rep.order) + " = 1; eigenvalues are the roots of unity of the cycle lengths");

  std::mt19937_64 rng(seed);
  bool isometry = true;
  for (int trial = 0; trial < 16 && isometry; ++trial) {
    std::vector<int64_t> f(nc), g(nc);
    for (size_t c = 0; c < nc; ++c) {
      f[c] = static_cast<int64_t>(rng() % 201) - 100;
      g[c] = static_cast<int64_t>(rng() % 201) - 100;
    }
    auto sf = shintani(nf, f), sg = shintani(nf, g);
    int64_t a = 0, b = 0;
    for (size_t c = 0; c < nc; ++c) {
      a += static_cast<int64_t>(ct.size(c)) * f[c] * g[c];
      b += static_cast<int64_t>(ct.size(c)) * sf[c] * sg[c];
    }
    isometry = a == b;
  }
  ch.add("sh_isometry", isometry, "<Sh f, Sh g> = <f, g> on 16 random integer class functions");

  std::vector<int64_t> trivial(nc, 1);
  std::vector<int64_t> regular(nc, 0);
  regular[ct.identity_class()] = static_cast<int64_t>(ct.group().order());
  ch.add("sh_fixes_trivial_and_regular", shintani(nf, trivial) == trivial && shintani(nf, regular) == regular);

  add_pred(
      "semisimple_classes_fixed", [&](uint32_t c) { return !ct.is_semisimple(c) || nf[c] == c; },
      "semisimple class moved");
  const size_t deep = (r + 1) / 2;
  add_pred(
      "deep_congruence_classes_fixed", [&](uint32_t c) { return ct.level(c) < deep || nf[c] == c; },
      "class of level >= floor((r+1)/2) moved", "level >= " + std::to_string(deep));
  auto meets = classes_meeting_residue(ct);
  add_pred(
      "residue_unipotent_classes_fixed",
      [&](uint32_t c) { return !(meets[c] && ct.is_unipotent(c)) || nf[c] == c; },
      "unipotent class meeting G_1^F moved");

  if (geo) {
    add_pred(
        "nf_within_geometric_block", [&](uint32_t c) { return geo->block_of[c] == geo->block_of[nf[c]]; },
        "n_F(c) outside the geometric block of c", "m_max = " + std::to_string(geo->m_max));
    if (ct.group().spec().family == Family::GL) {
      bool singletons = true;
      for (const auto& b : geo->blocks) singletons = singletons && b.size() == 1;
      ch.add("gl_geometric_blocks_singleton", singletons);
    }
  }
  if (ct.group().spec().family == Family::GL) ch.add("gl_nf_identity", nf.is_identity(), "sh_order = " + std::to_string(rep.order));
  return rep;
}

/// Exhaustive Lang-solver run over every element: F(h) = hg, det h = 1 for
/// SL, hgh^{-1} in G^F, kernel dimension, and agreement of two solves.
struct LangSoundness {
  size_t elements = 0;
  size_t failures = 0;
  size_t min_kernel_dim = SIZE_MAX, max_kernel_dim = 0;
  Json first_failure;
};

inline LangSoundness lang_soundness(const LangSolver& solver, uint64_t seed, unsigned threads = 1) {
  const ClassTable& ct = solver.classes();
  const GroupTable& g = ct.group();
  const auto& spec = g.spec();
  const size_t expected_dim = size_t{spec.n} * spec.n * spec.r * spec.k;
  std::vector<uint8_t> ok(g.order(), 0);
  std::vector<size_t> dims(g.order(), 0);
  auto check_one = [&](size_t e) {
    auto a = solver.solve(e);
    auto b = solver.solve(e, KernelPick::random(seed ^ (e * 0x9E3779B97F4A7C15ULL), &a.h));
    dims[e] = a.kernel_dim;
    bool good = a.kernel_dim == expected_dim && b.kernel_dim == expected_dim;
    auto ge = solver.embed(a.h.field(), e);
    for (const auto* s : {&a, &b}) {
      good = good && s->h.frob() == s->h * ge;
      if (spec.family == Family::SL) {
        auto d = s->h.det();
        good = good && d == TruncElem<PolyField>::constant(s->h.field(), spec.r, s->h.field().one());
      }
    }
    good = good && ct.class_of(a.image) == ct.class_of(b.image);
    ok[e] = good;
  };
  parallel_for(g.order(), threads, [&](size_t e) {
    try {
      check_one(e);
    } catch (const std::exception&) {
      ok[e] = 0;
    }
  });
  LangSoundness out;
  out.elements = g.order();
  for (size_t e = 0; e < g.order(); ++e) {
    out.min_kernel_dim = std::min(out.min_kernel_dim, dims[e]);
    out.max_kernel_dim = std::max(out.max_kernel_dim, dims[e]);
    if (!ok[e]) {
      if (out.failures == 0) out.first_failure = Json{{"element", e}, {"kernel_dim", dims[e]}};
      ++out.failures;
    }
  }
  return out;
}

}  // namespace twistkit
