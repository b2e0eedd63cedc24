#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "twistkit/core/check.hpp"
#include "twistkit/flags/enumerate.hpp"

namespace twistkit {

enum class CycleCase { I, II, III, IV };

inline std::string cycle_case_name(CycleCase c) {
  switch (c) {
    case CycleCase::I: return "i";
    case CycleCase::II: return "ii";
    case CycleCase::III: return "iii";
    case CycleCase::IV: return "iv";
  }
  return "?";
}

inline CycleCase classify_cycle(size_t n, size_t z) {
  if (z == 1) return CycleCase::I;
  if (z < n) return CycleCase::II;
  if (z == n) return CycleCase::III;
  return CycleCase::IV;
}

/// The flag of case (i): x_n^{(l)}, ..., x_2^{(l)} for l = r-1 down to 1, then
/// x_n^{(0)} + x_1^{(r-1)}, then x_1^{(r-1)}, ..., x_1^{(1)}, then
/// x_{n-1}^{(0)}, ..., x_1^{(0)}.
inline Flag explicit_case1_flag(const FlagContext& c) {
  const size_t n = c.n, r = c.r, dim = c.dim();
  if (n < 2 || r < 2) throw PreconditionError("explicit_case1_flag: requires n >= 2 and r >= 2");
  auto x = [&](size_t j, size_t l) {
    FVec v(dim, 0);
    v[c.coord(j, l)] = 1;
    return v;
  };
  std::vector<FVec> rows;
  for (size_t l = r - 1; l >= 1; --l)
    for (size_t j = n; j >= 2; --j) rows.push_back(x(j, l));
  FVec pivot = x(n, 0);
  pivot[c.coord(1, r - 1)] = 1;
  rows.push_back(pivot);
  for (size_t l = r - 1; l >= 1; --l) rows.push_back(x(1, l));
  for (size_t j = n - 1; j >= 1; --j) rows.push_back(x(j, 0));
  return Flag(*c.field, rows);
}

struct CyclePositionRow {
  uint32_t m = 0;
  uint64_t count = 0;
  std::optional<uint64_t> brute;     // set when the cross-check ran
  std::optional<uint64_t> coxeter;   // |Y_z(F_{q^m})|, z >= 2
  std::optional<uint64_t> n_comp;    // count / |Y_z| when |Y_z| > 0
  uint64_t frobenius_fixed = 0;
};

struct CyclePositionOptions {
  bool xcheck = true;
  unsigned threads = 1;
};

struct CyclePositionReport {
  uint32_t n = 0, r = 0, p = 0, k = 0;
  size_t z = 0;
  CycleCase kind = CycleCase::I;
  std::vector<CyclePositionRow> rows;
  CheckList checks;
  Json witnesses = Json::object();

  uint64_t q() const { return ipow(p, k); }
};

namespace detail {

inline Json flag_json(const Flag& f) { return Json(f.to_indices()); }

inline bool contains_flag(const std::vector<Flag>& sorted, const Flag& f) {
  return std::binary_search(sorted.begin(), sorted.end(), f);
}

/// First (A, flag) with iota(I + pi^{r-1} A) moving some piece V_i, i >= from.
inline std::optional<std::vector<uint32_t>> moving_congruence(const FlagContext& c, const Flag& f, size_t from) {
  for (const auto& a : all_base_matrices(c)) {
    auto k = congruence_element(c, a);
    for (size_t i = std::max<size_t>(from, 1); i <= f.dim(); ++i) {
      Echelon e = f.piece(i);
      bool stable = true;
      for (size_t t = 0; t < i && stable; ++t) stable = e.contains(Flag::mat_vec(k, f.rows()[t]));
      if (!stable) return a;
    }
  }
  return std::nullopt;
}

}  // namespace detail

/// Counts |B_{u,w}(F_{q^m})| for w the cycle (1, ..., z) and checks the
/// case-specific claims: a primitivity witness in cases (i) and (ii), the
/// factorisation through Coxeter variety counts in (ii) and (iii), trivial
/// congruence action in (iii), emptiness in (iv).
inline CyclePositionReport cycle_position_report(uint32_t n, uint32_t r, uint32_t p, uint32_t k, size_t z,
                                        std::vector<uint32_t> m_list, const CyclePositionOptions& opt = {}) {
  if (n < 2 || r < 2) throw PreconditionError("cycle_position_report: requires n >= 2 and r >= 2");
  if (z < 1 || z > size_t{n} * r) throw PreconditionError("cycle_position_report: z must lie in [1, nr]");
  if (m_list.empty()) throw PreconditionError("cycle_position_report: empty m list");
  std::sort(m_list.begin(), m_list.end());
  m_list.erase(std::unique(m_list.begin(), m_list.end()), m_list.end());
  if (m_list.front() == 0) throw PreconditionError("cycle_position_report: m must be positive");

  CyclePositionReport rep;
  rep.n = n;
  rep.r = r;
  rep.p = p;
  rep.k = k;
  rep.z = z;
  rep.kind = classify_cycle(n, z);
  const size_t dim = size_t{n} * r;
  const Perm w = cycle_perm(dim, z);
  const std::string tag = "(n,r,q,z) = (" + std::to_string(n) + "," + std::to_string(r) + "," +
                          std::to_string(rep.q()) + "," + std::to_string(z) + ")";
  rep.witnesses["permutation"] = perm_to_string(w);

  const FlagContext base = make_flag_context(n, r, p, k, 1);
  {
    auto cm = commutant_check(base);
    rep.checks.add("commutant_equals_iota_image", cm.dimension == cm.expected && cm.basis_in_image && cm.image_commutes,
                   "dim = " + std::to_string(cm.dimension) + ", n^2 r = " + std::to_string(cm.expected));
    rep.checks.add("u_nilpotency_order_r", cm.nilpotent_of_order_r, "(u - 1)^r = 0 and (u - 1)^{r-1} != 0");
  }
  const uint64_t rational_count = enumerate_buw_cycle(base, z, opt.threads).size();

  bool xcheck_ok = true, action_ok = true, frob_ok = true;
  Json action_bad = nullptr, xcheck_detail = Json::array();
  std::vector<std::vector<Flag>> points;
  for (auto m : m_list) {
    const FlagContext c = make_flag_context(n, r, p, k, m);
    auto pts = enumerate_buw_cycle(c, z, opt.threads);
    CyclePositionRow row;
    row.m = m;
    row.count = pts.size();
    if (opt.xcheck && detail::q_factorial(c.field_size(), dim) <= detail::kFlagGuard) {
      auto b = enumerate_buw_brute(c, w, BruteOptions{true, opt.threads});
      row.brute = b.size();
      const bool same = b == pts;
      xcheck_ok = xcheck_ok && same;
      xcheck_detail.push_back(Json{{"m", m}, {"brute", b.size()}, {"structured", pts.size()}, {"equal", same}});
    }
    if (z >= 2) {
      row.coxeter = coxeter_count(z, p, k, m);
      if (*row.coxeter > 0 && row.count % *row.coxeter == 0) row.n_comp = row.count / *row.coxeter;
    }
    const auto gens = gl_generators(c);
    for (const auto& f : pts) {
      for (size_t g = 0; g < gens.size() && action_ok; ++g)
        if (!detail::contains_flag(pts, f.apply(gens[g]))) {
          action_ok = false;
          action_bad = Json{{"m", m}, {"generator", g}, {"flag", detail::flag_json(f)}};
        }
      auto ff = f.frobenius();
      frob_ok = frob_ok && detail::contains_flag(pts, ff);
      row.frobenius_fixed += (ff == f);
    }
    frob_ok = frob_ok && row.frobenius_fixed == rational_count;
    rep.rows.push_back(row);
    points.push_back(std::move(pts));
  }
  if (opt.xcheck && !xcheck_detail.empty())
    rep.checks.add("brute_structured_agree", xcheck_ok, "at every m within the brute-force guard", xcheck_detail);
  else if (opt.xcheck)
    rep.witnesses["xcheck"] = "skipped: no tested m within the brute-force guard";
  rep.checks.add("group_action_preserves_buw", action_ok, "iota(g) f in B_{u,w} for every generator g", action_bad);
  rep.checks.add("frobenius_preserves_buw_fixed_points_rational", frob_ok,
                 "F-fixed points at each m equal |B_{u,w}(F_q)| = " + std::to_string(rational_count));

  auto factorisation = [&](const std::string& name) {
    std::optional<uint64_t> nc;
    bool ok = true, evidence = false;
    for (const auto& row : rep.rows) {
      if (*row.coxeter == 0) {
        ok = ok && row.count == 0;
        continue;
      }
      if (!row.n_comp || *row.n_comp == 0) {
        ok = false;
        continue;
      }
      evidence = true;
      if (nc && *nc != *row.n_comp) ok = false;
      nc = row.n_comp;
    }
    rep.checks.add(name, ok && evidence,
                   evidence ? "N = " + (nc ? std::to_string(*nc) : std::string("?")) + " across tested m"
                            : "no tested m with |Y_z(F_{q^m})| > 0",
                   Json{{"n_comp", nc ? Json(*nc) : Json(nullptr)}});
  };

  switch (rep.kind) {
    case CycleCase::I: {
      const Flag fl = explicit_case1_flag(base);
      const bool member = springer_membership(fl, base.u) && dl_membership(fl, w);
      rep.checks.add("explicit_flag_in_buw", member, tag);
      auto a = detail::moving_congruence(base, fl, 1);
      Json wit{{"flag", detail::flag_json(fl)}};
      if (a) wit["congruence_A"] = *a;
      rep.witnesses["explicit_flag"] = wit;
      rep.checks.add("explicit_flag_moved_by_congruence", a.has_value(), "k = iota(I + pi^{r-1} A) with k F != F", wit);
      bool nonempty = true;
      for (const auto& row : rep.rows) nonempty = nonempty && row.count > 0;
      rep.checks.add("buw_nonempty", nonempty, tag);
      break;
    }
    case CycleCase::II: {
      factorisation("count_factors_through_coxeter_variety");
      const Flag fl = explicit_case1_flag(base);
      auto a = detail::moving_congruence(base, fl, z);
      Json wit{{"flag", detail::flag_json(fl)}, {"pieces_from", z}};
      if (a) wit["congruence_A"] = *a;
      rep.witnesses["truncated_flag"] = wit;
      rep.checks.add("truncated_flag_moved_by_congruence", a.has_value(),
                     "pieces V_z, ..., V_N of the case (i) flag are not all stable", wit);
      std::optional<Json> moved;
      for (size_t i = 0; i < points.size() && !moved; ++i) {
        const FlagContext c = make_flag_context(n, r, p, k, rep.rows[i].m);
        for (const auto& f : points[i]) {
          if (auto b = detail::moving_congruence(c, f, 1)) {
            moved = Json{{"m", rep.rows[i].m}, {"flag", detail::flag_json(f)}, {"congruence_A", *b}};
            break;
          }
        }
      }
      if (moved) rep.witnesses["moved_point"] = *moved;
      rep.checks.add("point_moved_by_congruence", moved.has_value(), "some point of B_{u,w} is moved",
                     moved ? *moved : Json(nullptr));
      break;
    }
    case CycleCase::III: {
      factorisation("count_factors_through_coxeter_variety");
      bool trivial = true, evidence = false;
      Json bad = nullptr;
      for (size_t i = 0; i < points.size(); ++i) {
        if (rep.rows[i].m < 2) continue;
        evidence = true;
        const FlagContext c = make_flag_context(n, r, p, k, rep.rows[i].m);
        for (const auto& a : all_base_matrices(c)) {
          auto kk = congruence_element(c, a);
          for (const auto& f : points[i])
            if (!(f.apply(kk) == f)) {
              trivial = false;
              if (bad.is_null()) bad = Json{{"m", rep.rows[i].m}, {"flag", detail::flag_json(f)}, {"congruence_A", a}};
            }
        }
      }
      rep.checks.add("congruence_action_trivial", trivial && evidence,
                     evidence ? "every point fixed by every iota(I + pi^{r-1} A)" : "requires some m >= 2", bad);
      break;
    }
    case CycleCase::IV: {
      bool empty = true;
      for (const auto& row : rep.rows) empty = empty && row.count == 0;
      rep.checks.add("buw_empty", empty, tag + " at every tested m");
      break;
    }
  }
  return rep;
}

inline Json cycle_position_json(const CyclePositionReport& rep) {
  Json rows = Json::array();
  for (const auto& r : rep.rows) {
    Json j{{"m", r.m}, {"count", r.count}};
    j["brute"] = r.brute ? Json(*r.brute) : Json(nullptr);
    j["coxeter"] = r.coxeter ? Json(*r.coxeter) : Json(nullptr);
    j["n_comp"] = r.n_comp ? Json(*r.n_comp) : Json(nullptr);
    j["frobenius_fixed"] = r.frobenius_fixed;
    rows.push_back(j);
  }
  return Json{{"n", rep.n}, {"r", rep.r}, {"q", rep.q()}, {"z", rep.z}, {"case", cycle_case_name(rep.kind)}, {"rows", rows}};
}

/// CSV: n,r,q,z,m,count,case,N_comp (empty when undefined).
inline std::string cycle_position_csv(const CyclePositionReport& rep, bool header = true) {
  std::string s = header ? "n,r,q,z,m,count,case,N_comp\n" : "";
  for (const auto& r : rep.rows)
    s += std::to_string(rep.n) + "," + std::to_string(rep.r) + "," + std::to_string(rep.q()) + "," +
         std::to_string(rep.z) + "," + std::to_string(r.m) + "," + std::to_string(r.count) + "," +
         cycle_case_name(rep.kind) + "," + (r.n_comp ? std::to_string(*r.n_comp) : "") + "\n";
  return s;
}

}  // namespace twistkit
