#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "twistkit/characters/clifford.hpp"
#include "twistkit/twist/twist.hpp"

namespace twistkit {

/// Row i of the table composed with n_F, as exact values and mod-ell images.
inline std::vector<Cyclotomic> shifted_exact(const CharacterRow& row, const TwistPermutation& nf) {
  return shintani(nf, row.exact);
}

inline bool row_sh_fixed(const CharacterRow& row, const TwistPermutation& nf) {
  return shifted_exact(row, nf) == row.exact;
}

/// The class of [[-1, x eps], [0, -1]] in SL_2(F_q[eps]).
inline uint32_t class_of_xprime(const ClassTable& ct, uint16_t x) {
  const GroupTable& g = ct.group();
  const SmallField& f = g.field();
  GroupTable::Mat m(f, 2, 2);
  m.at(0, 0, 0) = m.at(0, 1, 1) = f.neg(f.one());
  m.at(1, 0, 1) = x;
  return ct.class_of(g.require_index(m));
}

/// Possible degrees of irreducibles of SL_2(F_q[eps]) for odd q.
inline std::set<uint64_t> sl2_degree_list(uint64_t q) {
  return {1, q, q + 1, (q + 1) / 2, q - 1, (q - 1) / 2, q * q + q, q * q - q, (q * q - 1) / 2};
}

struct OrbitInvarianceReport {
  CheckList checks;
  size_t exceptions = 0;
};

/// Omega'(chi) = Omega'(Sh chi) for every row, checked by exact equality of
/// the restrictions to the deepest congruence layer and by decomposing the
/// shifted value vector into additive characters mod ell.
inline OrbitInvarianceReport verify_orbit_invariance(const OrbitMap& om, const TwistPermutation& nf) {
  OrbitInvarianceReport out;
  const CharacterTable& tab = om.table();
  const auto& lie = om.lie();
  Json witness = nullptr;
  size_t unmatched = 0;
  for (size_t i = 0; i < tab.size(); ++i) {
    const auto& row = tab.row(i);
    auto sh = shifted_exact(row, nf);
    bool restriction_equal = true;
    for (size_t y = 0; y < lie.size(); ++y) {
      auto c = om.kernel_class(y);
      restriction_equal = restriction_equal && sh[c] == row.exact[c];
    }
    auto dec = om.decompose(shintani(nf, row.mod));
    bool same_orbit = dec.single_orbit && dec.orbit == om.entry(i).orbit && dec.e == om.entry(i).e;
    if (tab.find_row(sh) < 0) ++unmatched;
    if (!(restriction_equal && same_orbit)) {
      ++out.exceptions;
      if (witness.is_null()) witness = Json{{"row", i}, {"restriction_equal", restriction_equal}, {"same_orbit", same_orbit}};
    }
  }
  out.checks.add("orbit_invariance_under_sh", out.exceptions == 0,
                 std::to_string(out.exceptions) + " exceptions over " + std::to_string(tab.size()) + " rows; " +
                     std::to_string(tab.size() - unmatched) + " rows have Sh(chi) irreducible",
                 witness);
  return out;
}

struct ShFixedReport {
  CheckList checks;
  size_t primitive = 0, sh_fixed = 0, sh_moved = 0;
  size_t regular_nilpotent = 0, regular_semisimple = 0;
  uint32_t xprime_class = 0, xprime_nu_class = 0;
  Json rows;  // per-row summary
};

/// A primitive irreducible is Sh-fixed iff its orbit is regular semisimple;
/// degree q^2 +- q rows are Sh-fixed; the Clifford-induced rows are moved and
/// differ from their twist at the class of X' = [[-1, eps], [0, -1]].
inline ShFixedReport verify_sh_fixed_rows(const OrbitMap& om, const TwistPermutation& nf, const CliffordResult& cl) {
  const CharacterTable& tab = om.table();
  const ClassTable& ct = tab.classes();
  const auto& spec = ct.group().spec();
  if (spec.family != Family::SL || spec.n != 2 || spec.r != 2 || spec.p == 2)
    throw PreconditionError("verify_sh_fixed_rows: requires SL_2 over F_q[eps] with q odd");
  const uint64_t q = spec.q();
  ShFixedReport out;
  out.rows = Json::array();
  Json equiv_bad = nullptr, case1_bad = nullptr;
  auto degrees = sl2_degree_list(q);
  bool degrees_ok = true;
  for (size_t i = 0; i < tab.size(); ++i) {
    const auto& row = tab.row(i);
    const auto& en = om.entry(i);
    const bool fixed = row_sh_fixed(row, nf);
    degrees_ok = degrees_ok && degrees.count(row.degree);
    if (en.primitive) {
      ++out.primitive;
      fixed ? ++out.sh_fixed : ++out.sh_moved;
      if (en.type == OrbitType::RegularNilpotent) ++out.regular_nilpotent;
      if (en.type == OrbitType::RegularSemisimple) ++out.regular_semisimple;
      if (fixed != (en.type == OrbitType::RegularSemisimple) && equiv_bad.is_null())
        equiv_bad = Json{{"row", i}, {"sh_fixed", fixed}, {"orbit_type", orbit_type_name(en.type)}};
    }
    if ((row.degree == q * q + q || row.degree == q * q - q) && !fixed && case1_bad.is_null())
      case1_bad = Json{{"row", i}, {"degree", row.degree}};
    out.rows.push_back(Json{{"row", i},
                            {"degree", row.degree},
                            {"orbit_type", orbit_type_name(en.type)},
                            {"orbit_label", en.label},
                            {"clifford_e", en.e},
                            {"primitive", en.primitive},
                            {"sh_fixed", fixed}});
  }
  out.checks.add("degrees_in_list", degrees_ok, "q = " + std::to_string(q));
  out.checks.add("sh_fixed_iff_regular_semisimple", equiv_bad.is_null(),
                 std::to_string(out.sh_fixed) + " fixed, " + std::to_string(out.sh_moved) + " moved of " +
                     std::to_string(out.primitive) + " primitive",
                 equiv_bad);
  out.checks.add("case1_degree_q2_pm_q_fixed", case1_bad.is_null(), {}, case1_bad);
  out.checks.add("regular_nilpotent_primitive_count_4q", out.regular_nilpotent == 4 * q,
                 std::to_string(out.regular_nilpotent) + " vs 4q = " + std::to_string(4 * q));

  const SmallField& f = ct.group().field();
  const uint16_t nu = static_cast<uint16_t>(cl.nonsquare);
  out.xprime_class = class_of_xprime(ct, f.one());
  out.xprime_nu_class = class_of_xprime(ct, nu);
  out.checks.add("nf_xprime_to_nonsquare_multiple", nf[out.xprime_class] == out.xprime_nu_class,
                 "n_F[X'] = [X' with x' eps multiplied by nu = " + std::to_string(nu) + "]",
                 Json{{"xprime_class", out.xprime_class}, {"image", nf[out.xprime_class]}, {"expected", out.xprime_nu_class}});

  Json witnesses = Json::array();
  bool case2 = !cl.chars.empty();
  for (const auto& ic : cl.chars) {
    const auto& a = ic.exact[out.xprime_class];
    const auto& b = ic.exact[nf[out.xprime_class]];
    const bool differs = !(a == b);
    case2 = case2 && differs && shintani(nf, ic.exact) != ic.exact;
    witnesses.push_back(Json{{"character", ic.label()},
                             {"row", ic.matched_row},
                             {"R(X')", a.to_string()},
                             {"ShR(X')", b.to_string()},
                             {"differs", differs}});
  }
  out.checks.add("case2_induced_sh_moved_at_xprime", case2, "Sh(R)(X') != R(X') for every induced R", witnesses);
  return out;
}

}  // namespace twistkit
