#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "twistkit/characters/orbit_map.hpp"

namespace twistkit {

/// A character induced from Z = {g : g mod pi = +-[[1,t],[0,1]]} of SL_2(F_q[eps]).
struct InducedCharacter {
  int orbit_index = 1;     // 1: psi of o1 = E_12, 2: psi of o2 = nu E_12
  uint32_t sign_exp = 0;   // a in sign^a
  uint32_t b = 0;          // field index of b in phi(Tr(b t))
  std::vector<Cyclotomic> exact;
  std::vector<uint64_t> mod;
  int64_t degree = 0;
  int matched_row = -1;
  std::string label() const {
    return "R[o" + std::to_string(orbit_index) + ",a=" + std::to_string(sign_exp) + ",b=" + std::to_string(b) + "]";
  }
};

struct CliffordResult {
  size_t z_order = 0;
  size_t commutator_order = 0;
  uint32_t nonsquare = 0;  // nu, the least non-square under the canonical element order
  std::vector<InducedCharacter> chars;
  CheckList checks;
};

/// Least non-square of F_q in index order.
inline uint32_t least_nonsquare(const SmallField& f) {
  std::vector<char> square(f.size(), 0);
  for (uint64_t x = 1; x < f.size(); ++x) square[f.mul(static_cast<uint16_t>(x), static_cast<uint16_t>(x))] = 1;
  for (uint64_t x = 1; x < f.size(); ++x)
    if (!square[x]) return static_cast<uint32_t>(x);
  throw PreconditionError("least_nonsquare: every element is a square (characteristic 2)");
}

namespace detail {

// Subgroup generated by `gens` (element indices), by closure under right multiplication.
inline std::vector<size_t> generated_subgroup(const GroupTable& g, const std::vector<size_t>& gens) {
  std::vector<char> seen(g.order(), 0);
  std::vector<size_t> out{g.identity_index()}, frontier{g.identity_index()};
  seen[g.identity_index()] = 1;
  std::vector<GroupTable::Mat> gm;
  for (auto s : gens) gm.push_back(g.element(s));
  while (!frontier.empty()) {
    auto x = g.element(frontier.back());
    frontier.pop_back();
    for (const auto& s : gm) {
      size_t y = g.require_index(x * s);
      if (!seen[y]) {
        seen[y] = 1;
        out.push_back(y);
        frontier.push_back(y);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

/// Constructs the 4q nilpotent primitive characters of SL_2(F_q[eps]) as
/// Ind_Z^G (lambda_0 psi~_i) and checks them against the character table.
inline CliffordResult clifford_nilpotent_chars(const OrbitMap& om) {
  const CharacterTable& tab = om.table();
  const ClassTable& ct = tab.classes();
  const GroupTable& g = ct.group();
  const auto& spec = g.spec();
  if (spec.family != Family::SL || spec.n != 2 || spec.r != 2 || spec.p == 2)
    throw PreconditionError("clifford_nilpotent_chars: requires SL_2 over F_q[eps] with q odd");
  const SmallField& f = g.field();
  const uint64_t q = spec.q(), e = tab.exponent();
  const auto& dp = tab.prime();
  const uint32_t p = spec.p;
  CliffordResult out;
  out.nonsquare = least_nonsquare(f);
  const uint16_t minus_one = f.neg(f.one());

  // Z and, per element, (s, t, Y(1,0)) with z = A0 (1 + eps Y), A0 = s [[1,t],[0,1]].
  struct ZData {
    size_t element;
    uint32_t s;   // 0 for +, 1 for -
    uint16_t t;
    uint16_t y10;
  };
  std::vector<ZData> z;
  std::vector<int> z_pos(g.order(), -1);
  for (size_t x = 0; x < g.order(); ++x) {
    auto m = g.element(x);
    const uint16_t d = m.at(0, 0, 0);
    if (m.at(0, 1, 0) != 0 || m.at(0, 1, 1) != d || (d != f.one() && d != minus_one)) continue;
    const uint32_t s = d == f.one() ? 0 : 1;
    const uint16_t t = f.mul(d, m.at(0, 0, 1));  // d^{-1} = d
    auto y = m.residue();
    auto a1 = m.level_block(1);
    auto yy = inverse(y) * a1;
    z_pos[x] = static_cast<int>(z.size());
    z.push_back({x, s, t, yy(1, 0)});
  }
  out.z_order = z.size();
  out.checks.add("z_order", z.size() == 2 * q * q * q * q,
                 std::to_string(z.size()) + " = 2 q^4 with q = " + std::to_string(q));

  // exponent of lambda(z) as a power of zeta_e
  auto lambda_exp = [&](const ZData& d, int oi, uint32_t a, uint16_t b) -> uint64_t {
    const uint16_t x = oi == 1 ? f.one() : static_cast<uint16_t>(out.nonsquare);
    const uint32_t psi = f.trace_to_prime(f.mul(x, d.y10));  // Tr tr(x E_12 Y) = Tr(x Y(1,0))
    const uint32_t phi = f.trace_to_prime(f.mul(b, d.t));
    return ((a * d.s) * (e / 2) + ((psi + phi) % p) * (e / p)) % e;
  };

  // Generators of Z (greedy), homomorphism checks on z * gen, and [Z, Z].
  std::vector<size_t> gens;
  {
    std::vector<size_t> current{g.identity_index()};
    for (const auto& d : z) {
      if (std::binary_search(current.begin(), current.end(), d.element)) continue;
      gens.push_back(d.element);
      current = detail::generated_subgroup(g, gens);
    }
    out.checks.add("z_generated", current.size() == z.size(), std::to_string(gens.size()) + " generators");
  }
  bool hom = true;
  Json hom_witness = nullptr;
  for (const auto& d : z)
    for (auto s : gens) {
      size_t prod = g.mul(d.element, s);
      if (z_pos[prod] < 0) {
        hom = false;
        hom_witness = Json{{"z", d.element}, {"gen", s}, {"reason", "Z not closed"}};
        continue;
      }
      const auto& dz = z[z_pos[prod]];
      const auto& ds = z[z_pos[s]];
      for (int oi = 1; oi <= 2; ++oi)
        for (uint32_t a = 0; a < 2; ++a)
          for (uint16_t b : {uint16_t{0}, uint16_t{1}}) {
            if (lambda_exp(dz, oi, a, b) != (lambda_exp(d, oi, a, b) + lambda_exp(ds, oi, a, b)) % e && hom) {
              hom = false;
              hom_witness = Json{{"z", d.element}, {"gen", s}, {"orbit", oi}, {"a", a}, {"b", b}};
            }
          }
    }
  out.checks.add("lambda_is_homomorphism", hom, "lambda(z s) = lambda(z) lambda(s) for all z in Z, s in a generating set",
                 hom_witness);

  {
    std::vector<size_t> comm;
    for (const auto& d : z)
      for (auto s : gens) {
        size_t c = g.mul(g.mul(d.element, s), g.mul(g.inverse(d.element), g.inverse(s)));
        comm.push_back(c);
      }
    std::sort(comm.begin(), comm.end());
    comm.erase(std::unique(comm.begin(), comm.end()), comm.end());
    auto h = detail::generated_subgroup(g, comm);
    // normal closure under the generators of Z
    while (true) {
      std::vector<size_t> extra;
      for (auto x : h)
        for (auto s : gens) {
          size_t y = g.conjugate(s, x);
          if (!std::binary_search(h.begin(), h.end(), y)) extra.push_back(y);
        }
      if (extra.empty()) break;
      comm.insert(comm.end(), extra.begin(), extra.end());
      h = detail::generated_subgroup(g, comm);
    }
    out.commutator_order = h.size();
    bool in_kernel = true;
    for (auto x : h) in_kernel = in_kernel && g.element(x).congruence_level() >= 1;
    out.checks.add("commutator_subgroup_in_congruence_kernel", in_kernel,
                   "|[Z,Z]| = " + std::to_string(h.size()) + ", |Z^ab| = " + std::to_string(z.size() / h.size()));
    bool trivial_on_comm = true;
    for (auto x : h)
      for (int oi = 1; oi <= 2; ++oi)
        trivial_on_comm = trivial_on_comm && lambda_exp(z[z_pos[x]], oi, 1, 1) == 0;
    out.checks.add("lambda_trivial_on_commutators", trivial_on_comm);
  }

  // Induction: Ind(g_c) = |G| / (|Z| |C_c|) sum_{y in Z cap C_c} lambda(y).
  const size_t h = ct.num_classes();
  const int64_t order = static_cast<int64_t>(g.order());
  bool integral = true;
  for (int oi = 1; oi <= 2; ++oi)
    for (uint32_t a = 0; a < 2; ++a)
      for (uint16_t b = 0; b < q; ++b) {
        InducedCharacter ic;
        ic.orbit_index = oi;
        ic.sign_exp = a;
        ic.b = b;
        std::vector<std::vector<int64_t>> counts(h, std::vector<int64_t>(e, 0));
        for (const auto& d : z) ++counts[ct.class_of(d.element)][lambda_exp(d, oi, a, b)];
        for (size_t c = 0; c < h; ++c) {
          auto sum = Cyclotomic::from_counts(e, counts[c]);
          const int64_t denom = static_cast<int64_t>(z.size() * ct.size(c));
          for (auto& v : sum.coeffs) {
            if ((v * order) % denom != 0) integral = false;
            v = v * order / denom;
          }
          ic.exact.push_back(sum);
          ic.mod.push_back(sum.mod_image(dp.ell, dp.theta));
        }
        ic.degree = ic.exact[ct.identity_class()].integer_value();
        ic.matched_row = tab.find_row(ic.exact);
        out.chars.push_back(std::move(ic));
      }
  out.checks.add("induced_values_integral", integral, "|G| sum / (|Z| |C|) has integer cyclotomic coordinates");

  const int64_t want_degree = static_cast<int64_t>((q * q - 1) / 2);
  bool degrees = true, norms = true, matched = true, primitive = true;
  Json first_bad = nullptr;
  for (const auto& ic : out.chars) {
    degrees = degrees && ic.degree == want_degree;
    norms = norms && tab.inner_mod(ic.mod, ic.mod) == 1;
    matched = matched && ic.matched_row >= 0;
    auto dec = om.decompose(ic.mod);
    bool prim = dec.single_orbit && om.lie().orbit_type(dec.orbit) == OrbitType::RegularNilpotent &&
                om.lie().orbit_label(dec.orbit) == "o" + std::to_string(ic.orbit_index);
    primitive = primitive && prim;
    if (first_bad.is_null() && !(ic.degree == want_degree && ic.matched_row >= 0 && prim)) first_bad = ic.label();
  }
  out.checks.add("induced_degree", degrees, "(q^2-1)/2 = " + std::to_string(want_degree), first_bad);
  out.checks.add("induced_irreducible", norms, "<R,R> = 1 mod ell");
  out.checks.add("induced_primitive_regular_nilpotent", primitive, "orbit is the o_i used for the extension");
  out.checks.add("induced_match_table_rows", matched, "exact cyclotomic equality with a Dixon row");
  std::set<std::vector<Cyclotomic>> distinct;
  for (const auto& ic : out.chars) distinct.insert(ic.exact);
  out.checks.add("induced_count_4q", distinct.size() == 4 * q,
                 std::to_string(distinct.size()) + " distinct, 4q = " + std::to_string(4 * q));

  // Frobenius reciprocity: <Ind lambda, chi>_G = |Z|^{-1} sum_z lambda(z) chi(z^{-1}) mod ell.
  bool frob = true;
  const uint64_t inv_z = dp.inv(z.size() % dp.ell);
  for (const auto& ic : out.chars)
    for (size_t i = 0; i < tab.size() && frob; ++i) {
      const auto& row = tab.row(i);
      uint64_t acc = 0;
      for (const auto& d : z) {
        uint64_t lam = dp.root(static_cast<int64_t>(lambda_exp(d, ic.orbit_index, ic.sign_exp, static_cast<uint16_t>(ic.b))));
        acc = (acc + mul_mod(lam, row.mod[ct.inverse_class(ct.class_of(d.element))], dp.ell)) % dp.ell;
      }
      frob = tab.inner_mod(ic.mod, row.mod) == mul_mod(acc, inv_z, dp.ell);
    }
  out.checks.add("frobenius_reciprocity_mod_ell", frob);
  return out;
}

}  // namespace twistkit
