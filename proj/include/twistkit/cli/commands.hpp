#pragma once

#include <filesystem>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "twistkit/characters/invariance.hpp"
#include "twistkit/cli/report.hpp"
#include "twistkit/flags/cycle_positions.hpp"
#include "twistkit/groups/geometric.hpp"
#include "twistkit/twist/twist.hpp"

namespace twistkit {

/// Lang soundness is exhaustive; beyond this order it is skipped and noted.
inline constexpr size_t kSoundnessMaxOrder = 20'000;

struct CommandOutput {
  Report report;
  std::vector<std::pair<std::string, std::string>> tables;  // file name, CSV text

  void write(const std::filesystem::path& dir) const {
    report.write(dir);
    for (const auto& [name, text] : tables) write_text(dir / name, text);
  }
};

namespace detail {

inline std::string stem(const Report& r) {
  auto f = r.filename();
  return f.substr(0, f.size() - 5);
}

struct Pipeline {
  std::shared_ptr<const GroupTable> group;
  std::shared_ptr<const ClassTable> classes;
  std::shared_ptr<LangSolver> solver;
  TwistResult twist;
};

inline Pipeline build_pipeline(const RunConfig& cfg, Report& rep) {
  Stopwatch sw;
  Pipeline p;
  p.group = GroupTable::build(cfg.spec(), cfg.max_order);
  rep.timings["group"] = sw.lap();
  p.classes = ClassTable::build(p.group);
  rep.timings["classes"] = sw.lap();
  p.solver = std::make_shared<LangSolver>(p.classes);
  p.twist = compute_twist(*p.solver, TwistOptions{cfg.seed, cfg.worker_count()});
  rep.timings["twist"] = sw.lap();
  return p;
}

}  // namespace detail

/// Group, classes, n_F, geometric partition and the finite twist checks.
inline CommandOutput cmd_twist(const RunConfig& cfg) {
  cfg.validate();
  CommandOutput out;
  Report& rep = out.report;
  rep.command = "twist";
  rep.config = cfg;
  auto pl = detail::build_pipeline(cfg, rep);
  const GroupTable& g = *pl.group;
  const ClassTable& ct = *pl.classes;
  Stopwatch sw;

  rep.checks.add("group_order_matches_closed_form", static_cast<double>(g.order()) == cfg.spec().closed_form_order(),
                 std::to_string(g.order()) + " elements");
  auto geo = geometric_partition(ct, cfg.m_max, cfg.seed);
  rep.timings["geometric"] = sw.lap();
  auto s2 = verify_twist_properties(ct, pl.twist, &geo, cfg.seed);
  rep.checks.append(s2.checks);

  Json soundness;
  if (g.order() <= kSoundnessMaxOrder) {
    auto ls = lang_soundness(*pl.solver, cfg.seed, cfg.worker_count());
    const auto& spec = g.spec();
    const size_t expected = size_t{spec.n} * spec.n * spec.r * spec.k;
    rep.checks.add("lang_solver_sound", ls.failures == 0,
                   std::to_string(ls.elements - ls.failures) + " of " + std::to_string(ls.elements) +
                       " elements: F(h) = h g, det condition, h g h^{-1} rational, two solves agree",
                   ls.first_failure.is_null() ? Json(nullptr) : ls.first_failure);
    rep.checks.add("lang_kernel_dimension", ls.min_kernel_dim == expected && ls.max_kernel_dim == expected,
                   "F_p-dimension " + std::to_string(ls.min_kernel_dim) + ".." + std::to_string(ls.max_kernel_dim) +
                       ", expected n^2 r k = " + std::to_string(expected));
    soundness = Json{{"elements", ls.elements}, {"failures", ls.failures}, {"kernel_dim", ls.min_kernel_dim}};
    rep.timings["lang_soundness"] = sw.lap();
  } else {
    soundness = Json{{"skipped", "order exceeds " + std::to_string(kSoundnessMaxOrder)}};
  }

  Json classes = Json::array();
  std::ostringstream csv;
  csv << "class,rep_code,size,order,level,semisimple,unipotent,nf_image,geometric_block\n";
  for (size_t c = 0; c < ct.num_classes(); ++c) {
    classes.push_back(Json{{"class", c},
                           {"rep_code", g.code(ct.rep(c))},
                           {"size", ct.size(c)},
                           {"order", ct.element_order(c)},
                           {"level", ct.level(c)},
                           {"semisimple", ct.is_semisimple(c)},
                           {"unipotent", ct.is_unipotent(c)},
                           {"nf", pl.twist.nf[c]},
                           {"kernel_dim", pl.twist.data[c].kernel_dim},
                           {"extension_degree", pl.twist.data[c].m},
                           {"geometric_block", geo.block_of[c]}});
    csv << c << "," << g.code(ct.rep(c)) << "," << ct.size(c) << "," << ct.element_order(c) << "," << ct.level(c)
        << "," << ct.is_semisimple(c) << "," << ct.is_unipotent(c) << "," << pl.twist.nf[c] << "," << geo.block_of[c]
        << "\n";
  }
  Json merges = Json::array();
  for (const auto& m : geo.merges) merges.push_back(Json{{"a", m.a}, {"b", m.b}, {"m", m.m}});
  rep.data["group"] = Json{{"tag", cfg.spec().tag()}, {"order", g.order()}, {"classes", ct.num_classes()}};
  rep.data["nf"] = pl.twist.nf.image;
  rep.data["sh_order"] = s2.order;
  rep.data["cycle_lengths"] = s2.cycle_lengths;
  rep.data["moved"] = s2.moved;
  rep.data["geometric"] = Json{{"m_max", geo.m_max},
                               {"blocks", geo.blocks.size()},
                               {"merges", merges},
                               {"pairs_tested", geo.pairs_tested},
                               {"pairs_certified_apart", geo.pairs_certified_apart},
                               {"pairs_unresolved", geo.pairs_unresolved}};
  rep.data["lang_soundness"] = soundness;
  rep.data["class_list"] = classes;
  out.tables.emplace_back(detail::stem(rep) + "-classes.csv", csv.str());
  return out;
}

/// Character table, orbit map and, for SL_2 over F_q[eps] with q odd, the
/// nilpotent Clifford characters and which rows Sh fixes.
inline CommandOutput cmd_characters(const RunConfig& cfg) {
  cfg.validate();
  CommandOutput out;
  Report& rep = out.report;
  rep.command = "characters";
  rep.config = cfg;
  auto pl = detail::build_pipeline(cfg, rep);
  const ClassTable& ct = *pl.classes;
  Stopwatch sw;
  auto tab = CharacterTable::build(pl.classes, cfg.worker_count());
  rep.timings["table"] = sw.lap();
  rep.checks.append(tab->verify());
  rep.data["ell"] = tab->prime().ell;
  rep.data["exponent"] = tab->exponent();
  Json degrees = Json::array();
  for (size_t i = 0; i < tab->size(); ++i) degrees.push_back(tab->row(i).degree);
  rep.data["degrees"] = degrees;

  std::ostringstream table_csv;
  table_csv << "row,degree";
  for (size_t c = 0; c < ct.num_classes(); ++c) table_csv << ",c" << c;
  table_csv << "\n";
  for (size_t i = 0; i < tab->size(); ++i) {
    table_csv << i << "," << tab->row(i).degree;
    for (const auto& v : tab->row(i).exact) table_csv << ",\"" << v.to_string() << "\"";
    table_csv << "\n";
  }
  out.tables.emplace_back(detail::stem(rep) + "-table.csv", table_csv.str());

  const auto& spec = cfg.spec();
  const bool orbit_ok = spec.r >= 2 && !(spec.family == Family::SL && spec.n % spec.p == 0);
  if (orbit_ok) {
    OrbitMap om(tab);
    rep.checks.append(om.verify());
    auto p31 = verify_orbit_invariance(om, pl.twist.nf);
    rep.checks.append(p31.checks);
    rep.timings["orbit_map"] = sw.lap();
    const bool sl2 = spec.family == Family::SL && spec.n == 2 && spec.r == 2 && spec.p != 2;
    if (sl2) {
      auto cl = clifford_nilpotent_chars(om);
      rep.checks.append(cl.checks);
      auto c51 = verify_sh_fixed_rows(om, pl.twist.nf, cl);
      rep.checks.append(c51.checks);
      rep.timings["clifford"] = sw.lap();
      rep.data["clifford"] = Json{{"z_order", cl.z_order}, {"commutator_order", cl.commutator_order},
                                  {"nonsquare", cl.nonsquare}, {"induced", cl.chars.size()}};
      rep.data["sh_fixed_rows"] = Json{{"primitive", c51.primitive},
                                   {"sh_fixed", c51.sh_fixed},
                                   {"sh_moved", c51.sh_moved},
                                   {"regular_nilpotent", c51.regular_nilpotent},
                                   {"regular_semisimple", c51.regular_semisimple},
                                   {"xprime_class", c51.xprime_class},
                                   {"xprime_nu_class", c51.xprime_nu_class}};
      rep.data["rows"] = c51.rows;
      std::ostringstream rows_csv;
      rows_csv << "row,degree,orbit_type,orbit_label,clifford_e,primitive,sh_fixed\n";
      for (const auto& r : c51.rows)
        rows_csv << r["row"].get<size_t>() << "," << r["degree"].get<uint64_t>() << ","
                 << r["orbit_type"].get<std::string>() << "," << r["orbit_label"].get<std::string>() << ","
                 << r["clifford_e"].get<uint64_t>() << "," << r["primitive"].get<bool>() << ","
                 << r["sh_fixed"].get<bool>() << "\n";
      out.tables.emplace_back(detail::stem(rep) + "-rows.csv", rows_csv.str());
    } else {
      Json rows = Json::array();
      for (size_t i = 0; i < om.size(); ++i) {
        const auto& en = om.entry(i);
        rows.push_back(Json{{"row", i},
                            {"degree", tab->row(i).degree},
                            {"orbit_type", orbit_type_name(en.type)},
                            {"clifford_e", en.e},
                            {"primitive", en.primitive},
                            {"sh_fixed", row_sh_fixed(tab->row(i), pl.twist.nf)}});
      }
      rep.data["rows"] = rows;
    }
  }
  return out;
}

/// Cycle-position Springer/Deligne-Lusztig intersections for GL_n over
/// F_q[pi]/pi^r, one report section per z.
inline CommandOutput cmd_flags(const RunConfig& cfg) {
  cfg.validate();
  CommandOutput out;
  Report& rep = out.report;
  rep.command = "flags";
  rep.config = cfg;
  const size_t dim = size_t{cfg.n} * cfg.r;
  for (auto m : cfg.m_list)
    if (detail::projective_count(ipow(cfg.q(), m), dim) > std::min(cfg.max_flags, detail::kFlagGuard))
      throw GuardError("flags: line count at m = " + std::to_string(m) + " exceeds max_flags");
  std::vector<uint32_t> zs = cfg.z_list;
  if (zs.empty())
    for (uint32_t z = 1; z <= dim; ++z) zs.push_back(z);
  Json sections = Json::array();
  std::string csv;
  bool header = true;
  Stopwatch sw;
  for (auto z : zs) {
    auto t46 = cycle_position_report(cfg.n, cfg.r, cfg.p, cfg.k, z, cfg.m_list, {cfg.xcheck, cfg.worker_count()});
    for (const auto& c : t46.checks.items())
      rep.checks.add("z" + std::to_string(z) + "." + c.name, c.passed, c.detail, c.witness);
    sections.push_back(cycle_position_json(t46));
    rep.witnesses["z" + std::to_string(z)] = t46.witnesses;
    csv += cycle_position_csv(t46, header);
    header = false;
    rep.timings["z" + std::to_string(z)] = sw.lap();
  }
  rep.data["group"] = "gl";
  rep.data["sections"] = sections;
  out.tables.emplace_back(detail::stem(rep) + ".csv", csv);
  return out;
}

inline std::vector<CommandOutput> verify_all(const RunConfig& cfg) {
  std::vector<CommandOutput> out;
  out.push_back(cmd_twist(cfg));
  out.push_back(cmd_characters(cfg));
  out.push_back(cmd_flags(cfg));
  return out;
}

}  // namespace twistkit
