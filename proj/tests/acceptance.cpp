// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.
// Usage: acceptance [output-dir]

#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>

#include "twistkit/cli/commands.hpp"

using namespace twistkit;
namespace fs = std::filesystem;

namespace {

struct Run {
  CommandOutput out;
  double seconds = 0;
  Json report;  // cached to_json()
  const Json& json() const { return report; }
};

struct Outcome {
  bool pass = true;
  std::string detail;
  void require(bool cond, const std::string& what) {
    if (!cond) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

RunConfig config(Family fam, uint32_t n, uint32_t p, uint32_t r) {
  RunConfig c;
  c.family = fam;
  c.n = n;
  c.p = p;
  c.r = r;
  c.seed = 0;
  c.threads = 0;
  return c;
}

using Command = std::function<CommandOutput(const RunConfig&)>;

struct Job {
  std::string key;
  Command cmd;
  RunConfig cfg;
};

std::vector<Job> jobs() {
  auto flags223 = config(Family::GL, 2, 3, 2);
  flags223.m_list = {1, 2, 3};
  flags223.z_list = {1, 2, 3, 4};
  flags223.xcheck = true;
  auto flags322 = config(Family::GL, 3, 2, 2);
  flags322.m_list = {2, 3};
  flags322.z_list = {2};
  flags322.xcheck = true;
  return {
      {"twist-gl3", cmd_twist, config(Family::GL, 2, 3, 2)},
      {"twist-sl3", cmd_twist, config(Family::SL, 2, 3, 2)},
      {"characters-sl3", cmd_characters, config(Family::SL, 2, 3, 2)},
      {"characters-sl5", cmd_characters, config(Family::SL, 2, 5, 2)},
      {"flags-223", cmd_flags, flags223},
      {"flags-322", cmd_flags, flags322},
  };
}

std::map<std::string, Run> run_all(const fs::path& dir) {
  std::map<std::string, Run> runs;
  for (const auto& j : jobs()) {
    Stopwatch sw;
    Run r;
    r.out = j.cmd(j.cfg);
    r.seconds = sw.seconds();
    r.report = r.out.report.to_json();
    r.out.write(dir / j.key);
    runs.emplace(j.key, std::move(r));
  }
  return runs;
}

bool check_passed(const Run& r, const std::string& name) {
  const Check* c = r.out.report.checks.find(name);
  return c && c->passed;
}

std::string secs(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1fs", s);
  return buf;
}

const Json& section(const Run& r, size_t z) {
  for (const auto& s : r.json()["data"]["sections"])
    if (s["z"] == z) return s;
  throw InvariantError("acceptance: missing flags section z = " + std::to_string(z));
}

// rows keyed by m
std::map<uint32_t, Json> rows_by_m(const Run& r, size_t z) {
  std::map<uint32_t, Json> out;
  for (const auto& s : r.json()["data"]["sections"])
    if (s["z"] == z)
      for (const auto& row : s["rows"]) out[row["m"].get<uint32_t>()] = row;
  return out;
}

Outcome criterion1(const std::map<std::string, Run>& runs) {
  Outcome o;
  const auto& r = runs.at("twist-gl3");
  auto j = r.json();
  size_t moved = 0;
  for (const auto& c : j["data"]["class_list"]) moved += c["nf"] != c["class"];
  o.require(j["data"]["group"]["order"] == 3888, "order != 3888");
  o.require(moved == 0, std::to_string(moved) + " classes moved");
  o.require(j["data"]["sh_order"] == 1, "sh_order != 1");
  o.require(r.out.report.passed(), "twist report has failing checks");
  o.require(r.seconds < 60, "runtime " + secs(r.seconds));
  o.detail = o.pass ? "GL_2(F_3[eps]): 3888 elements, all classes fixed, sh_order 1, " + secs(r.seconds) : o.detail;
  return o;
}

Outcome criterion2(const std::map<std::string, Run>& runs) {
  Outcome o;
  size_t total = 0;
  for (auto key : {"twist-sl3", "twist-gl3"}) {
    size_t bad = 0;
    for (const auto& c : runs.at(key).json()["data"]["class_list"]) {
      if (!c["semisimple"].get<bool>()) continue;
      ++total;
      bad += c["nf"] != c["class"];
    }
    o.require(bad == 0, std::string(key) + ": " + std::to_string(bad) + " semisimple classes moved");
  }
  o.detail = o.pass ? std::to_string(total) + " p'-classes over SL and GL, 0 exceptions" : o.detail;
  return o;
}

Outcome criterion3(const std::map<std::string, Run>& runs) {
  Outcome o;
  const auto& r = runs.at("twist-sl3");
  auto ct = ClassTable::build(GroupTable::build(r.out.report.config.spec()));
  const GroupTable& g = ct->group();
  auto list = r.json()["data"]["class_list"];
  size_t congruence = 0, residue_unipotent = 0, bad = 0;
  for (const auto& c : list) {
    const size_t cls = c["class"];
    const bool fixed = c["nf"] == c["class"];
    if (c["level"].get<size_t>() >= 1) {
      ++congruence;
      bad += !fixed;
    }
    if (!ct->is_unipotent(cls)) continue;
    bool meets_residue = false;
    for (auto x : ct->members(cls)) {
      auto m = g.element(x);
      bool level0 = true;
      for (size_t i = 0; i < 2 && level0; ++i)
        for (size_t jj = 0; jj < 2 && level0; ++jj) level0 = m.at(1, i, jj) == 0;
      if (level0) {
        meets_residue = true;
        break;
      }
    }
    if (meets_residue) {
      ++residue_unipotent;
      bad += !fixed;
    }
  }
  o.require(bad == 0, std::to_string(bad) + " exceptions");
  o.require(congruence > 0 && residue_unipotent > 0, "empty class family");
  o.detail = o.pass ? std::to_string(congruence) + " congruence and " + std::to_string(residue_unipotent) +
                          " residue unipotent classes fixed"
                    : o.detail;
  return o;
}

Outcome criterion4(const std::map<std::string, Run>& runs) {
  Outcome o;
  const auto& r = runs.at("twist-sl3");
  auto ls = r.json()["data"]["lang_soundness"];
  o.require(ls.contains("elements") && ls["elements"] == 648, "soundness sweep did not cover 648 elements");
  o.require(ls.contains("failures") && ls["failures"] == 0, "solver failures");
  o.require(check_passed(r, "lang_solver_sound"), "lang_solver_sound failed");
  o.require(check_passed(r, "lang_kernel_dimension") && ls["kernel_dim"] == 8, "kernel dimension != 8");
  o.require(r.seconds < 120, "runtime " + secs(r.seconds));
  o.detail = o.pass ? "648 elements sound, two solves agree, kernel dim 8, " + secs(r.seconds) : o.detail;
  return o;
}

Outcome criterion5(const std::map<std::string, Run>& runs) {
  Outcome o;
  const auto& r = runs.at("characters-sl3");
  auto j = r.json();
  uint64_t sq = 0;
  for (const auto& d : j["data"]["degrees"]) sq += d.get<uint64_t>() * d.get<uint64_t>();
  o.require(sq == 648, "sum of squared degrees " + std::to_string(sq));
  for (auto name : {"row_orthogonality_mod_ell", "column_orthogonality_mod_ell", "degrees_in_list",
                    "regular_nilpotent_primitive_count_4q", "induced_match_table_rows", "induced_count_4q"})
    o.require(check_passed(r, name), std::string(name) + " failed");
  o.require(j["data"]["sh_fixed_rows"]["regular_nilpotent"] == 12, "regular nilpotent primitive count != 12");
  o.require(j["data"]["clifford"]["induced"] == 12, "induced count != 12");
  o.require(r.seconds < 300, "runtime " + secs(r.seconds));
  o.detail = o.pass ? "orthogonality mod " + j["data"]["ell"].dump() + ", sum d^2 = 648, 12 nilpotent rows matched, " +
                          secs(r.seconds)
                    : o.detail;
  return o;
}

Outcome criterion6(const std::map<std::string, Run>& runs) {
  Outcome o;
  std::string info;
  for (auto [key, limit] : std::vector<std::pair<std::string, double>>{{"characters-sl3", 1800}, {"characters-sl5", 1800}}) {
    const auto& r = runs.at(key);
    for (auto name : {"sh_fixed_iff_regular_semisimple", "case1_degree_q2_pm_q_fixed", "case2_induced_sh_moved_at_xprime",
                      "nf_xprime_to_nonsquare_multiple"})
      o.require(check_passed(r, name), key + ": " + name + " failed");
    o.require(r.seconds < limit, key + " runtime " + secs(r.seconds));
    auto c = r.json()["data"]["sh_fixed_rows"];
    info += (info.empty() ? "" : ", ") + key.substr(11) + ": " + c["sh_fixed"].dump() + " fixed / " +
            c["sh_moved"].dump() + " moved (" + secs(r.seconds) + ")";
  }
  o.detail = o.pass ? info : o.detail;
  return o;
}

Outcome criterion7(const std::map<std::string, Run>& runs) {
  Outcome o;
  o.require(check_passed(runs.at("characters-sl3"), "orbit_invariance_under_sh"), "orbit changed under Sh");
  o.detail = o.pass ? "orbit of every irreducible preserved by Sh, 0 exceptions" : o.detail;
  return o;
}

Outcome criterion8(const std::map<std::string, Run>& runs) {
  Outcome o;
  const auto& r = runs.at("flags-223");
  for (const auto& c : r.out.report.checks.items()) o.require(c.passed, c.name + " failed");
  for (auto name : {"z1.buw_nonempty", "z1.explicit_flag_in_buw", "z1.explicit_flag_moved_by_congruence",
                    "z2.congruence_action_trivial", "z2.count_factors_through_coxeter_variety", "z3.buw_empty",
                    "z4.buw_empty"})
    o.require(check_passed(r, name), std::string(name) + " missing or failed");
  for (size_t z = 1; z <= 4; ++z) {
    o.require(check_passed(r, "z" + std::to_string(z) + ".brute_structured_agree"), "no brute cross-check at z" + std::to_string(z));
    auto rows = rows_by_m(r, z);
    for (uint32_t m : {1u, 2u}) {
      o.require(!rows.at(m)["brute"].is_null() && rows.at(m)["brute"] == rows.at(m)["count"],
                "brute mismatch at z" + std::to_string(z) + " m" + std::to_string(m));
      if (z >= 3) o.require(rows.at(m)["count"] == 0, "z" + std::to_string(z) + " nonempty");
    }
  }
  auto z2 = rows_by_m(r, 2);
  o.require(!z2.at(2)["n_comp"].is_null() && z2.at(2)["n_comp"] == z2.at(3)["n_comp"], "N differs between m = 2, 3");
  o.require(section(r, 2)["case"] == "iii", "z = 2 is not case (iii)");
  o.require(r.seconds < 600, "runtime " + secs(r.seconds));
  o.detail = o.pass ? "z1 count " + rows_by_m(r, 1).at(1)["count"].dump() + ", z2 counts " + z2.at(2)["count"].dump() +
                          "/" + z2.at(3)["count"].dump() + " = N*|Y_2| with N = " + z2.at(2)["n_comp"].dump() +
                          ", z3/z4 empty, brute agrees, " + secs(r.seconds)
                    : o.detail;
  return o;
}

Outcome criterion9(const std::map<std::string, Run>& runs) {
  Outcome o;
  const auto& r = runs.at("flags-322");
  for (const auto& c : r.out.report.checks.items()) o.require(c.passed, c.name + " failed");
  o.require(check_passed(r, "z2.point_moved_by_congruence"), "no moved witness point");
  o.require(check_passed(r, "z2.count_factors_through_coxeter_variety"), "factorisation failed");
  auto rows = rows_by_m(r, 2);
  o.require(rows.at(2)["count"].get<uint64_t>() > 0, "empty at m = 2");
  o.require(!rows.at(2)["n_comp"].is_null() && rows.at(2)["n_comp"] == rows.at(3)["n_comp"], "N differs between m = 2, 3");
  o.require(section(r, 2)["case"] == "ii", "z = 2 is not case (ii)");
  o.require(r.seconds < 1200, "runtime " + secs(r.seconds));
  o.detail = o.pass ? "counts " + rows.at(2)["count"].dump() + "/" + rows.at(3)["count"].dump() + " = N*|Y_2| with N = " +
                          rows.at(2)["n_comp"].dump() + ", congruence moves a point, " + secs(r.seconds)
                    : o.detail;
  return o;
}

Outcome criterion10(const std::map<std::string, Run>& first, const std::map<std::string, Run>& second) {
  Outcome o;
  for (const auto& [key, r] : first) {
    const auto& s = second.at(key);
    o.require(strip_timings(r.json()).dump() == strip_timings(s.json()).dump(), key + ": report differs");
    o.require(r.out.tables == s.out.tables, key + ": tables differ");
  }
  o.detail = o.pass ? std::to_string(first.size()) + " reports and their tables identical with timings removed" : o.detail;
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const fs::path out = argc > 1 ? fs::path(argv[1]) : fs::path("acceptance-out");
  std::map<std::string, Run> first, second;
  try {
    first = run_all(out / "run1");
  } catch (const std::exception& e) {
    std::cout << "acceptance: run aborted: " << e.what() << "\n";
    return 1;
  }
  std::vector<std::function<Outcome()>> criteria = {
      [&] { return criterion1(first); }, [&] { return criterion2(first); }, [&] { return criterion3(first); },
      [&] { return criterion4(first); }, [&] { return criterion5(first); }, [&] { return criterion6(first); },
      [&] { return criterion7(first); }, [&] { return criterion8(first); }, [&] { return criterion9(first); },
      [&] {
        second = run_all(out / "run2");
        return criterion10(first, second);
      },
  };
  int failures = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i]();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failures += !o.pass;
    std::cout << "criterion " << i + 1 << ": " << (o.pass ? "PASS" : "FAIL") << " - " << o.detail << std::endl;
  }
  std::cout << (failures ? "acceptance: FAIL (" + std::to_string(failures) + " criteria)" : "acceptance: PASS") << "\n";
  return failures ? 1 : 0;
}
