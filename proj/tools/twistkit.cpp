#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "twistkit/cli/commands.hpp"

using namespace twistkit;

namespace {

enum Exit { kOk = 0, kChecksFailed = 1, kBadInput = 2, kGuard = 3, kInternal = 4 };

struct Overrides {
  std::string config;
  std::string family;
  uint32_t n = 0, p = 0, k = 0, r = 0, m_max = 0, threads = 0;
  uint64_t q = 0, seed = 0;
  std::string m_list, z_list, out;
  bool xcheck = false;
};

void add_options(CLI::App* app, Overrides& o) {
  app->add_option("--config", o.config, "config file of key:type = value lines; flags override it");
  app->add_option("--family", o.family, "gl or sl")->check(CLI::IsMember({"gl", "sl"}));
  app->add_option("--n", o.n, "matrix size");
  app->add_option("--p", o.p, "characteristic");
  app->add_option("--k", o.k, "q = p^k");
  app->add_option("--q", o.q, "field size, split into p and k");
  app->add_option("--r", o.r, "truncation level of F_q[pi]/pi^r");
  app->add_option("--m-max", o.m_max, "largest extension degree for the geometric partition");
  app->add_option("--m-list", o.m_list, "extension degrees for flag counts, comma separated");
  app->add_option("--z", o.z_list, "cycle lengths z, comma separated");
  app->add_option("--seed", o.seed, "seed for randomised fallbacks");
  app->add_option("--threads", o.threads, "worker cap, 0 for all cores");
  app->add_option("--out", o.out, "report directory");
  app->add_flag("--xcheck", o.xcheck, "cross-check structured against brute-force flag enumeration");
}

RunConfig resolve(CLI::App* app, const Overrides& o) {
  RunConfig c = o.config.empty() ? RunConfig{} : RunConfig::load(o.config);
  auto given = [&](const char* name) { return app->count(name) > 0; };
  if (given("--family")) c.family = o.family == "gl" ? Family::GL : Family::SL;
  if (given("--n")) c.n = o.n;
  if (given("--p")) c.p = o.p;
  if (given("--k")) c.k = o.k;
  if (given("--q")) {
    auto [p, k] = split_prime_power(o.q);
    if (given("--p") && o.p != p) throw PreconditionError("--p disagrees with --q");
    if (given("--k") && o.k != k) throw PreconditionError("--k " + std::to_string(o.k) + " disagrees with --q " + std::to_string(o.q));
    c.p = p;
    c.k = k;
  }
  if (given("--r")) c.r = o.r;
  if (given("--m-max")) c.m_max = o.m_max;
  if (given("--m-list")) c.m_list = RunConfig::parse_list(o.m_list);
  if (given("--z")) c.z_list = RunConfig::parse_list(o.z_list);
  if (given("--seed")) c.seed = o.seed;
  if (given("--threads")) c.threads = o.threads;
  if (given("--out")) c.out = o.out;
  if (given("--xcheck")) c.xcheck = o.xcheck;
  c.validate();
  return c;
}

bool emit(const CommandOutput& co, const std::string& dir) {
  co.write(dir);
  const auto& rep = co.report;
  size_t passed = 0;
  for (const auto& c : rep.checks.items()) passed += c.passed;
  std::cout << rep.command << " " << family_name(rep.config.family) << rep.config.n << " q=" << rep.config.q()
            << " r=" << rep.config.r << ": " << (rep.passed() ? "PASS" : "FAIL") << " (" << passed << "/"
            << rep.checks.items().size() << " checks) -> " << (std::filesystem::path(dir) / rep.filename()).string()
            << "\n";
  for (const auto& c : rep.checks.items())
    if (!c.passed) std::cout << "  failed: " << c.name << (c.detail.empty() ? "" : ": " + c.detail) << "\n";
  return rep.passed();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"twistkit: twisting operator, character and flag-variety verifications"};
  app.require_subcommand(1);
  Overrides o;
  std::vector<std::pair<CLI::App*, std::string>> subs;
  const std::pair<const char*, const char*> commands[] = {
      {"twist", "class permutation n_F, Lang solver and twist checks"},
      {"characters", "character table, orbit map and twist invariance"},
      {"flags", "Springer fibre meets Deligne-Lusztig variety, cycle positions"},
      {"verify-all", "run twist, characters and flags"},
  };
  for (auto [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    add_options(sub, o);
    subs.emplace_back(sub, name);
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kBadInput;
  }
  try {
    for (auto& [sub, name] : subs) {
      if (!sub->parsed()) continue;
      RunConfig cfg = resolve(sub, o);
      bool ok = true;
      if (name == "twist") ok = emit(cmd_twist(cfg), cfg.out);
      else if (name == "characters") ok = emit(cmd_characters(cfg), cfg.out);
      else if (name == "flags") ok = emit(cmd_flags(cfg), cfg.out);
      else
        for (const auto& co : verify_all(cfg)) ok = emit(co, cfg.out) && ok;
      return ok ? kOk : kChecksFailed;
    }
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const GuardError& e) {
    std::cerr << "guard: " << e.what() << "\n";
    return kGuard;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kBadInput;
}
