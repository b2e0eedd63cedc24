#pragma once

#include <charconv>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "twistkit/core/parallel.hpp"
#include "twistkit/groups/group_table.hpp"

namespace twistkit {

/// Parameters of one run. Text form is one `key:type = value` per line,
/// with types int, string, bool and list (comma-separated ints).
struct RunConfig {
  Family family = Family::SL;
  uint32_t n = 2, p = 3, k = 1, r = 2;
  uint32_t m_max = 6;
  std::vector<uint32_t> m_list{1, 2};
  std::vector<uint32_t> z_list;  // empty: every z in [1, nr]
  uint64_t seed = 0;
  uint32_t threads = 0;          // 0: available parallelism
  std::string out = "out";
  bool xcheck = false;
  uint64_t max_order = 10'000'000;
  uint64_t max_flags = 10'000'000;

  GroupSpec spec() const { return GroupSpec{family, n, p, k, r}; }
  uint64_t q() const { return ipow(p, k); }
  unsigned worker_count() const { return threads ? threads : default_threads(); }

  bool operator==(const RunConfig&) const = default;

  void validate() const {
    spec().validate();
    if (m_max == 0) throw PreconditionError("config: m_max must be positive");
    if (max_order == 0 || max_flags == 0) throw PreconditionError("config: guards must be positive");
    if (m_list.empty()) throw PreconditionError("config: m_list is empty");
    for (auto m : m_list)
      if (m == 0) throw PreconditionError("config: m_list entries must be positive");
    for (auto z : z_list)
      if (z == 0 || z > n * r) throw PreconditionError("config: z must lie in [1, nr]");
  }

  std::string to_text() const {
    std::ostringstream s;
    s << "family:string = " << family_name(family) << "\n"
      << "n:int = " << n << "\n"
      << "p:int = " << p << "\n"
      << "k:int = " << k << "\n"
      << "r:int = " << r << "\n"
      << "m_max:int = " << m_max << "\n"
      << "m_list:list = " << join(m_list) << "\n"
      << "z_list:list = " << join(z_list) << "\n"
      << "seed:int = " << seed << "\n"
      << "threads:int = " << threads << "\n"
      << "out:string = " << out << "\n"
      << "xcheck:bool = " << (xcheck ? "true" : "false") << "\n"
      << "max_order:int = " << max_order << "\n"
      << "max_flags:int = " << max_flags << "\n";
    return s.str();
  }

  /// Applies every `key:type = value` line of text; blank lines and '#' comments are skipped.
  void apply_text(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    for (size_t lineno = 1; std::getline(in, line); ++lineno) {
      const auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos || line[first] == '#') continue;
      const auto colon = line.find(':'), eq = line.find('=');
      if (colon == std::string::npos || eq == std::string::npos || colon > eq)
        throw PreconditionError("config line " + std::to_string(lineno) + ": expected key:type = value");
      const auto key = trim(line.substr(0, colon)), type = trim(line.substr(colon + 1, eq - colon - 1));
      const auto value = trim(line.substr(eq + 1));
      set(key, type, value, lineno);
    }
  }

  static RunConfig parse(const std::string& text) {
    RunConfig c;
    c.apply_text(text);
    return c;
  }

  static RunConfig load(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw PreconditionError("config: cannot read " + path);
    std::stringstream s;
    s << f.rdbuf();
    return parse(s.str());
  }

  static std::string join(const std::vector<uint32_t>& v) {
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s;
  }

  static std::vector<uint32_t> parse_list(const std::string& s) {
    std::vector<uint32_t> out;
    if (trim(s).empty()) return out;
    std::string item;
    std::istringstream in(s + ",");
    while (std::getline(in, item, ',')) {
      item = trim(item);
      if (item.empty()) throw PreconditionError("config: empty item in list '" + s + "'");
      out.push_back(static_cast<uint32_t>(parse_uint(item, UINT32_MAX)));
    }
    return out;
  }

  static uint64_t parse_uint(const std::string& s, uint64_t max = UINT64_MAX) {
    uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || v > max)
      throw PreconditionError("config: '" + s + "' is not a valid nonnegative integer");
    return v;
  }

 private:
  static std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r"), b = s.find_last_not_of(" \t\r");
    return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
  }

  void set(const std::string& key, const std::string& type, const std::string& value, size_t lineno) {
    auto expect = [&](const char* t) {
      if (type != t)
        throw PreconditionError("config line " + std::to_string(lineno) + ": key '" + key + "' has type " + t +
                                ", not " + type);
    };
    auto u32 = [&] { return static_cast<uint32_t>(parse_uint(value, UINT32_MAX)); };
    if (key == "family") {
      expect("string");
      if (value == "gl") family = Family::GL;
      else if (value == "sl") family = Family::SL;
      else throw PreconditionError("config: family must be gl or sl");
    } else if (key == "n") { expect("int"); n = u32(); }
    else if (key == "p") { expect("int"); p = u32(); }
    else if (key == "k") { expect("int"); k = u32(); }
    else if (key == "r") { expect("int"); r = u32(); }
    else if (key == "m_max") { expect("int"); m_max = u32(); }
    else if (key == "m_list") { expect("list"); m_list = parse_list(value); }
    else if (key == "z_list") { expect("list"); z_list = parse_list(value); }
    else if (key == "seed") { expect("int"); seed = parse_uint(value); }
    else if (key == "threads") { expect("int"); threads = u32(); }
    else if (key == "out") { expect("string"); out = value; }
    else if (key == "xcheck") {
      expect("bool");
      if (value != "true" && value != "false") throw PreconditionError("config: xcheck must be true or false");
      xcheck = value == "true";
    } else if (key == "max_order") { expect("int"); max_order = parse_uint(value); }
    else if (key == "max_flags") { expect("int"); max_flags = parse_uint(value); }
    else throw PreconditionError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
  }
};

/// Splits q = p^k with p prime; throws if q is not a prime power.
inline std::pair<uint32_t, uint32_t> split_prime_power(uint64_t q) {
  if (q < 2) throw PreconditionError("q must be a prime power >= 2");
  uint32_t p = 2;
  while (q % p != 0) ++p;
  uint32_t k = 0;
  uint64_t t = q;
  while (t % p == 0) {
    t /= p;
    ++k;
  }
  if (t != 1) throw PreconditionError("q = " + std::to_string(q) + " is not a prime power");
  return {p, k};
}

}  // namespace twistkit

