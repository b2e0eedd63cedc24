#pragma once

#include <chrono>
#include <filesystem>
#include <fstream>
#include <string>

#include "twistkit/cli/config.hpp"
#include "twistkit/core/check.hpp"

namespace twistkit {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kArtifactVersion = "0.1.0";

/// Machine-readable outcome of one command. Everything except `timings` is a
/// function of the config alone.
struct Report {
  std::string command;
  RunConfig config;
  CheckList checks;
  Json data = Json::object();
  Json witnesses = Json::object();
  Json timings = Json::object();

  bool passed() const { return checks.all_passed(); }

  std::string filename() const {
    return command + "-" + family_name(config.family) + std::to_string(config.n) + "-q" + std::to_string(config.q()) +
           "-r" + std::to_string(config.r) + ".json";
  }

  Json to_json() const {
    Json cfg = Json::object();
    cfg["family"] = family_name(config.family);
    cfg["n"] = config.n;
    cfg["p"] = config.p;
    cfg["k"] = config.k;
    cfg["q"] = config.q();
    cfg["r"] = config.r;
    cfg["m_max"] = config.m_max;
    cfg["m_list"] = config.m_list;
    cfg["z_list"] = config.z_list;
    cfg["seed"] = config.seed;
    cfg["xcheck"] = config.xcheck;
    cfg["max_order"] = config.max_order;
    cfg["max_flags"] = config.max_flags;
    cfg["text"] = config.to_text();
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["artifact_version"] = kArtifactVersion;
    j["command"] = command;
    j["status"] = passed() ? "pass" : "fail";
    j["config"] = cfg;
    j["checks"] = checks.to_json();
    j["witnesses"] = witnesses;
    j["data"] = data;
    j["timings"] = timings;
    return j;
  }

  /// Writes the JSON report into dir; returns its path.
  std::filesystem::path write(const std::filesystem::path& dir) const {
    std::filesystem::create_directories(dir);
    auto path = dir / filename();
    std::ofstream(path) << to_json().dump(2) << "\n";
    return path;
  }
};

/// Report JSON without its timings, the form compared for reproducibility.
inline Json strip_timings(Json j) {
  j.erase("timings");
  return j;
}

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }
  double lap() {
    auto now = std::chrono::steady_clock::now();
    double s = std::chrono::duration<double>(now - start_).count();
    start_ = now;
    return s;
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

inline void write_text(const std::filesystem::path& path, const std::string& text) {
  std::filesystem::create_directories(path.parent_path());
  std::ofstream(path) << text;
}

}  // namespace twistkit
