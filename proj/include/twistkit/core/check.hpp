#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace twistkit {

using Json = nlohmann::ordered_json;

/// Outcome of one verification; failures carry enough data to reproduce.
struct Check {
  std::string name;
  bool passed = true;
  std::string detail;
  Json witness;  // null when there is nothing to show
};

class CheckList {
 public:
  Check& add(std::string name, bool passed, std::string detail = {}, Json witness = nullptr) {
    checks_.push_back({std::move(name), passed, std::move(detail), std::move(witness)});
    return checks_.back();
  }
  void append(const CheckList& other) { checks_.insert(checks_.end(), other.checks_.begin(), other.checks_.end()); }
  bool all_passed() const {
    for (const auto& c : checks_)
      if (!c.passed) return false;
    return true;
  }
  const std::vector<Check>& items() const { return checks_; }
  const Check* find(const std::string& name) const {
    for (const auto& c : checks_)
      if (c.name == name) return &c;
    return nullptr;
  }

  Json to_json() const {
    Json out = Json::array();
    for (const auto& c : checks_) {
      Json j;
      j["name"] = c.name;
      j["status"] = c.passed ? "pass" : "fail";
      if (!c.detail.empty()) j["detail"] = c.detail;
      if (!c.witness.is_null()) j["witness"] = c.witness;
      out.push_back(std::move(j));
    }
    return out;
  }

 private:
  std::vector<Check> checks_;
};

}  // namespace twistkit
