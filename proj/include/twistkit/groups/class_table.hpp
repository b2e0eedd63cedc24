#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <numeric>
#include <utility>
#include <vector>

#include "twistkit/groups/group_table.hpp"

namespace twistkit {

/// Jordan data of a class: the classes of the p'-part s and the p-part u of a representative.
struct JordanData {
  uint32_t s_class = 0;
  uint32_t u_class = 0;
  uint64_t s_order = 1;
  uint64_t u_order = 1;
  uint64_t s_exponent = 0;  // s = g^{s_exponent}
  uint64_t u_exponent = 0;  // u = g^{u_exponent}
};

/// Conjugacy classes of a GroupTable.
class ClassTable {
 public:
  static std::shared_ptr<const ClassTable> build(std::shared_ptr<const GroupTable> group) {
    auto ct = std::shared_ptr<ClassTable>(new ClassTable(std::move(group)));
    ct->partition();
    ct->compute_class_data();
    return ct;
  }

  const GroupTable& group() const { return *group_; }
  std::shared_ptr<const GroupTable> group_ptr() const { return group_; }
  size_t num_classes() const { return reps_.size(); }
  uint32_t class_of(size_t element) const { return class_of_[element]; }
  size_t rep(size_t c) const { return reps_[c]; }
  size_t size(size_t c) const { return members_[c].size(); }
  const std::vector<uint32_t>& members(size_t c) const { return members_[c]; }
  uint64_t element_order(size_t c) const { return powers_[c].size(); }
  /// Class of g^j for g in class c.
  uint32_t power_class(size_t c, uint64_t j) const { return powers_[c][j % powers_[c].size()]; }
  uint32_t inverse_class(size_t c) const { return power_class(c, element_order(c) - 1); }
  size_t level(size_t c) const { return levels_[c]; }
  const JordanData& jordan(size_t c) const { return jordan_[c]; }
  size_t centraliser_order(size_t c) const { return group_->order() / size(c); }
  bool is_semisimple(size_t c) const { return jordan_[c].u_order == 1; }
  bool is_unipotent(size_t c) const { return jordan_[c].s_order == 1; }
  uint32_t identity_class() const { return class_of_[group_->identity_index()]; }

 private:
  explicit ClassTable(std::shared_ptr<const GroupTable> g) : group_(std::move(g)) {}

  // Orbits of conjugation by the generating set; scanning elements in code
  // order makes each representative the minimal element of its class.
  void partition() {
    const GroupTable& g = *group_;
    const size_t order = g.order();
    constexpr uint32_t kUnset = UINT32_MAX;
    class_of_.assign(order, kUnset);
    std::vector<GroupTable::Mat> gens, gens_inv;
    for (auto s : g.generators()) {
      gens.push_back(g.element(s));
      gens_inv.push_back(gens.back().inverse());
    }
    for (size_t i = 0; i < order; ++i) {
      if (class_of_[i] != kUnset) continue;
      const auto c = static_cast<uint32_t>(reps_.size());
      reps_.push_back(i);
      members_.emplace_back();
      std::vector<size_t> stack{i};
      class_of_[i] = c;
      while (!stack.empty()) {
        size_t x = stack.back();
        stack.pop_back();
        members_[c].push_back(static_cast<uint32_t>(x));
        auto xm = g.element(x);
        for (size_t t = 0; t < gens.size(); ++t) {
          size_t y = g.require_index(gens[t] * xm * gens_inv[t]);
          if (class_of_[y] == kUnset) {
            class_of_[y] = c;
            stack.push_back(y);
          }
        }
      }
      std::sort(members_[c].begin(), members_[c].end());
    }
  }

  void compute_class_data() {
    const GroupTable& g = *group_;
    const uint64_t p = g.spec().p;
    const auto id = GroupTable::Mat::identity(g.field(), g.n(), g.r());
    for (size_t c = 0; c < reps_.size(); ++c) {
      auto x = g.element(reps_[c]);
      std::vector<uint32_t> pw{class_of_[g.identity_index()]};
      auto acc = x;
      while (!(acc == id)) {
        pw.push_back(class_of_[g.require_index(acc)]);
        acc = acc * x;
      }
      powers_.push_back(pw);
      levels_.push_back(x.congruence_level());
    }
    for (size_t c = 0; c < reps_.size(); ++c) {
      const uint64_t o = powers_[c].size();
      uint64_t pa = 1;
      while (o % (pa * p) == 0) pa *= p;
      const uint64_t t = o / pa;
      // s = g^{pa * alpha} with pa * alpha = 1 mod t; u = g^{t * beta} with t * beta = 1 mod pa
      uint64_t es = 0, eu = 0;
      for (uint64_t alpha = 0; alpha < t; ++alpha)
        if ((pa * alpha) % t == 1 % t) {
          es = (pa * alpha) % o;
          break;
        }
      for (uint64_t beta = 0; beta < pa; ++beta)
        if ((t * beta) % pa == 1 % pa) {
          eu = (t * beta) % o;
          break;
        }
      JordanData jd;
      jd.s_exponent = es;
      jd.u_exponent = eu;
      jd.s_class = power_class(c, es);
      jd.u_class = power_class(c, eu);
      jd.s_order = t;
      jd.u_order = pa;
      jordan_.push_back(jd);
    }
  }

  std::shared_ptr<const GroupTable> group_;
  std::vector<uint32_t> class_of_;
  std::vector<size_t> reps_;
  std::vector<std::vector<uint32_t>> members_;
  std::vector<std::vector<uint32_t>> powers_;
  std::vector<size_t> levels_;
  std::vector<JordanData> jordan_;
};

/// (s, u) element indices with g = s u = u s, s of order prime to p and u of p-power order.
inline std::pair<size_t, size_t> jordan_decomp(const ClassTable& ct, size_t element) {
  const GroupTable& g = ct.group();
  const auto& jd = ct.jordan(ct.class_of(element));
  auto x = g.element(element);
  return {g.require_index(x.pow(jd.s_exponent)), g.require_index(x.pow(jd.u_exponent))};
}

/// {h : hg = gh} as element indices, by a full scan.
inline std::vector<size_t> centraliser(const GroupTable& g, size_t element) {
  std::vector<size_t> out;
  auto x = g.element(element);
  for (size_t h = 0; h < g.order(); ++h) {
    auto hm = g.element(h);
    if (hm * x == x * hm) out.push_back(h);
  }
  return out;
}

}  // namespace twistkit
