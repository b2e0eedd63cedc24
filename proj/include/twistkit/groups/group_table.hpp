#pragma once

#include <cmath>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "twistkit/algebra/small_field.hpp"
#include "twistkit/algebra/trunc.hpp"

namespace twistkit {

enum class Family { GL, SL };

inline std::string family_name(Family f) { return f == Family::GL ? "gl" : "sl"; }

struct GroupSpec {
  Family family = Family::SL;
  uint32_t n = 2;
  uint32_t p = 3;
  uint32_t k = 1;
  uint32_t r = 2;

  uint64_t q() const { return ipow(p, k); }
  /// Short tag such as "sl2-q3-r2", used in report filenames.
  std::string tag() const {
    return family_name(family) + std::to_string(n) + "-q" + std::to_string(q()) + "-r" + std::to_string(r);
  }
  /// |GL_n(F_q)| q^{(r-1)n^2} or |SL_n(F_q)| q^{(r-1)(n^2-1)}, as a double to avoid overflow.
  double closed_form_order() const {
    const double qq = static_cast<double>(q());
    double gl = 1;
    for (uint32_t i = 0; i < n; ++i) gl *= std::pow(qq, n) - std::pow(qq, i);
    if (family == Family::GL) return gl * std::pow(qq, double(r - 1) * n * n);
    return gl / (qq - 1) * std::pow(qq, double(r - 1) * (double(n) * n - 1));
  }
  void validate() const {
    if (n < 1 || r < 1) throw PreconditionError("GroupSpec: n and r must be positive");
    if (!is_prime(p)) throw PreconditionError("GroupSpec: p must be prime");
    if (k < 1) throw PreconditionError("GroupSpec: k must be positive");
    if (q() > 256) throw PreconditionError("GroupSpec: q must be at most 256");
  }
  bool operator==(const GroupSpec&) const = default;
};

/// All elements of GL_n or SL_n over F_q[pi]/pi^r, sorted by canonical code.
///
/// The canonical encoding lists the entries of A_0, A_1, ..., A_{r-1} (each
/// row-major) as base-field indices; the code is that digit string read as a
/// base-q integer with the first digit most significant, so code order equals
/// lexicographic order of the canonical bytes.
class GroupTable {
 public:
  using Mat = TruncMat<SmallField>;
  static constexpr uint64_t kDefaultMaxOrder = 10'000'000;

  static std::shared_ptr<const GroupTable> build(const GroupSpec& spec, uint64_t max_order = kDefaultMaxOrder) {
    spec.validate();
    if (spec.closed_form_order() > static_cast<double>(max_order))
      throw GuardError("group_build: order of " + spec.tag() + " exceeds guard " + std::to_string(max_order));
    auto gt = std::shared_ptr<GroupTable>(new GroupTable(spec));
    gt->enumerate();
    gt->build_generators();
    return gt;
  }

  const GroupSpec& spec() const { return spec_; }
  const SmallField& field() const { return *field_; }
  size_t order() const { return codes_.size(); }
  size_t n() const { return spec_.n; }
  size_t r() const { return spec_.r; }
  size_t digits() const { return digits_; }

  Mat element(size_t i) const {
    Mat m(*field_, spec_.n, spec_.r);
    auto& raw = m.raw();
    for (size_t t = 0; t < digits_; ++t) raw[t] = data_[i * digits_ + t];
    return m;
  }
  uint64_t code(size_t i) const { return codes_[i]; }
  std::string canonical_bytes(size_t i) const {
    std::string s(digits_, '\0');
    for (size_t t = 0; t < digits_; ++t) s[t] = static_cast<char>(data_[i * digits_ + t]);
    return s;
  }

  uint64_t encode(const Mat& m) const {
    uint64_t c = 0;
    for (auto v : m.raw()) c = c * q_ + v;
    return c;
  }
  std::optional<size_t> index_of_code(uint64_t c) const {
    if (!direct_.empty()) {
      if (c >= direct_.size() || direct_[c] < 0) return std::nullopt;
      return static_cast<size_t>(direct_[c]);
    }
    auto it = hashed_.find(c);
    if (it == hashed_.end()) return std::nullopt;
    return it->second;
  }
  std::optional<size_t> index_of(const Mat& m) const { return index_of_code(encode(m)); }
  size_t require_index(const Mat& m) const {
    auto i = index_of(m);
    if (!i) throw InvariantError("GroupTable: matrix is not an element of " + spec_.tag());
    return *i;
  }

  size_t identity_index() const { return identity_; }
  size_t mul(size_t a, size_t b) const { return require_index(element(a) * element(b)); }
  size_t inverse(size_t a) const { return require_index(element(a).inverse()); }
  /// s x s^{-1}
  size_t conjugate(size_t s, size_t x) const {
    auto sm = element(s);
    return require_index(sm * element(x) * sm.inverse());
  }

  const std::vector<size_t>& generators() const { return generators_; }

  /// Elements whose higher coefficients A_1, ..., A_{r-1} vanish (the residue subgroup).
  std::vector<size_t> residue_subgroup() const {
    std::vector<size_t> out;
    const size_t block = spec_.n * spec_.n;
    for (size_t i = 0; i < order(); ++i) {
      bool ok = true;
      for (size_t t = block; t < digits_ && ok; ++t) ok = data_[i * digits_ + t] == 0;
      if (ok) out.push_back(i);
    }
    return out;
  }

  /// Elements of congruence level >= level.
  std::vector<size_t> congruence_subgroup(size_t level) const {
    std::vector<size_t> out;
    for (size_t i = 0; i < order(); ++i)
      if (element(i).congruence_level() >= level) out.push_back(i);
    return out;
  }

 private:
  explicit GroupTable(const GroupSpec& spec) : spec_(spec) {
    field_ = std::make_shared<SmallField>(field_make(spec.p, spec.k, 1));
    q_ = spec.q();
    digits_ = size_t{spec.n} * spec.n * spec.r;
  }

  void enumerate() {
    const size_t block = spec_.n * spec_.n;
    const double bits = static_cast<double>(digits_) * std::log2(static_cast<double>(q_));
    if (bits >= 63) throw GuardError("GroupTable: canonical code does not fit 64 bits");
    const uint64_t residue_count = ipow(q_, static_cast<uint32_t>(block));
    const uint64_t higher_count = ipow(q_, static_cast<uint32_t>(digits_ - block));
    const SmallField& f = *field_;

    std::vector<uint16_t> digit_buf(digits_);
    auto fill_digits = [&](uint64_t v, size_t offset, size_t len) {
      for (size_t t = len; t-- > 0;) {
        digit_buf[offset + t] = static_cast<uint16_t>(v % q_);
        v /= q_;
      }
    };
    Mat m(f, spec_.n, spec_.r);
    const size_t expected = static_cast<size_t>(std::llround(spec_.closed_form_order()));
    data_.reserve(expected * digits_);
    codes_.reserve(expected);
    for (uint64_t rv = 0; rv < residue_count; ++rv) {
      fill_digits(rv, 0, block);
      Matrix<SmallField> a0(f, spec_.n, spec_.n);
      for (size_t t = 0; t < block; ++t) a0(t / spec_.n, t % spec_.n) = digit_buf[t];
      auto d0 = determinant(a0);
      if (d0 == 0) continue;
      if (spec_.family == Family::SL && d0 != f.one()) continue;
      for (uint64_t hv = 0; hv < higher_count; ++hv) {
        fill_digits(hv, block, digits_ - block);
        for (size_t t = 0; t < digits_; ++t) m.raw()[t] = digit_buf[t];
        if (spec_.family == Family::SL && spec_.r > 1) {
          auto d = m.det();
          bool one = d[0] == f.one();
          for (size_t l = 1; l < spec_.r && one; ++l) one = d[l] == 0;
          if (!one) continue;
        }
        codes_.push_back(rv * higher_count + hv);
        data_.insert(data_.end(), digit_buf.begin(), digit_buf.end());
      }
    }
    if (codes_.size() != expected)
      throw InvariantError("group_build: enumerated " + std::to_string(codes_.size()) + " elements, closed form " +
                           std::to_string(expected));
    const uint64_t code_space = ipow(q_, static_cast<uint32_t>(digits_));
    if (code_space <= (uint64_t{1} << 25)) {
      direct_.assign(code_space, -1);
      for (size_t i = 0; i < codes_.size(); ++i) direct_[codes_[i]] = static_cast<int32_t>(i);
    } else {
      hashed_.reserve(codes_.size());
      for (size_t i = 0; i < codes_.size(); ++i) hashed_.emplace(codes_[i], i);
    }
    identity_ = require_index(Mat::identity(f, spec_.n, spec_.r));
  }

  // Elementary matrices e_ij(t pi^l) for t in an F_p-basis of F_q, plus for GL
  // the diagonal units diag(alpha, 1, ...) and diag(1 + t pi^l, 1, ...).
  void build_generators() {
    const SmallField& f = *field_;
    std::vector<SmallField::Elem> basis;
    for (uint32_t s = 0; s < spec_.k; ++s) basis.push_back(static_cast<SmallField::Elem>(ipow(spec_.p, s)));
    std::vector<Mat> gens;
    for (size_t i = 0; i < spec_.n; ++i)
      for (size_t j = 0; j < spec_.n; ++j) {
        if (i == j) continue;
        for (size_t l = 0; l < spec_.r; ++l)
          for (auto t : basis) {
            auto e = Mat::identity(f, spec_.n, spec_.r);
            e.at(l, i, j) = t;
            gens.push_back(e);
          }
      }
    if (spec_.family == Family::GL) {
      auto d = Mat::identity(f, spec_.n, spec_.r);
      d.at(0, 0, 0) = f.generator();
      gens.push_back(d);
      for (size_t l = 1; l < spec_.r; ++l)
        for (auto t : basis) {
          auto u = Mat::identity(f, spec_.n, spec_.r);
          u.at(l, 0, 0) = t;
          gens.push_back(u);
        }
    }
    for (auto& g : gens) generators_.push_back(require_index(g));
    // closure check: the generators must produce the whole group
    std::vector<char> seen(order(), 0);
    std::vector<size_t> frontier{identity_};
    seen[identity_] = 1;
    size_t count = 1;
    std::vector<Mat> gm;
    for (auto g : generators_) gm.push_back(element(g));
    while (!frontier.empty()) {
      size_t x = frontier.back();
      frontier.pop_back();
      auto xm = element(x);
      for (auto& g : gm) {
        size_t y = require_index(xm * g);
        if (!seen[y]) {
          seen[y] = 1;
          ++count;
          frontier.push_back(y);
        }
      }
    }
    if (count != order()) throw InvariantError("GroupTable: generating set does not generate " + spec_.tag());
  }

  GroupSpec spec_;
  std::shared_ptr<const SmallField> field_;
  uint64_t q_ = 2;
  size_t digits_ = 0;
  std::vector<uint16_t> data_;
  std::vector<uint64_t> codes_;
  std::vector<int32_t> direct_;
  std::unordered_map<uint64_t, size_t> hashed_;
  size_t identity_ = 0;
  std::vector<size_t> generators_;
};

}  // namespace twistkit
