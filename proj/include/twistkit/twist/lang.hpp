#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <vector>

#include "twistkit/algebra/poly_field.hpp"
#include "twistkit/algebra/semilinear.hpp"
#include "twistkit/groups/class_table.hpp"

namespace twistkit {

/// A solution h of frob_q(h) = h g over F_{q^m}[pi]/pi^r with m = order(g).
struct LangSolution {
  size_t g = 0;              // element index in the group table
  uint32_t m = 1;            // extension degree used
  TruncMat<PolyField> h;
  bool family_adjusted = false;  // SL determinant fix applied
  size_t kernel_dim = 0;     // F_p-dimension of the solution space
  size_t image = 0;          // element index of h g h^{-1}
};

/// How an invertible element is chosen from the solution space.
struct KernelPick {
  enum class Mode { kFirst, kRandom } mode = Mode::kFirst;
  uint64_t seed = 0;
  /// Reject this element (used to force a second, different solution).
  const TruncMat<PolyField>* avoid = nullptr;

  static KernelPick first() { return {}; }
  static KernelPick random(uint64_t seed, const TruncMat<PolyField>* avoid = nullptr) {
    return {Mode::kRandom, seed, avoid};
  }
};

/// Constructive Lang solver: linearises h^{-1} frob(h) = g as frob(h) = h g,
/// solves it over F_{q^{ord g}} and picks an invertible kernel element.
class LangSolver {
 public:
  static constexpr uint64_t kExhaustiveLimit = 1'000'000;
  static constexpr int kRandomRetries = 10'000;

  explicit LangSolver(std::shared_ptr<const ClassTable> ct) : ct_(std::move(ct)) {}

  const ClassTable& classes() const { return *ct_; }

  /// The extension field F_{q^m} (cached; safe for concurrent use).
  std::shared_ptr<const PolyField> extension(uint32_t m) const {
    std::lock_guard lock(mu_);
    auto it = fields_.find(m);
    if (it != fields_.end()) return it->second;
    const auto& spec = ct_->group().spec();
    auto f = std::make_shared<const PolyField>(field_make(spec.p, spec.k, m));
    fields_.emplace(m, f);
    return f;
  }

  TruncMat<PolyField> embed(const PolyField& ext, size_t element) const {
    const GroupTable& g = ct_->group();
    auto x = g.element(element);
    TruncMat<PolyField> out(ext, g.n(), g.r());
    for (size_t t = 0; t < x.raw().size(); ++t) out.raw()[t] = ext.embed_base(x.raw()[t]);
    return out;
  }

  /// Maps an F-fixed matrix back to the group; throws if it is not in G^F.
  size_t project(const TruncMat<PolyField>& x) const {
    const GroupTable& g = ct_->group();
    GroupTable::Mat out(g.field(), g.n(), g.r());
    for (size_t t = 0; t < x.raw().size(); ++t) {
      int32_t b = x.field().project_base(x.raw()[t]);
      if (b < 0) throw InvariantError("lang_solve: h g h^-1 has an entry outside F_q");
      out.raw()[t] = static_cast<uint16_t>(b);
    }
    return g.require_index(out);
  }

  LangSolution solve(size_t element, KernelPick pick = KernelPick::first()) const {
    const GroupTable& g = ct_->group();
    const auto& spec = g.spec();
    LangSolution sol;
    sol.g = element;
    sol.m = static_cast<uint32_t>(ct_->element_order(ct_->class_of(element)));
    auto ext = extension(sol.m);
    auto ge = embed(*ext, element);
    auto basis = solve_semilinear(ge);
    sol.kernel_dim = basis.size();
    // F(h) = h has the canonical solution h = 1
    if (element == g.identity_index() && pick.mode == KernelPick::Mode::kFirst)
      sol.h = TruncMat<PolyField>::identity(*ext, g.n(), g.r());
    else
      sol.h = pick_invertible(*ext, basis, pick);
    if (spec.family == Family::SL) {
      auto d = sol.h.det();
      // frob(det h) = det h det g = det h, so det h lies in F_q[pi]/pi^r
      if (!(d.frob() == d)) throw InvariantError("lang_solve: det h is not Frobenius-fixed");
      bool is_one = d[0] == ext->one();
      for (size_t l = 1; l < d.r() && is_one; ++l) is_one = ext->is_zero(d[l]);
      if (!is_one) {
        auto fix = TruncMat<PolyField>::identity(*ext, g.n(), g.r());
        fix.set_entry(0, 0, d.inverse());
        sol.h = fix * sol.h;
        sol.family_adjusted = true;
      }
    }
    if (!(sol.h.frob() == sol.h * ge)) throw InvariantError("lang_solve: F(h) != h g");
    sol.image = project(sol.h * ge * sol.h.inverse());
    return sol;
  }

  /// Class index of F(h) h^{-1} = h g h^{-1}.
  uint32_t image_class(const LangSolution& s) const { return ct_->class_of(s.image); }

 private:
  TruncMat<PolyField> combine(const PolyField& ext, const std::vector<TruncMat<PolyField>>& basis,
                              const std::vector<uint32_t>& coeffs) const {
    auto h = TruncMat<PolyField>(ext, basis.front().n(), basis.front().r());
    for (size_t b = 0; b < basis.size(); ++b) {
      if (!coeffs[b]) continue;
      for (size_t t = 0; t < h.raw().size(); ++t)
        h.raw()[t] = ext.add(h.raw()[t], ext.mul(ext.from_int(coeffs[b]), basis[b].raw()[t]));
    }
    return h;
  }

  TruncMat<PolyField> pick_invertible(const PolyField& ext, const std::vector<TruncMat<PolyField>>& basis,
                                      const KernelPick& pick) const {
    if (basis.empty()) throw InvariantError("lang_solve: empty solution space");
    const uint32_t p = ext.characteristic();
    const size_t dim = basis.size();
    double space = 1;
    for (size_t i = 0; i < dim; ++i) space *= p;
    auto acceptable = [&](const TruncMat<PolyField>& h) {
      if (!h.is_invertible()) return false;
      return pick.avoid == nullptr || !(h == *pick.avoid);
    };
    std::vector<uint32_t> coeffs(dim, 0);
    if (pick.mode == KernelPick::Mode::kFirst && space <= static_cast<double>(kExhaustiveLimit)) {
      // counter order, first basis vector least significant
      while (true) {
        size_t i = 0;
        while (i < dim && ++coeffs[i] == p) coeffs[i++] = 0;
        if (i == dim) break;
        auto h = combine(ext, basis, coeffs);
        if (acceptable(h)) return h;
      }
      throw InvariantError("lang_solve: no invertible element in the solution space");
    }
    std::mt19937_64 rng(pick.seed);
    for (int attempt = 0; attempt < kRandomRetries; ++attempt) {
      for (auto& c : coeffs) c = static_cast<uint32_t>(rng() % p);
      auto h = combine(ext, basis, coeffs);
      if (acceptable(h)) return h;
    }
    throw InvariantError("lang_solve: random search found no invertible element");
  }

  std::shared_ptr<const ClassTable> ct_;
  mutable std::mutex mu_;
  mutable std::map<uint32_t, std::shared_ptr<const PolyField>> fields_;
};

}  // namespace twistkit
