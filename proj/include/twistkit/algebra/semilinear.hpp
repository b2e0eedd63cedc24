#pragma once

#include <vector>

#include "twistkit/algebra/linalg.hpp"
#include "twistkit/algebra/poly_field.hpp"
#include "twistkit/algebra/trunc.hpp"

namespace twistkit {

/// F_p-coordinates of M_n(F_{q^m}[pi]/pi^r): index ((l*n + i)*n + j)*d + t.
inline std::vector<uint32_t> semilinear_coords(const TruncMat<PolyField>& h) {
  const uint32_t d = h.field().degree();
  std::vector<uint32_t> v;
  v.reserve(h.raw().size() * d);
  for (const auto& e : h.raw())
    for (uint32_t t = 0; t < d; ++t) v.push_back(e[t]);
  return v;
}

inline TruncMat<PolyField> semilinear_from_coords(const PolyField& ext, size_t n, size_t r,
                                                  const std::vector<uint32_t>& v) {
  const uint32_t d = ext.degree();
  TruncMat<PolyField> h(ext, n, r);
  auto& raw = h.raw();
  for (size_t e = 0; e < raw.size(); ++e)
    for (uint32_t t = 0; t < d; ++t) raw[e][t] = static_cast<uint8_t>(v[e * d + t]);
  return h;
}

/// F_p-basis of {h : frob_q(h) = h g} in M_n(F_{q^m}[pi]/pi^r), by Gaussian
/// elimination of the F_p-linear map h -> frob_q(h) - h g.
inline std::vector<TruncMat<PolyField>> solve_semilinear(const TruncMat<PolyField>& g) {
  const PolyField& ext = g.field();
  const size_t n = g.n(), r = g.r();
  if (!g.is_invertible()) throw PreconditionError("solve_semilinear: g is not invertible");
  const uint32_t d = ext.degree();
  const size_t dim = n * n * r * d;
  PrimeField fp(ext.characteristic());
  Matrix<PrimeField> phi(fp, dim, dim);
  auto idx = [&](size_t l, size_t i, size_t j, size_t t) { return ((l * n + i) * n + j) * d + t; };

  std::vector<PolyField::Elem> xpow(d);
  xpow[0] = ext.one();
  if (d > 1) {
    PolyField::Elem x{};
    x[1] = 1;
    for (uint32_t t = 1; t < d; ++t) xpow[t] = ext.mul(xpow[t - 1], x);
  }
  for (size_t l = 0; l < r; ++l)
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j)
        for (uint32_t t = 0; t < d; ++t) {
          const size_t col = idx(l, i, j, t);
          const auto& fc = ext.frob_column(t);
          for (uint32_t s = 0; s < d; ++s) phi(idx(l, i, j, s), col) = fp.add(phi(idx(l, i, j, s), col), fc[s]);
          // (e g)_{l+lb}(i, c) = x^t g_{lb}(j, c)
          for (size_t lb = 0; l + lb < r; ++lb)
            for (size_t c = 0; c < n; ++c) {
              const auto& ge = g.at(lb, j, c);
              if (ext.is_zero(ge)) continue;
              auto prod = ext.mul(xpow[t], ge);
              for (uint32_t s = 0; s < d; ++s) {
                auto& cell = phi(idx(l + lb, i, c, s), col);
                cell = fp.sub(cell, prod[s]);
              }
            }
        }
  auto ker = kernel_basis(phi);
  std::vector<TruncMat<PolyField>> out;
  out.reserve(ker.size());
  for (auto& v : ker) out.push_back(semilinear_from_coords(ext, n, r, v));
  return out;
}

}  // namespace twistkit
