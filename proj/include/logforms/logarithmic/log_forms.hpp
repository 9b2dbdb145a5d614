#pragma once

#include <vector>

#include "logforms/forms/exterior.hpp"
#include "logforms/logarithmic/saito.hpp"

namespace logforms {

/// Generators of h·Ω^k(log D) for a free divisor, one per k-subset I of the
/// basis fields. The coefficient of dx_J is ±det Θ[J^c, I^c] / unit, which is
/// h times the wedge of the dual forms indexed by I (adjugate formula).
inline std::vector<FreeElement> h_log_forms(const LogBasis& basis, std::size_t k) {
  std::size_t n = basis.size();
  if (k > n) throw PreconditionError("h_log_forms: degree out of range");
  if (basis.unit == 0) throw PreconditionError("h_log_forms: basis is not certified");
  ExteriorAlgebra ext(n);
  const auto& masks = ext.basis(k);
  auto complement = [n](ExteriorAlgebra::Mask m) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < n; ++i)
      if (!(m >> i & 1u)) out.push_back(i);
    return out;
  };
  auto index_sum = [](ExteriorAlgebra::Mask m) {
    std::size_t s = 0;
    for (; m; m &= m - 1) s += static_cast<std::size_t>(std::countr_zero(m));
    return s;
  };
  Rational inv = 1 / basis.unit;
  std::vector<FreeElement> out;
  for (auto mi : masks) {
    FreeElement g = ext.zero(k);
    auto cols = complement(mi);
    for (std::size_t j = 0; j < masks.size(); ++j) {
      auto rows = complement(masks[j]);
      Poly c = minor(basis.theta, rows, cols, n);
      if (c.is_zero()) continue;
      bool odd = (index_sum(mi) + index_sum(masks[j])) % 2 == 1;
      g[j] = (odd ? -inv : inv) * c;
    }
    out.push_back(std::move(g));
  }
  return out;
}

/// Evaluation ⟨ω, ξ⟩ of a 1-form on a vector field.
inline Poly pairing(const FreeElement& one_form, const FreeElement& field) {
  Poly r(one_form.nvars());
  for (std::size_t i = 0; i < one_form.rank(); ++i) r += one_form[i] * field[i];
  return r;
}

/// Checks ⟨g_i, ξ_j⟩ = h·δ_ij for the degree-one generators against the basis.
inline bool pairing_gate(const Divisor& d, const LogBasis& basis) {
  auto gens = h_log_forms(basis, 1);
  std::size_t n = basis.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Poly expect = (i == j) ? d.h : Poly(d.nvars());
      if (pairing(gens[i], basis.theta[j]) != expect) return false;
    }
  return true;
}

}  // namespace logforms
