#pragma once

#include <map>

#include "logforms/algebra/linalg.hpp"
#include "logforms/forms/checked.hpp"

namespace logforms {

/// Per-degree kernel dimension of ω ↦ α∧ω from src to dst. Both modules live
/// over the same ring; src forms use the first src.nforms differentials,
/// which are also the first ones of dst. Degrees refer to the src grading.
inline std::map<long, std::size_t> wedge_kernel_table(const CheckedFormsModule& src,
                                                      const CheckedFormsModule& dst,
                                                      const FreeElement& alpha, std::size_t alpha_degree,
                                                      long lo, long hi) {
  if (!src.presentation.grading) throw PreconditionError("wedge map: source needs weights");
  if (src.nvars() != dst.nvars() || src.nforms > dst.nforms || dst.k != src.k + alpha_degree)
    throw PreconditionError("wedge map: incompatible modules");
  ExteriorAlgebra se = src.algebra(), de = dst.algebra();
  auto sgb = src.basis();
  auto dgb = dst.basis();
  std::map<long, std::size_t> out;
  for (long ell = lo; ell <= hi; ++ell) {
    auto basis = standard_monomials_of_degree(sgb, *src.presentation.grading, ell);
    std::map<std::pair<Monomial, std::size_t>, std::size_t> pos;
    EchelonBasis e;
    for (const auto& [m, c] : basis) {
      FreeElement w = de.zero(src.k);
      w[de.index(se.basis(src.k)[c])] = Poly::monomial(m);
      FreeElement img = dgb.normal_form(de.wedge(alpha, alpha_degree, w, src.k));
      SparseRow row;
      for (std::size_t cc = 0; cc < img.rank(); ++cc)
        for (const auto& [mm, q] : img[cc].terms()) {
          auto key = std::make_pair(mm, cc);
          auto it = pos.find(key);
          if (it == pos.end()) it = pos.emplace(key, pos.size()).first;
          row[it->second] = q;
        }
      e.insert(std::move(row));
    }
    out[ell] = basis.size() - e.rank();
  }
  return out;
}

}  // namespace logforms
