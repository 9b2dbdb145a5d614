#pragma once

#include <algorithm>
#include <span>
#include <vector>

#include "logforms/algebra/groebner.hpp"

namespace logforms {

/// Selects a minimal generating set of a graded submodule. Generators are
/// visited by increasing degree; one is kept iff it is not in the submodule
/// spanned by those already kept. With positive weights this is exactly a
/// basis of M/mM.
inline std::vector<FreeElement> minimal_generators(std::span<const FreeElement> gens,
                                                   const Grading& grading,
                                                   const MonomialOrder& order) {
  for (long w : grading.weights)
    if (w <= 0) throw PreconditionError("minimal_generators: weights must be positive");
  std::vector<std::pair<long, std::size_t>> by_degree;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (gens[i].is_zero()) continue;
    auto d = grading.homogeneous_degree(gens[i]);
    if (!d) throw PreconditionError("minimal_generators: generator is not homogeneous");
    by_degree.push_back({*d, i});
  }
  std::stable_sort(by_degree.begin(), by_degree.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<FreeElement> kept;
  if (by_degree.empty()) return kept;
  std::size_t rank = gens[0].rank(), nvars = gens[0].nvars();
  for (const auto& [deg, i] : by_degree) {
    if (!kept.empty() && groebner_basis(kept, order, rank, nvars).contains(gens[i])) continue;
    kept.push_back(gens[i]);
  }
  return kept;
}

}  // namespace logforms
