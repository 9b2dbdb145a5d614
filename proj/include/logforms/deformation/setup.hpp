#pragma once

#include <optional>
#include <string>
#include <vector>

#include "logforms/forms/checked.hpp"

namespace logforms {

/// An admissible deformation i : V × S × T → W of a germ i₀ into the ambient
/// space of a free divisor E. Source variables are ordered as
/// (x_1..x_m, s_1..s_d, t_1..t_e); the t block spans a free extension.
struct DeformationSetup {
  Divisor e;
  LogBasis basis;
  InducingMap map;
  std::size_t ds = 0;
  std::size_t dt = 0;
  /// Source weights, one per source variable; nonnegative.
  std::optional<Weights> weights;

  std::size_t nsource() const noexcept { return map.source_vars.size(); }
  std::size_t nparams() const noexcept { return ds + dt; }
  std::size_t nbase() const noexcept { return nsource() - nparams(); }
  std::size_t s_index(std::size_t i) const noexcept { return nbase() + i; }
  std::size_t t_index(std::size_t i) const noexcept { return nbase() + ds + i; }

  /// Positive weights on every source variable: global counts are local.
  bool positively_graded() const {
    if (!weights) return false;
    for (long w : *weights)
      if (w <= 0) return false;
    return true;
  }
};

namespace detail {

inline std::vector<std::size_t> range(std::size_t lo, std::size_t hi) {
  std::vector<std::size_t> v;
  for (std::size_t i = lo; i < hi; ++i) v.push_back(i);
  return v;
}

/// Sets the variables from `keep` on to zero and drops them from the ring.
inline Poly restrict_poly(const Poly& p, std::size_t keep) {
  Poly r(keep);
  Poly z = p.set_zero(range(keep, p.nvars()));
  for (const auto& [mono, q] : z.terms()) {
    Monomial mm(keep);
    for (std::size_t i = 0; i < keep; ++i) mm.set(i, mono[i]);
    r.add_term(mm, q);
  }
  return r;
}

inline InducingMap truncate_source(const InducingMap& m, std::size_t keep) {
  InducingMap out{{m.source_vars.begin(), m.source_vars.begin() + static_cast<long>(keep)}, m.target_vars, {}};
  for (const auto& c : m.components) out.components.push_back(restrict_poly(c, keep));
  return out;
}

inline std::optional<Weights> head(const std::optional<Weights>& w, std::size_t keep) {
  if (!w) return std::nullopt;
  return Weights(w->begin(), w->begin() + static_cast<long>(keep));
}

}  // namespace detail

/// Checks a map against the weights of its target divisor: component j must
/// be weighted homogeneous of the target weight w_j (or zero).
inline void check_map_weights(const InducingMap& m, const Weights& source, const Weights& target) {
  if (source.size() != m.source_vars.size()) throw PreconditionError("map weights: count differs from source size");
  for (long w : source)
    if (w < 0) throw PreconditionError("map weights: negative weight");
  for (std::size_t j = 0; j < m.components.size(); ++j) {
    const auto& c = m.components[j];
    if (c.is_zero()) continue;
    auto d = c.homogeneous_degree(source);
    if (!d || *d != target[j])
      throw PreconditionError("map component " + m.target_vars[j] + " is not weighted homogeneous of the target weight");
  }
}

/// Validates the data of an admissible deformation. The pulled-back equation
/// of the total space must be reduced.
inline DeformationSetup make_setup(Divisor e, LogBasis basis, InducingMap map, std::size_t ds, std::size_t dt,
                                   std::optional<Weights> weights = std::nullopt) {
  if (basis.size() != e.nvars() || basis.unit == 0) throw PreconditionError("deformation: missing Saito certificate for E");
  if (map.components.size() != e.nvars())
    throw PreconditionError("inducing map: component count differs from target dimension");
  if (map.target_vars.size() != e.nvars()) throw PreconditionError("inducing map: target variables differ from E");
  std::size_t n = map.source_vars.size();
  if (ds + dt > n) throw PreconditionError("deformation: more parameters than source variables");
  for (const auto& c : map.components) {
    if (c.nvars() != n) throw PreconditionError("inducing map: component ring size mismatch");
    if (c.constant_term() != 0) throw PreconditionError("inducing map: germ does not send 0 to 0");
  }
  check_reduced(map.pull(e.h));
  if (weights) {
    // Without positive target weights only the pulled-back equation is checked.
    if (auto tw = effective_weights(e)) check_map_weights(map, *weights, *tw);
    else if (weights->size() != n || !map.pull(e.h).homogeneous_degree(*weights))
      throw PreconditionError("deformation: total space equation is not homogeneous for the source weights");
  }
  return DeformationSetup{std::move(e), std::move(basis), std::move(map), ds, dt, std::move(weights)};
}

/// i₀: the germ at parameter zero, on the base variables only.
inline InducingMap germ(const DeformationSetup& s) { return detail::truncate_source(s.map, s.nbase()); }

/// The family over S with the extension parameters set to zero.
inline InducingMap family(const DeformationSetup& s) { return detail::truncate_source(s.map, s.nbase() + s.ds); }

inline std::optional<Weights> germ_weights(const DeformationSetup& s) { return detail::head(s.weights, s.nbase()); }
inline std::optional<Weights> family_weights(const DeformationSetup& s) {
  return detail::head(s.weights, s.nbase() + s.ds);
}

/// The divisor h_E ∘ i on the full source space. Weights are attached only
/// when they are all positive.
inline Divisor total_divisor(const DeformationSetup& s) {
  std::optional<Weights> w;
  if (s.positively_graded()) w = s.weights;
  return make_divisor(s.map.source_vars, s.map.pull(s.e.h), w);
}

/// Saito certificate for the total space; fails if it is not free.
inline LogBasis certify_total(const DeformationSetup& s) {
  auto v = is_free(total_divisor(s));
  if (v.kind != FreenessVerdict::Kind::Free)
    throw PreconditionError("deformation: total space is not certified free (" + v.reason + ")");
  return std::move(*v.basis);
}

/// Rows of Θ for the given source variables (the parameter directions).
inline PolyMatrix theta_prime(const LogBasis& b, std::span<const std::size_t> rows) {
  PolyMatrix out;
  for (std::size_t j = 0; j < b.size(); ++j) {
    std::vector<Poly> col;
    for (auto r : rows) col.push_back(b.at(r, j));
    out.push_back(FreeElement(std::move(col)));
  }
  return out;
}

}  // namespace logforms
