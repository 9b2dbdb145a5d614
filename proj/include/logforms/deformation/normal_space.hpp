#pragma once

#include <map>
#include <optional>
#include <vector>

#include "logforms/algebra/linalg.hpp"
#include "logforms/deformation/setup.hpp"

namespace logforms {

/// A quotient module with its dimension. `local` records whether the count
/// is a statement about the germ at 0 (positive grading) or only global.
struct NormalSpace {
  ModulePresentation presentation;
  Dimension dim;
  bool local = false;
};

namespace detail {

inline bool positive(const std::optional<Weights>& w) {
  if (!w) return false;
  for (long x : *w)
    if (x <= 0) return false;
  return true;
}

inline MonomialOrder order_for(const std::optional<Weights>& w, std::size_t n) {
  return positive(w) ? MonomialOrder::wdegrevlex(*w) : MonomialOrder::degrevlex(n);
}

/// Attaches the grading when every relation is homogeneous for it.
inline void attach_grading(ModulePresentation& p, Grading g) {
  for (const auto& r : p.relations)
    if (!r.is_zero() && !g.homogeneous_degree(r)) return;
  p.grading = std::move(g);
}

inline NormalSpace finish_space(ModulePresentation p, const std::optional<Weights>& w,
                                const std::vector<long>& shifts) {
  NormalSpace out;
  if (positive(w)) attach_grading(p, Grading{*w, shifts});
  p.validate();
  out.local = p.grading.has_value();
  out.dim = quotient_dimension(p, order_for(w, p.nvars));
  out.presentation = std::move(p);
  return out;
}

/// Columns ∂i/∂x_k of the Jacobian of a map, one per listed source variable.
inline std::vector<FreeElement> jacobian_columns(const InducingMap& m, std::span<const std::size_t> vars) {
  std::vector<FreeElement> out;
  for (auto k : vars) {
    std::vector<Poly> col;
    for (const auto& c : m.components) col.push_back(c.derivative(k));
    out.push_back(FreeElement(std::move(col)));
  }
  return out;
}

/// ξ_j ∘ i for the fields of a log basis of E.
inline std::vector<FreeElement> pulled_fields(const LogBasis& b, const InducingMap& m) {
  std::vector<FreeElement> out;
  for (const auto& xi : b.theta) out.push_back(xi.compose(m.components));
  return out;
}

inline std::vector<long> target_shifts(const Divisor& e) {
  std::vector<long> s;
  if (auto w = effective_weights(e))
    for (long x : *w) s.push_back(-x);
  return s;
}

}  // namespace detail

/// θ(i₀) / (t i₀(θ_V) + i₀* Der(log E)).
inline NormalSpace kev_normal_space(const Divisor& e, const LogBasis& be, const InducingMap& i0,
                                    const std::optional<Weights>& source_weights = std::nullopt) {
  if (be.size() != e.nvars() || be.unit == 0) throw PreconditionError("kev: missing Saito certificate for E");
  std::size_t m = i0.source_vars.size();
  ModulePresentation p;
  p.rank = e.nvars();
  p.nvars = m;
  auto all = detail::range(0, m);
  for (auto& c : detail::jacobian_columns(i0, all))
    if (!c.is_zero()) p.relations.push_back(std::move(c));
  for (auto& c : detail::pulled_fields(be, i0))
    if (!c.is_zero()) p.relations.push_back(std::move(c));
  return detail::finish_space(std::move(p), source_weights, detail::target_shifts(e));
}

inline NormalSpace kev_normal_space(const DeformationSetup& s) {
  return kev_normal_space(s.e, s.basis, germ(s), germ_weights(s));
}

/// Membership data for the sequence
/// 0 → Der(log D₀) → θ_V → θ(i₀)/i₀*Der(log E) → N K_{E,e} i₀ → 0.
struct SequenceCheck {
  /// i₀*Der(log E) is free on the pulled-back basis (no syzygies).
  bool pullback_free = false;
  /// The kernel of θ_V → θ(i₀)/i₀*Der(log E) equals Der(log D₀).
  bool kernel_is_derlog = false;
  /// The cokernel presentation coincides with the K_{E,e} normal space.
  bool cokernel_is_normal_space = false;

  bool exact() const noexcept { return pullback_free && kernel_is_derlog && cokernel_is_normal_space; }
};

inline SequenceCheck sequence_check(const Divisor& e, const LogBasis& be, const InducingMap& i0,
                                    const std::optional<Weights>& source_weights = std::nullopt) {
  std::size_t m = i0.source_vars.size(), n = e.nvars();
  auto order = detail::order_for(source_weights, m);
  auto pulled = detail::pulled_fields(be, i0);
  auto jac = detail::jacobian_columns(i0, detail::range(0, m));
  SequenceCheck out;
  out.pullback_free = syzygy_module(pulled, order).empty();

  // Kernel: η ∈ θ_V with t i₀(η) ∈ i₀*Der(log E), read from syzygies of [jac | pulled].
  std::vector<FreeElement> cols = jac;
  for (const auto& c : pulled) cols.push_back(c);
  std::vector<FreeElement> kernel;
  for (const auto& s : syzygy_module(cols, order)) {
    FreeElement eta(std::vector<Poly>(s.entries().begin(), s.entries().begin() + static_cast<long>(m)));
    if (!eta.is_zero()) kernel.push_back(std::move(eta));
  }
  Divisor d0 = make_divisor(i0.source_vars, i0.pull(e.h), detail::positive(source_weights) ? source_weights : std::nullopt);
  auto der = fields_of(derlog(d0));
  out.kernel_is_derlog = same_submodule(kernel, der, m, m, order);

  // Cokernel: θ(i₀) modulo the image of θ_V and i₀*Der(log E).
  auto direct = kev_normal_space(e, be, i0, source_weights);
  std::vector<FreeElement> image = jac;
  for (const auto& c : pulled) image.push_back(c);
  out.cokernel_is_normal_space =
      same_submodule(image, direct.presentation.relations, n, m, order);
  return out;
}

/// The infinitesimal versality criterion: t i₀(θ_V) + i₀*Der(log E) plus the
/// constant span of the initial velocities ∂i/∂s_j|_{s=0} is all of θ(i₀).
struct VersalityCheck {
  bool versal = false;
  /// versal and d = dim_C N K_{E,e} i₀.
  bool miniversal = false;
};

inline VersalityCheck versality_check(const DeformationSetup& s) {
  auto n0 = kev_normal_space(s);
  VersalityCheck out;
  if (!n0.dim.is_finite()) return out;
  std::size_t m = s.nbase();
  auto order = detail::order_for(germ_weights(s), m);
  auto gb = groebner_basis(n0.presentation.relations, order, n0.presentation.rank, m);
  auto sm = *standard_monomials(gb);
  // Each velocity is reduced to the standard-monomial basis of the quotient.
  EchelonBasis span;
  std::map<std::pair<Monomial, std::size_t>, std::size_t> pos;
  for (std::size_t i = 0; i < sm.size(); ++i) pos[sm[i]] = i;
  for (std::size_t j = 0; j < s.ds; ++j) {
    std::vector<Poly> v;
    for (const auto& c : s.map.components) v.push_back(detail::restrict_poly(c.derivative(s.s_index(j)), m));
    FreeElement nf = gb.normal_form(FreeElement(std::move(v)));
    SparseRow row;
    for (std::size_t c = 0; c < nf.rank(); ++c)
      for (const auto& [mm, q] : nf[c].terms()) row[pos.at({mm, c})] = q;
    span.insert(std::move(row));
  }
  out.versal = span.rank() == sm.size();
  out.miniversal = out.versal && s.ds == sm.size();
  return out;
}

}  // namespace logforms
