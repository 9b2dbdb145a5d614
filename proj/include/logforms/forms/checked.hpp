#pragma once

#include <optional>
#include <string>
#include <vector>

#include "logforms/algebra/dimension.hpp"
#include "logforms/logarithmic/log_forms.hpp"

namespace logforms {

/// Presentation of Ω̌^k as a quotient of k-forms. The ring variables are
/// ordered so that the first `nforms` of them carry differentials; any
/// remaining variables are parameters whose differentials have been divided
/// out (relative forms).
struct CheckedFormsModule {
  std::size_t k = 0;
  std::size_t nforms = 0;
  std::vector<std::string> vars;
  Poly h;
  std::optional<Weights> weights;
  ModulePresentation presentation;

  std::size_t nvars() const noexcept { return vars.size(); }
  ExteriorAlgebra algebra() const { return ExteriorAlgebra(nforms, nvars()); }

  bool positively_graded() const {
    if (!weights) return false;
    for (long w : *weights)
      if (w <= 0) return false;
    return true;
  }

  MonomialOrder order() const {
    return positively_graded() ? MonomialOrder::wdegrevlex(*weights) : MonomialOrder::degrevlex(nvars());
  }

  GroebnerBasis basis() const {
    return groebner_basis(presentation.relations, order(), presentation.rank, nvars());
  }
};

/// A map from a source space to the ambient space of a free divisor.
struct InducingMap {
  std::vector<std::string> source_vars;
  std::vector<std::string> target_vars;
  std::vector<Poly> components;

  Poly pull(const Poly& f) const { return f.compose(components); }
};

namespace detail {

inline std::optional<Grading> forms_grading(const std::optional<Weights>& w, std::size_t nforms,
                                            std::size_t k) {
  if (!w) return std::nullopt;
  Weights head(w->begin(), w->begin() + static_cast<long>(nforms));
  Grading g = ExteriorAlgebra(nforms).grading(k, head);
  g.weights = *w;
  return g;
}

/// Drops the terms of a k-form on `full` that involve a differential beyond
/// the first `keep` variables.
inline FreeElement project_forms(const FreeElement& w, std::size_t k, const ExteriorAlgebra& full,
                                 const ExteriorAlgebra& kept) {
  FreeElement r(kept.rank(k), w.nvars());
  ExteriorAlgebra::Mask allowed = kept.nvars() >= 32 ? ~0u : ((1u << kept.nvars()) - 1);
  for (std::size_t i = 0; i < w.rank(); ++i) {
    auto m = full.basis(k)[i];
    if ((m & ~allowed) == 0 && !w[i].is_zero()) r[kept.index(m)] = w[i];
  }
  return r;
}

inline CheckedFormsModule finish(CheckedFormsModule m) {
  m.presentation.grading = forms_grading(m.weights, m.nforms, m.k);
  m.presentation.validate();
  return m;
}

}  // namespace detail

/// Ω̌^k_D = Ω^k / h·Ω^k(log D) for a free divisor with certified basis.
inline CheckedFormsModule omega_free(const Divisor& d, const LogBasis& b, std::size_t k) {
  std::size_t n = d.nvars();
  if (b.size() != n || b.unit == 0) throw PreconditionError("omega_check: missing Saito certificate");
  if (k > n) throw PreconditionError("omega_check: degree out of range");
  CheckedFormsModule m;
  m.k = k;
  m.nforms = n;
  m.vars = d.vars;
  m.h = d.h;
  m.weights = effective_weights(d);
  m.presentation.rank = ExteriorAlgebra(n).rank(k);
  m.presentation.nvars = n;
  m.presentation.relations = h_log_forms(b, k);
  return detail::finish(std::move(m));
}

/// Ω̌^k for the pullback of a free divisor E along a map. The first `nforms`
/// source variables carry differentials; differentials of the remaining
/// (parameter) variables are divided out.
inline CheckedFormsModule omega_pullback(const Divisor& e, const LogBasis& be, const InducingMap& map,
                                         std::size_t nforms, std::size_t k,
                                         std::optional<Weights> source_weights = std::nullopt) {
  std::size_t m = map.source_vars.size();
  if (be.size() != e.nvars() || be.unit == 0) throw PreconditionError("omega_check: missing Saito certificate for E");
  if (map.components.size() != e.nvars()) throw PreconditionError("inducing map: component count differs from target dimension");
  if (nforms > m) throw PreconditionError("omega_check: more form variables than source variables");
  if (k > nforms) throw PreconditionError("omega_check: degree out of range");
  ExteriorAlgebra target(e.nvars()), full(m), kept(nforms, m);
  std::vector<std::pair<FreeElement, std::size_t>> gens;
  for (std::size_t j = 0; j <= k; ++j)
    for (const auto& g : h_log_forms(be, j)) {
      auto pb = detail::project_forms(target.pullback(g, j, map.components, full), j, full, kept);
      if (!pb.is_zero()) gens.push_back({std::move(pb), j});
    }
  CheckedFormsModule out;
  out.k = k;
  out.nforms = nforms;
  out.vars = map.source_vars;
  out.h = map.pull(e.h);
  out.weights = std::move(source_weights);
  out.presentation.rank = kept.rank(k);
  out.presentation.nvars = m;
  out.presentation.relations = kept.ideal_part(gens, k);
  return detail::finish(std::move(out));
}

/// The module M / (v_1, …, v_r)·M for the listed ring variables.
inline CheckedFormsModule restrict_to_zero(CheckedFormsModule m, std::span<const std::size_t> vars) {
  std::size_t r = m.presentation.rank, n = m.nvars();
  for (auto v : vars)
    for (std::size_t c = 0; c < r; ++c)
      m.presentation.relations.push_back(Poly::variable(n, v) * FreeElement::unit(r, n, c));
  m.presentation.validate();
  return m;
}

/// Relations of the ordinary Kähler forms: h·Ω^k + dh∧Ω^{k−1}.
inline std::vector<FreeElement> kahler_relations(const Poly& h, std::size_t k) {
  std::size_t n = h.nvars();
  ExteriorAlgebra ext(n);
  std::vector<FreeElement> out;
  for (std::size_t c = 0; c < ext.rank(k); ++c) out.push_back(h * FreeElement::unit(ext.rank(k), n, c));
  if (k > 0) {
    auto dh = ext.differential(h);
    for (auto mask : ext.basis(k - 1)) {
      auto w = ext.wedge(dh, 1, ext.basis_form(mask), k - 1);
      if (!w.is_zero()) out.push_back(std::move(w));
    }
  }
  return out;
}

/// True iff the relation generators of a free-divisor module are a free basis
/// of the relation module, i.e. there are no syzygies among them.
inline bool pd_check(const CheckedFormsModule& m) {
  if (m.presentation.relations.empty()) return true;
  return syzygy_module(m.presentation.relations, m.order()).empty();
}

/// ι_χ(form) for χ logarithmic along the divisor of m.
inline FreeElement contract(const CheckedFormsModule& m, const FreeElement& chi, const FreeElement& form) {
  if (m.k == 0) throw PreconditionError("contract: degree-zero forms");
  FreeElement full(m.nvars(), m.nvars());
  for (std::size_t i = 0; i < chi.rank() && i < m.nvars(); ++i) full[i] = chi[i];
  Poly img = apply_field(full, m.h);
  if (!img.is_zero() && !divide_exact(img, m.h))
    throw PreconditionError("contract: vector field is not logarithmic");
  return m.algebra().contract(chi, form, m.k);
}

/// Hilbert function of the presented module in degrees [lo, hi].
inline std::map<long, std::size_t> graded_table(const CheckedFormsModule& m, long lo, long hi) {
  if (!m.presentation.grading) throw PreconditionError("graded table needs weights");
  return hilbert_table(m.basis(), *m.presentation.grading, lo, hi);
}

/// Result of the torsion computation: H^0_m of the module.
struct TorsionResult {
  std::size_t length = 0;
  std::size_t iterations = 0;
  /// Generators of the saturation (relations : m^∞).
  std::vector<FreeElement> saturation;
};

/// Length of the submodule annihilated by a power of the maximal ideal,
/// as the stabilized chain K ⊆ (K : m) ⊆ (K : m²) ⊆ … of relation modules.
inline TorsionResult torsion_length(const CheckedFormsModule& m, std::size_t max_iterations = 20) {
  const auto& p = m.presentation;
  auto order = m.order();
  std::size_t n = m.nvars(), r = p.rank;
  std::vector<FreeElement> current = p.relations;
  auto gb = groebner_basis(current, order, r, n);
  TorsionResult res;
  for (;;) {
    if (res.iterations >= max_iterations)
      throw NonStabilizationError("torsion_length: colon chain did not stabilize within the bound");
    auto next = colon_maximal(current, r, n, order);
    ++res.iterations;
    if (gb.contains_all(next)) break;
    for (auto& g : next) current.push_back(std::move(g));
    gb = groebner_basis(current, order, r, n);
    current = gb.elements();
  }
  res.saturation = current;
  // Present K_sat / K on the generators of K_sat.
  std::vector<FreeElement> gens = gb.elements();
  if (gens.empty()) return res;
  auto base = groebner_basis(p.relations, order, r, n);
  std::vector<FreeElement> cols;
  for (const auto& g : gens)
    if (!base.contains(g)) cols.push_back(g);
  if (cols.empty()) return res;
  std::size_t a = cols.size();
  for (const auto& rel : p.relations) cols.push_back(rel);
  std::vector<FreeElement> rels;
  for (const auto& s : syzygy_module(cols, order)) {
    FreeElement head(std::vector<Poly>(s.entries().begin(), s.entries().begin() + static_cast<long>(a)));
    if (!head.is_zero()) rels.push_back(std::move(head));
  }
  auto dim = quotient_dimension(groebner_basis(rels, order, a, n));
  if (!dim.is_finite()) throw InvariantError("torsion_length: torsion submodule is not of finite length");
  res.length = *dim.value;
  return res;
}

/// Whether a form is zero in the module and whether its class is torsion.
struct ClassReport {
  bool nonzero = false;
  bool torsion = false;
};

inline ClassReport classify(const CheckedFormsModule& m, const FreeElement& form, const TorsionResult& t) {
  ClassReport c;
  c.nonzero = !m.basis().contains(form);
  c.torsion = groebner_basis(t.saturation, m.order(), m.presentation.rank, m.nvars()).contains(form);
  return c;
}

}  // namespace logforms
