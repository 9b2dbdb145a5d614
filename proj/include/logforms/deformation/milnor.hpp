#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <vector>

#include "logforms/deformation/t1log.hpp"
#include "logforms/forms/derham.hpp"

namespace logforms {

/// μ_E as the length of Ω̌^p / dΩ̌^{p−1}, summed over weighted-degree slices.
struct MuDeRham {
  std::size_t value = 0;
  /// Cokernel dimension of d in each slice that was examined.
  std::map<long, std::size_t> slices;
  /// Highest degree of the finite-length top-degree module Ω̌^{p+1}.
  long top_degree = 0;
  std::size_t top_length = 0;
};

/// The AFD D₀ = i⁻¹(E) ⊂ V with every source variable a form variable.
/// Slices above the top degree of Ω̌^{p+1} are examined for one further
/// window of max-weight width and must vanish.
inline MuDeRham mu_e_derham(const Divisor& e, const LogBasis& be, const InducingMap& map, const Weights& w,
                            long degree_bound) {
  std::size_t n = map.source_vars.size();
  if (n < 2) throw PreconditionError("mu_e: needs at least two source variables");
  if (!detail::positive(w) || w.size() != n) throw PreconditionError("mu_e: needs positive source weights");
  auto build = [&](std::size_t k) { return omega_pullback(e, be, map, n, k, w); };
  auto top = build(n);
  auto sm = standard_monomials(top.basis());
  if (!sm) throw PreconditionError("mu_e: top-degree forms are not of finite length (not almost free)");
  MuDeRham out;
  out.top_length = sm->size();
  for (const auto& [m, c] : *sm) out.top_degree = std::max(out.top_degree, top.presentation.grading->degree(m, c));
  long window = *std::max_element(w.begin(), w.end());
  long last = out.top_degree + window;
  if (last > degree_bound)
    throw NonStabilizationError("mu_e: degree bound below the stabilization window");
  SliceComplex cx(complex_relations(n, build), w, 0);
  std::size_t p = n - 1;
  for (long ell = 0; ell <= last; ++ell) {
    auto src = cx.slice_basis(p - 1, ell), dst = cx.slice_basis(p, ell);
    std::size_t c = dst.size() - cx.d_rank(p - 1, src, dst);
    out.slices[ell] = c;
    if (ell > out.top_degree && c != 0)
      throw NonStabilizationError("mu_e: cokernel of d persists above the top degree");
    out.value += c;
  }
  return out;
}

inline MuDeRham mu_e_derham(const DeformationSetup& s, long degree_bound) {
  auto w = germ_weights(s);
  if (!w) throw PreconditionError("mu_e: needs source weights");
  return mu_e_derham(s.e, s.basis, germ(s), *w, degree_bound);
}

/// μ_E of the total space D ⊂ V × S (t = 0), itself treated as an AFD.
inline MuDeRham mu_e_derham_total(const DeformationSetup& s, long degree_bound) {
  auto w = family_weights(s);
  if (!w) throw PreconditionError("mu_e: needs source weights");
  return mu_e_derham(s.e, s.basis, family(s), *w, degree_bound);
}

/// Σ (−1)^{i+1} dim T^{1,log}_{D_i/S_i} over the flag of all parameters
/// (s then t), with D_i cut out by the parameters after the i-th; the free
/// total space over S × T serves as extension for every D_i.
struct MuAlternating {
  long value = 0;
  std::vector<std::size_t> terms;
  bool local = true;
};

inline MuAlternating mu_e_alternating(const DeformationSetup& s, const LogBasis& total) {
  detail::check_total(s, total);
  std::size_t n = s.nsource();
  MuAlternating out;
  for (std::size_t i = 0; i < s.nparams(); ++i) {
    std::size_t first = s.nbase() + i;
    auto q = detail::parameter_quotient(s, total, first, detail::range(first + 1, n));
    if (!q.dim.is_finite()) throw PreconditionError("mu_e: alternating route has an INFINITE summand");
    out.terms.push_back(*q.dim.value);
    out.local = out.local && q.local;
    long sign = i % 2 == 0 ? 1 : -1;
    out.value += sign * static_cast<long>(*q.dim.value);
  }
  if (out.value < 0) throw InvariantError("mu_e: alternating sum is negative");
  return out;
}

/// dim θ(π) / (tπ(Der(log h)) + m_S θ(π)) for a good defining equation h.
struct MuGoodEquation {
  NormalSpace space;
  /// χ with χ·h = h.
  FreeElement witness;
};

/// A field χ with χ·h = h: the scaled Euler field for positive weights,
/// otherwise a lift of h through the Jacobian ideal.
inline std::optional<FreeElement> good_witness(const Divisor& d) {
  std::size_t n = d.nvars();
  if (auto w = effective_weights(d)) {
    auto deg = d.h.homogeneous_degree(*w);
    FreeElement chi = euler_field(*w);
    for (std::size_t i = 0; i < n; ++i) chi[i] = (Rational(1) / Rational(*deg)) * chi[i];
    return chi;
  }
  std::vector<FreeElement> cols;
  for (std::size_t i = 0; i < n; ++i) cols.push_back(FreeElement(std::vector<Poly>{d.h.derivative(i)}));
  auto a = Lifter(cols, 1, n, divisor_order(d)).lift(FreeElement(std::vector<Poly>{d.h}));
  if (!a) return std::nullopt;
  return FreeElement(std::move(*a));
}

inline MuGoodEquation mu_e_good_equation(const DeformationSetup& s) {
  if (s.dt != 0 || s.ds == 0) throw PreconditionError("mu_e: good-equation route needs a free deformation over S only");
  Divisor d = total_divisor(s);
  auto chi = good_witness(d);
  if (!chi || apply_field(*chi, d.h) != d.h) throw PreconditionError("mu_e: no good defining equation found");
  std::size_t n = s.nsource();
  auto rows = detail::range(s.nbase(), n);
  ModulePresentation p;
  p.rank = rows.size();
  p.nvars = n;
  for (const auto& f : derlog_h(d)) {
    std::vector<Poly> col;
    for (auto r : rows) col.push_back(f[r]);
    FreeElement c(std::move(col));
    if (!c.is_zero()) p.relations.push_back(std::move(c));
  }
  for (auto v : rows)
    for (std::size_t c = 0; c < p.rank; ++c)
      p.relations.push_back(Poly::variable(n, v) * FreeElement::unit(p.rank, n, c));
  std::vector<long> shifts;
  if (s.weights)
    for (auto r : rows) shifts.push_back(-(*s.weights)[r]);
  return {detail::finish_space(std::move(p), s.weights, shifts), std::move(*chi)};
}

/// μ_E(D₀) + μ_E(D) against dim T^{1,log}_{D/S} for a one-parameter family.
struct CountCheck {
  std::size_t mu_fibre = 0;
  std::size_t mu_total = 0;
  Dimension t1;
  bool holds = false;
};

inline CountCheck count_check(const DeformationSetup& s, const LogBasis& total, long degree_bound) {
  if (s.ds != 1) throw PreconditionError("count: needs a one-parameter family");
  CountCheck out;
  out.mu_fibre = mu_e_derham(s, degree_bound).value;
  out.mu_total = mu_e_derham_total(s, degree_bound).value;
  out.t1 = t1_log_relative(s, total).relative.dim;
  out.holds = out.t1.is_finite() && *out.t1.value == out.mu_fibre + out.mu_total;
  return out;
}

}  // namespace logforms
