#pragma once

#include <map>
#include <optional>
#include <vector>

#include "logforms/deformation/normal_space.hpp"

namespace logforms {

inline constexpr std::size_t kJetCap = 20;

/// dim θ(f) / (tf(θ_n) + ωf(θ_p)) assembled in the jet spaces J^N θ(f);
/// stops when two consecutive orders give the same cokernel dimension.
struct AeDirect {
  Dimension value;
  /// Cokernel dimension at each jet order tried, from order 1.
  std::vector<std::size_t> jets;
  std::size_t order = 0;
};

namespace detail {

inline Poly truncate(const Poly& p, int order) {
  Poly r(p.nvars());
  for (const auto& [m, c] : p.terms())
    if (m.degree() <= order) r.add_term(m, c);
  return r;
}

/// Cokernel dimension of T A_e f in J^N θ(f).
inline std::size_t jet_cokernel(const InducingMap& f, int order) {
  std::size_t n = f.source_vars.size(), p = f.components.size();
  Weights ones(n, 1);
  std::vector<Monomial> monos;
  for (int d = 0; d <= order; ++d)
    for (auto& m : monomials_of_degree(n, ones, d)) monos.push_back(std::move(m));
  std::map<Monomial, std::size_t> index;
  for (std::size_t i = 0; i < monos.size(); ++i) index[monos[i]] = i;
  std::size_t width = monos.size();
  EchelonBasis span;
  auto insert = [&](std::size_t comp, const Poly& q) {
    SparseRow row;
    for (const auto& [m, c] : q.terms())
      if (m.degree() <= order) row[comp * width + index.at(m)] = c;
    if (!row.empty()) span.insert(std::move(row));
  };
  auto insert_vec = [&](const std::vector<Poly>& v) {
    SparseRow row;
    for (std::size_t comp = 0; comp < v.size(); ++comp)
      for (const auto& [m, c] : v[comp].terms())
        if (m.degree() <= order) row[comp * width + index.at(m)] = c;
    if (!row.empty()) span.insert(std::move(row));
  };
  // tf(θ_n): x^a ∂f/∂x_j.
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<Poly> col;
    for (const auto& c : f.components) col.push_back(truncate(c.derivative(j), order));
    for (const auto& m : monos) {
      std::vector<Poly> v;
      for (const auto& c : col) v.push_back(truncate(c.mul_monomial(m), order));
      insert_vec(v);
    }
  }
  // ωf(θ_p): f^b e_c with |b| ≤ N, since f(0) = 0.
  Weights tones(p, 1);
  std::vector<Poly> comps;
  for (const auto& c : f.components) comps.push_back(truncate(c, order));
  std::map<Monomial, Poly> powers;
  for (int d = 0; d <= order; ++d)
    for (const auto& b : monomials_of_degree(p, tones, d)) {
      Poly q = Poly::constant(n, 1);
      if (d > 0) {
        // Extend a known power by one factor.
        std::size_t k = 0;
        while (b[k] == 0) ++k;
        Monomial prev = b;
        prev.set(k, b[k] - 1);
        q = truncate(powers.at(prev) * comps[k], order);
      }
      for (std::size_t c = 0; c < p; ++c) insert(c, q);
      powers.emplace(b, std::move(q));
    }
  return p * width - span.rank();
}

}  // namespace detail

inline AeDirect ae_normal_space_direct(const InducingMap& f, std::size_t cap = kJetCap) {
  for (const auto& c : f.components)
    if (c.constant_term() != 0) throw PreconditionError("ae: germ does not send 0 to 0");
  AeDirect out;
  for (std::size_t order = 1; order <= cap; ++order) {
    out.jets.push_back(detail::jet_cokernel(f, static_cast<int>(order)));
    out.order = order;
    if (out.jets.size() >= 2 && out.jets[out.jets.size() - 1] == out.jets[out.jets.size() - 2]) {
      out.value = Dimension::finite(out.jets.back());
      return out;
    }
  }
  out.value = Dimension::infinite();
  return out;
}

/// Data for the Damon route: f₀ is the pullback of a stable map F along i₀,
/// and D(F) is the discriminant (or image) of F with a Saito certificate.
struct DamonInput {
  Divisor discriminant;
  LogBasis basis;
  InducingMap inclusion;
  std::optional<InducingMap> unfolding;
  std::optional<Weights> weights;
};

struct DamonResult {
  NormalSpace space;
  /// ae_normal_space_direct of F returned 0.
  bool unfolding_stable = false;
  /// h_{D(F)} ∘ F vanishes on the critical set of F (or identically, for images).
  bool discriminant_checked = false;
};

inline constexpr unsigned kRadicalPowerCap = 4;

namespace detail {

/// Whether h∘F lies in the radical of the ideal of maximal minors of dF,
/// tested up to a fixed power.
inline bool vanishes_on_critical_set(const Poly& h, const InducingMap& F) {
  std::size_t n = F.source_vars.size(), p = F.components.size();
  Poly hf = F.pull(h);
  if (hf.is_zero()) return true;
  if (n < p) return false;
  auto jac = jacobian_columns(F, range(0, n));
  std::vector<Poly> minors;
  for (auto& m : maximal_minors(jac, p, n))
    if (!m.is_zero()) minors.push_back(std::move(m));
  if (minors.empty()) return true;
  auto gb = ideal_basis(minors, MonomialOrder::degrevlex(n), n);
  Poly q = hf;
  for (unsigned k = 1; k <= kRadicalPowerCap; ++k, q *= hf)
    if (gb.contains(FreeElement(std::vector<Poly>{q}))) return true;
  return false;
}

}  // namespace detail

inline DamonResult ae_codim_damon(const DamonInput& in) {
  if (in.basis.size() != in.discriminant.nvars() || in.basis.unit == 0)
    throw PreconditionError("ae: uncertified discriminant");
  DamonResult out;
  if (in.unfolding) {
    if (in.unfolding->components.size() != in.discriminant.nvars())
      throw PreconditionError("ae: unfolding target differs from the discriminant ambient space");
    auto st = ae_normal_space_direct(*in.unfolding);
    out.unfolding_stable = st.value.is_finite() && *st.value.value == 0;
    if (!out.unfolding_stable) throw PreconditionError("ae: supplied unfolding is not stable");
    out.discriminant_checked = detail::vanishes_on_critical_set(in.discriminant.h, *in.unfolding);
    if (!out.discriminant_checked)
      throw PreconditionError("ae: discriminant equation does not vanish on the critical set of the unfolding");
  }
  out.space = kev_normal_space(in.discriminant, in.basis, in.inclusion, in.weights);
  return out;
}

/// Torsion length of Ω̌^{m−1} of D(f₀) = i₀⁻¹(D(F)) ⊂ C^m.
inline TorsionResult ae_torsion_route(const DamonInput& in) {
  std::size_t m = in.inclusion.source_vars.size();
  if (m == 0) throw PreconditionError("ae: empty source");
  auto mod = omega_pullback(in.discriminant, in.basis, in.inclusion, m, m - 1, in.weights);
  return torsion_length(mod);
}

}  // namespace logforms
