#pragma once

#include <map>
#include <random>
#include <vector>

#include "logforms/deformation/normal_space.hpp"

namespace logforms {

namespace detail {

/// θ(ρ) on the parameters from index `first` on, modulo the rows of Θ for
/// those parameters and the listed variables times θ(ρ).
inline NormalSpace parameter_quotient(const DeformationSetup& s, const LogBasis& total, std::size_t first,
                                      std::span<const std::size_t> zero) {
  std::size_t n = s.nsource();
  auto rows = range(first, n);
  ModulePresentation p;
  p.rank = rows.size();
  p.nvars = n;
  for (auto& c : theta_prime(total, rows))
    if (!c.is_zero()) p.relations.push_back(std::move(c));
  for (auto v : zero)
    for (std::size_t c = 0; c < p.rank; ++c)
      p.relations.push_back(Poly::variable(n, v) * FreeElement::unit(p.rank, n, c));
  std::vector<long> shifts;
  if (s.weights)
    for (auto r : rows) shifts.push_back(-(*s.weights)[r]);
  return finish_space(std::move(p), s.weights, shifts);
}

inline void check_total(const DeformationSetup& s, const LogBasis& total) {
  if (total.size() != s.nsource() || total.unit == 0)
    throw PreconditionError("deformation: missing Saito certificate for the total space");
  if (s.nparams() == 0) throw PreconditionError("deformation: no parameters");
}

}  // namespace detail

/// T^{1,log}_{D/S} and its fibre T^{1,log}_{D₀} = T^{1,log}_{D/S} / m_S.
struct T1Log {
  NormalSpace relative;
  NormalSpace fibre;
};

/// Uses a Saito basis of the total space over S × T; the T directions are a
/// free extension and are cut down by (t).
inline T1Log t1_log_relative(const DeformationSetup& s, const LogBasis& total) {
  detail::check_total(s, total);
  std::size_t first = s.nbase(), n = s.nsource();
  T1Log out;
  out.relative = detail::parameter_quotient(s, total, first, detail::range(first + s.ds, n));
  out.fibre = detail::parameter_quotient(s, total, first, detail::range(first, n));
  return out;
}

/// Maximal minors of Θ′ restricted to t = 0, as polynomials on V × S.
inline std::vector<Poly> log_critical_ideal(const DeformationSetup& s, const LogBasis& total) {
  detail::check_total(s, total);
  auto rows = detail::range(s.nbase(), s.nsource());
  auto tp = theta_prime(total, rows);
  std::size_t keep = s.nbase() + s.ds;
  std::vector<Poly> out;
  for (const auto& m : maximal_minors(tp, rows.size(), s.nsource())) {
    Poly r = detail::restrict_poly(m, keep);
    if (!r.is_zero()) out.push_back(std::move(r));
  }
  return out;
}

/// Zeroth Fitting ideal of a finite-dimensional T^{1,log}_{D/S} over O_S,
/// as polynomials in the s variables. T^{1,log} is a C-vector space with the
/// s_k acting by commuting matrices A_k, so it is presented over C[s] by the
/// columns (s_k − A_k)e_i.
struct FittingIdeal {
  std::vector<Poly> generators;
  std::size_t length = 0;
  bool local = false;
};

inline FittingIdeal fitting_ideal(const DeformationSetup& s, const LogBasis& total) {
  if (s.dt != 0) throw PreconditionError("fitting: needs a free total space without extension");
  auto t1 = t1_log_relative(s, total);
  if (!t1.relative.dim.is_finite()) throw PreconditionError("fitting: T^{1,log}_{D/S} is not of finite length");
  const auto& p = t1.relative.presentation;
  std::size_t n = s.nsource(), d = s.ds;
  auto gb = groebner_basis(p.relations, detail::order_for(s.weights, n), p.rank, n);
  auto basis = *standard_monomials(gb);
  std::size_t len = basis.size();
  std::map<std::pair<Monomial, std::size_t>, std::size_t> pos;
  for (std::size_t i = 0; i < len; ++i) pos[basis[i]] = i;
  PolyMatrix pres;
  for (std::size_t k = 0; k < d; ++k) {
    for (std::size_t i = 0; i < len; ++i) {
      FreeElement col(len, d);
      col[i] += Poly::variable(d, k);
      const auto& [m, c] = basis[i];
      FreeElement elt(p.rank, n);
      elt[c] = Poly::monomial(m * Monomial::variable(n, s.s_index(k)));
      FreeElement nf = gb.normal_form(elt);
      for (std::size_t cc = 0; cc < nf.rank(); ++cc)
        for (const auto& [mm, q] : nf[cc].terms()) col[pos.at({mm, cc})] -= Poly::constant(d, q);
      pres.push_back(std::move(col));
    }
  }
  FittingIdeal out;
  out.length = len;
  out.local = t1.relative.local;
  for (auto& m : maximal_minors(pres, len, d))
    if (!m.is_zero()) out.generators.push_back(std::move(m));
  if (len == 0) out.generators.push_back(Poly::constant(d, 1));
  return out;
}

/// Whether the K_E-discriminant of a miniversal one-parameter deformation
/// with T^{1,log}_{D/S} of length one is reduced: Fitting_0 = m_S exactly.
struct Reducedness {
  bool reduced = false;
  FittingIdeal fitting;
};

inline Reducedness ke_discriminant_reducedness(const DeformationSetup& s, const LogBasis& total) {
  if (s.ds != 1 || s.dt != 0) throw PreconditionError("fitting-reduced: hypotheses unverified (needs one parameter, no extension)");
  if (!versality_check(s).miniversal) throw PreconditionError("fitting-reduced: hypotheses unverified (deformation is not miniversal)");
  auto t1 = t1_log_relative(s, total);
  if (!t1.relative.dim.is_finite() || *t1.relative.dim.value != 1)
    throw PreconditionError("fitting-reduced: hypotheses unverified (T^{1,log}_{D/S} does not have length one)");
  Reducedness out;
  out.fitting = fitting_ideal(s, total);
  std::size_t d = s.ds;
  std::vector<Poly> maximal;
  for (std::size_t k = 0; k < d; ++k) maximal.push_back(Poly::variable(d, k));
  auto order = MonomialOrder::degrevlex(d);
  out.reduced = ideal_basis(out.fitting.generators, order, d).same_module(ideal_basis(maximal, order, d));
  return out;
}

/// Cohen–Macaulay proxy for T^{1,log}_{D/S}: cutting by dim S − 1 generic
/// linear forms in the base variables drops the Krull dimension by one each
/// time and ends in a module of finite length.
struct CmProxy {
  std::vector<int> krull;
  std::vector<std::vector<long>> forms;
  Dimension final_dim;
  bool passed = false;
};

inline constexpr int kCmRetries = 5;

inline CmProxy cm_proxy(const DeformationSetup& s, const LogBasis& total, unsigned seed) {
  auto t1 = t1_log_relative(s, total);
  auto p = t1.relative.presentation;
  std::size_t n = s.nsource(), d = s.ds;
  auto order = detail::order_for(s.weights, n);
  std::mt19937 rng(seed);
  CmProxy out;
  auto gb = groebner_basis(p.relations, order, p.rank, n);
  out.krull.push_back(krull_dimension(gb));
  bool ok = d >= 1 && out.krull.back() == static_cast<int>(d) - 1;
  for (std::size_t step = 0; ok && step + 1 < d; ++step) {
    bool dropped = false;
    for (int attempt = 0; attempt < kCmRetries && !dropped; ++attempt) {
      std::vector<long> coeffs;
      Poly l(n);
      for (std::size_t k = 0; k < d; ++k) {
        coeffs.push_back(1 + static_cast<long>(rng() % 7));
        l += Rational(coeffs.back()) * Poly::variable(n, s.s_index(k));
      }
      auto rels = p.relations;
      for (std::size_t c = 0; c < p.rank; ++c) rels.push_back(l * FreeElement::unit(p.rank, n, c));
      auto g = groebner_basis(rels, order, p.rank, n);
      int kd = krull_dimension(g);
      if (kd == out.krull.back() - 1) {
        dropped = true;
        p.relations = std::move(rels);
        gb = std::move(g);
        out.krull.push_back(kd);
        out.forms.push_back(std::move(coeffs));
      }
    }
    ok = dropped;
  }
  out.final_dim = quotient_dimension(gb);
  out.passed = ok && out.final_dim.is_finite();
  return out;
}

}  // namespace logforms
