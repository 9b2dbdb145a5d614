#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "logforms/algebra/groebner.hpp"

namespace logforms {

/// Vector-space dimension, possibly infinite.
struct Dimension {
  std::optional<std::size_t> value;

  static Dimension infinite() { return {}; }
  static Dimension finite(std::size_t v) { return {v}; }
  bool is_finite() const noexcept { return value.has_value(); }
  std::string to_string() const { return value ? std::to_string(*value) : "INFINITE"; }
  friend bool operator==(const Dimension&, const Dimension&) = default;
};

namespace detail {

/// Leading monomials grouped by component.
inline std::vector<std::vector<Monomial>> staircase(const GroebnerBasis& gb) {
  std::vector<std::vector<Monomial>> by_comp(gb.rank());
  for (const auto& [m, c] : gb.leading_terms()) by_comp[c].push_back(m);
  return by_comp;
}

inline bool divisible_by_any(const Monomial& m, const std::vector<Monomial>& lms) {
  for (const auto& l : lms)
    if (l.divides(m)) return true;
  return false;
}

}  // namespace detail

/// Monomials x^a e_c not divisible by any leading term, when finitely many.
inline std::optional<std::vector<std::pair<Monomial, std::size_t>>> standard_monomials(
    const GroebnerBasis& gb) {
  std::size_t n = gb.nvars();
  auto stairs = detail::staircase(gb);
  std::vector<std::pair<Monomial, std::size_t>> out;
  for (std::size_t c = 0; c < gb.rank(); ++c) {
    const auto& lms = stairs[c];
    // Each variable needs a pure power among the leading monomials.
    std::vector<int> bound(n, -1);
    for (const auto& l : lms) {
      if (l.is_one()) {
        bound.assign(n, 0);
        break;
      }
      std::size_t support = 0, var = 0;
      for (std::size_t i = 0; i < n; ++i)
        if (l[i] > 0) {
          ++support;
          var = i;
        }
      if (support == 1 && (bound[var] < 0 || l[var] < bound[var])) bound[var] = l[var];
    }
    bool one = false;
    for (const auto& l : lms) one = one || l.is_one();
    if (one) continue;
    for (int b : bound)
      if (b < 0) return std::nullopt;
    Monomial m(n);
    std::function<void(std::size_t)> walk = [&](std::size_t i) {
      if (i == n) {
        if (!detail::divisible_by_any(m, lms)) out.push_back({m, c});
        return;
      }
      for (int e = 0; e < bound[i]; ++e) {
        m.set(i, e);
        walk(i + 1);
      }
      m.set(i, 0);
    };
    walk(0);
  }
  return out;
}

inline Dimension quotient_dimension(const GroebnerBasis& gb) {
  auto sm = standard_monomials(gb);
  return sm ? Dimension::finite(sm->size()) : Dimension::infinite();
}

inline Dimension quotient_dimension(const ModulePresentation& p, const MonomialOrder& order) {
  return quotient_dimension(groebner_basis(p.relations, order, p.rank, p.nvars));
}

/// All monomials of a given weighted degree. Variables of weight zero are
/// allowed only with an exponent cap.
inline std::vector<Monomial> monomials_of_degree(std::size_t nvars, const Weights& w, long degree,
                                                 int zero_weight_cap = 0) {
  std::vector<Monomial> out;
  if (degree < 0) return out;
  Monomial m(nvars);
  std::function<void(std::size_t, long)> walk = [&](std::size_t i, long rest) {
    if (i == nvars) {
      if (rest == 0) out.push_back(m);
      return;
    }
    int max_e = w[i] > 0 ? static_cast<int>(rest / w[i]) : zero_weight_cap;
    for (int e = 0; e <= max_e; ++e) {
      m.set(i, e);
      walk(i + 1, rest - e * w[i]);
    }
    m.set(i, 0);
  };
  walk(0, degree);
  return out;
}

/// Standard monomials x^a e_c with weights·a + shifts[c] equal to degree.
inline std::vector<std::pair<Monomial, std::size_t>> standard_monomials_of_degree(
    const GroebnerBasis& gb, const Grading& g, long degree, int zero_weight_cap = 0) {
  auto stairs = detail::staircase(gb);
  std::vector<std::pair<Monomial, std::size_t>> out;
  for (std::size_t c = 0; c < gb.rank(); ++c) {
    long shift = g.shifts.empty() ? 0 : g.shifts[c];
    for (const auto& m : monomials_of_degree(gb.nvars(), g.weights, degree - shift, zero_weight_cap))
      if (!detail::divisible_by_any(m, stairs[c])) out.push_back({m, c});
  }
  return out;
}

/// Hilbert function of O^r / M in each degree up to max_degree.
inline std::map<long, std::size_t> hilbert_table(const GroebnerBasis& gb, const Grading& g,
                                                 long min_degree, long max_degree) {
  std::map<long, std::size_t> table;
  for (long d = min_degree; d <= max_degree; ++d)
    table[d] = standard_monomials_of_degree(gb, g, d).size();
  return table;
}

/// Krull dimension of O^r / M, read off the leading-term module; -1 for the
/// zero module.
inline int krull_dimension(const GroebnerBasis& gb) {
  std::size_t n = gb.nvars();
  auto stairs = detail::staircase(gb);
  int best = -1;
  for (const auto& lms : stairs) {
    // Largest variable subset U with no leading monomial supported inside U.
    for (std::uint32_t u = 0; u < (1u << n); ++u) {
      int size = __builtin_popcount(u);
      if (size <= best) continue;
      bool free = true;
      for (const auto& l : lms) {
        bool inside = true;
        for (std::size_t i = 0; i < n && inside; ++i)
          if (l[i] > 0 && !(u >> i & 1u)) inside = false;
        if (inside) {
          free = false;
          break;
        }
      }
      if (free) best = size;
    }
  }
  return best;
}

}  // namespace logforms
