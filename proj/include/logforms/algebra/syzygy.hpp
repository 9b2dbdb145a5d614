#pragma once

#include <optional>
#include <span>
#include <vector>

#include "logforms/algebra/groebner.hpp"

namespace logforms {

/// Gröbner basis of pairs (top_i ; bottom_i) in O^{r+m} under an order that
/// eliminates the top block. Elements whose top part vanishes project to
/// generators of {Σ a_i bottom_i : Σ a_i top_i = 0}.
class EliminationBasis {
 public:
  EliminationBasis(std::span<const FreeElement> top, std::span<const FreeElement> bottom,
                   std::size_t top_rank, std::size_t bottom_rank, std::size_t nvars,
                   const MonomialOrder& mono, std::vector<long> bottom_shifts = {})
      : r_(top_rank), m_(bottom_rank), n_(nvars),
        gb_(build(top, bottom, top_rank, bottom_rank, nvars, mono, std::move(bottom_shifts))) {}

  std::size_t top_rank() const noexcept { return r_; }
  std::size_t bottom_rank() const noexcept { return m_; }
  const GroebnerBasis& basis() const noexcept { return gb_; }

  /// Bottom parts of basis elements with zero top part.
  std::vector<FreeElement> kernel() const {
    std::vector<FreeElement> out;
    for (const auto& v : gb_.raw()) {
      if (v.back().comp < r_) continue;
      FreeElement e(m_, n_);
      for (const auto& t : v) e[t.comp - r_].add_term(t.m, t.c);
      out.push_back(std::move(e));
    }
    return out;
  }

  /// Reduces (f ; 0). If the top part vanishes the remainder is (0 ; b), and
  /// then (f ; -b) lies in the span of the pairs.
  std::optional<FreeElement> reduce_top(const FreeElement& f) const {
    FreeElement ext(r_ + m_, n_);
    for (std::size_t i = 0; i < r_; ++i) ext[i] = f[i];
    gb::Vec red = gb_.reduce(gb::to_vec(ext, gb_.order()));
    FreeElement b(m_, n_);
    for (const auto& t : red) {
      if (t.comp < r_) return std::nullopt;
      b[t.comp - r_].add_term(t.m, t.c);
    }
    return b;
  }

 private:
  static GroebnerBasis build(std::span<const FreeElement> top, std::span<const FreeElement> bottom,
                             std::size_t r, std::size_t m, std::size_t n, const MonomialOrder& mono,
                             std::vector<long> bottom_shifts) {
    std::vector<int> blocks(r + m);
    for (std::size_t i = 0; i < r; ++i) blocks[i] = static_cast<int>(i);
    for (std::size_t i = r; i < r + m; ++i) blocks[i] = static_cast<int>(r);
    std::vector<std::vector<long>> shifts(mono.rows().size(), std::vector<long>(r + m, 0));
    if (!bottom_shifts.empty())
      for (std::size_t i = 0; i < m; ++i) shifts[0][r + i] = bottom_shifts[i];
    ModuleOrder order(mono, std::move(blocks), std::move(shifts));
    std::vector<FreeElement> gens;
    for (std::size_t k = 0; k < top.size(); ++k) {
      FreeElement g(r + m, n);
      for (std::size_t i = 0; i < r; ++i) g[i] = top[k][i];
      for (std::size_t i = 0; i < m; ++i) g[r + i] = bottom[k][i];
      gens.push_back(std::move(g));
    }
    return GroebnerBasis::compute(gens, order, r + m, n);
  }

  std::size_t r_, m_, n_;
  GroebnerBasis gb_;
};

/// Row-0 weighted degree of the highest term of a column, used as a shift.
inline long column_degree(const FreeElement& v, const MonomialOrder& mono) {
  long d = 0;
  bool first = true;
  for (std::size_t i = 0; i < v.rank(); ++i)
    for (const auto& [m, c] : v[i].terms()) {
      long x = m.weighted_degree(mono.rows()[0]);
      if (first || x > d) d = x;
      first = false;
    }
  return d;
}

/// Tracks the representation of module elements in terms of the columns.
class Lifter {
 public:
  Lifter(std::span<const FreeElement> columns, std::size_t rank, std::size_t nvars,
         const MonomialOrder& mono)
      : elim_(columns, units(columns.size(), nvars), rank, columns.size(), nvars, mono,
              shifts(columns, mono)) {}

  /// Generators of all relations Σ a_i column_i = 0.
  std::vector<FreeElement> syzygies() const { return elim_.kernel(); }

  /// Cofactors a with f = Σ a_i column_i, or nothing if f is not in the span.
  std::optional<std::vector<Poly>> lift(const FreeElement& f) const {
    auto b = elim_.reduce_top(f);
    if (!b) return std::nullopt;
    std::vector<Poly> a;
    for (std::size_t i = 0; i < b->rank(); ++i) a.push_back(-(*b)[i]);
    return a;
  }

 private:
  static std::vector<FreeElement> units(std::size_t m, std::size_t n) {
    std::vector<FreeElement> out;
    for (std::size_t i = 0; i < m; ++i) out.push_back(FreeElement::unit(m, n, i));
    return out;
  }
  static std::vector<long> shifts(std::span<const FreeElement> cols, const MonomialOrder& mono) {
    std::vector<long> s;
    for (const auto& c : cols) s.push_back(column_degree(c, mono));
    return s;
  }

  EliminationBasis elim_;
};

/// Generators of the module of relations among the columns.
inline std::vector<FreeElement> syzygy_module(std::span<const FreeElement> columns,
                                              const MonomialOrder& mono) {
  if (columns.empty()) return {};
  std::size_t r = columns[0].rank(), n = columns[0].nvars();
  for (const auto& c : columns)
    if (c.rank() != r) throw PreconditionError("syzygy_module: columns differ in rank");
  return Lifter(columns, r, n, mono).syzygies();
}

inline std::vector<FreeElement> syzygy_module(std::span<const FreeElement> columns) {
  if (columns.empty()) return {};
  return syzygy_module(columns, MonomialOrder::degrevlex(columns[0].nvars()));
}

/// Generators of the intersection of two submodules of O^r.
inline std::vector<FreeElement> intersection(std::span<const FreeElement> a,
                                             std::span<const FreeElement> b, std::size_t rank,
                                             std::size_t nvars, const MonomialOrder& mono) {
  if (a.empty() || b.empty()) return {};
  std::vector<FreeElement> top(a.begin(), a.end()), bottom(a.begin(), a.end());
  for (const auto& g : b) {
    top.push_back(g);
    bottom.push_back(FreeElement(rank, nvars));
  }
  return EliminationBasis(top, bottom, rank, rank, nvars, mono).kernel();
}

/// Generators of (A : g) = {u in O^r : g·u in A}.
inline std::vector<FreeElement> colon(std::span<const FreeElement> a, const Poly& g,
                                      std::size_t rank, std::size_t nvars,
                                      const MonomialOrder& mono) {
  std::vector<FreeElement> top, bottom;
  for (std::size_t k = 0; k < rank; ++k) {
    top.push_back(g * FreeElement::unit(rank, nvars, k));
    bottom.push_back(FreeElement::unit(rank, nvars, k));
  }
  for (const auto& x : a) {
    top.push_back(x);
    bottom.push_back(FreeElement(rank, nvars));
  }
  long shift = g.is_zero() ? 0 : g.max_weighted_degree(mono.rows()[0]);
  return EliminationBasis(top, bottom, rank, rank, nvars, mono, std::vector<long>(rank, shift))
      .kernel();
}

/// Generators of (A : m) for m the ideal of all variables.
inline std::vector<FreeElement> colon_maximal(std::span<const FreeElement> a, std::size_t rank,
                                              std::size_t nvars, const MonomialOrder& mono) {
  std::vector<FreeElement> acc;
  for (std::size_t i = 0; i < nvars; ++i) {
    auto ci = colon(a, Poly::variable(nvars, i), rank, nvars, mono);
    acc = (i == 0) ? std::move(ci) : intersection(acc, ci, rank, nvars, mono);
  }
  if (nvars == 0) {
    for (std::size_t k = 0; k < rank; ++k) acc.push_back(FreeElement::unit(rank, nvars, k));
  }
  return acc;
}

/// Greatest common divisor, normalized to leading coefficient 1 in lex order.
/// Read off the principal syzygy module of (f, g): it is generated by
/// (g/gcd, -f/gcd).
inline Poly gcd(const Poly& f, const Poly& g) {
  if (f.is_zero()) return g.is_zero() ? g : (1 / g.terms().rbegin()->second) * g;
  if (g.is_zero()) return (1 / f.terms().rbegin()->second) * f;
  std::vector<FreeElement> cols{FreeElement(std::vector<Poly>{f}),
                                FreeElement(std::vector<Poly>{g})};
  auto syz = syzygy_module(cols);
  if (syz.size() != 1) throw InvariantError("gcd: syzygy module of two polynomials not principal");
  const Poly& a = syz[0][0];
  auto q = divide_exact(g, a);
  if (!q) throw InvariantError("gcd: cofactor does not divide");
  Poly d = *q;
  return (1 / d.terms().rbegin()->second) * d;
}

inline Poly gcd(std::span<const Poly> ps) {
  if (ps.empty()) throw PreconditionError("gcd of empty list");
  Poly d = ps[0];
  for (std::size_t i = 1; i < ps.size() && !d.is_constant(); ++i) d = gcd(d, ps[i]);
  if (d.is_constant() && !d.is_zero()) return Poly::constant(d.nvars(), 1);
  return d;
}

/// Submodule equality by two-sided membership.
inline bool same_submodule(std::span<const FreeElement> a, std::span<const FreeElement> b,
                           std::size_t rank, std::size_t nvars, const MonomialOrder& mono) {
  auto ga = groebner_basis(a, mono, rank, nvars);
  auto gb_ = groebner_basis(b, mono, rank, nvars);
  return ga.contains_all(b) && gb_.contains_all(a);
}

}  // namespace logforms
