#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <span>
#include <tuple>
#include <vector>

#include "logforms/algebra/error.hpp"
#include "logforms/algebra/free_module.hpp"
#include "logforms/algebra/order.hpp"

namespace logforms {

namespace gb {

struct Term {
  Monomial m;
  std::uint32_t comp;
  Rational c;
};

/// Sparse module element, terms sorted ascending under a ModuleOrder, so the
/// leading term is back().
using Vec = std::vector<Term>;

inline int cmp(const ModuleOrder& o, const Term& a, const Term& b) {
  return o.compare(a.m, a.comp, b.m, b.comp);
}

inline Vec to_vec(const FreeElement& f, const ModuleOrder& o) {
  Vec v;
  for (std::size_t i = 0; i < f.rank(); ++i)
    for (const auto& [m, c] : f[i].terms()) v.push_back({m, static_cast<std::uint32_t>(i), c});
  std::sort(v.begin(), v.end(), [&](const Term& a, const Term& b) { return cmp(o, a, b) < 0; });
  return v;
}

inline FreeElement to_free(const Vec& v, std::size_t rank, std::size_t nvars) {
  FreeElement f(rank, nvars);
  for (const auto& t : v) f[t.comp].add_term(t.m, t.c);
  return f;
}

/// Returns f - c * u * g, both inputs sorted ascending.
inline Vec sub_mul(const Vec& f, const Rational& c, const Monomial& u, const Vec& g,
                   const ModuleOrder& o) {
  Vec r;
  r.reserve(f.size() + g.size());
  std::size_t i = 0, j = 0;
  Term s;
  while (i < f.size() || j < g.size()) {
    if (j < g.size()) {
      s.m = g[j].m * u;
      s.comp = g[j].comp;
    }
    int k = (i == f.size()) ? 1 : (j == g.size()) ? -1 : o.compare(f[i].m, f[i].comp, s.m, s.comp);
    if (k < 0) {
      r.push_back(f[i++]);
    } else if (k > 0) {
      s.c = -c * g[j].c;
      r.push_back(s);
      ++j;
    } else {
      Rational v = f[i].c - c * g[j].c;
      if (sgn(v) != 0) r.push_back({s.m, s.comp, std::move(v)});
      ++i;
      ++j;
    }
  }
  return r;
}

inline void make_monic(Vec& v) {
  if (v.empty() || v.back().c == 1) return;
  Rational inv = 1 / v.back().c;
  for (auto& t : v) t.c *= inv;
}

inline long sugar_of(const Vec& v, const ModuleOrder& o) {
  long s = 0;
  bool first = true;
  for (const auto& t : v) {
    long d = o.degree(t.m, t.comp);
    if (first || d > s) s = d;
    first = false;
  }
  return s;
}

/// Leading-term index per component for fast reducer lookup.
class ReducerTable {
 public:
  explicit ReducerTable(std::size_t rank) : by_comp_(rank) {}
  void add(const Monomial& lm, std::uint32_t comp, std::size_t idx) {
    by_comp_[comp].push_back({lm, idx});
  }
  void remove(std::uint32_t comp, std::size_t idx) {
    auto& v = by_comp_[comp];
    v.erase(std::remove_if(v.begin(), v.end(), [&](const auto& e) { return e.second == idx; }),
            v.end());
  }
  const Vec* find(const Term& t, const std::vector<Vec>& polys) const {
    for (const auto& [lm, idx] : by_comp_[t.comp])
      if (lm.divides(t.m)) return &polys[idx];
    return nullptr;
  }

 private:
  std::vector<std::vector<std::pair<Monomial, std::size_t>>> by_comp_;
};

/// Full reduction of f by monic reducers.
inline Vec reduce(Vec f, const ReducerTable& table, const std::vector<Vec>& polys,
                  const ModuleOrder& o) {
  Vec done;
  while (!f.empty()) {
    const Term& t = f.back();
    if (const Vec* g = table.find(t, polys)) {
      Rational c = t.c;
      Monomial u = t.m / g->back().m;
      f = sub_mul(f, c, u, *g, o);
    } else {
      done.push_back(std::move(f.back()));
      f.pop_back();
    }
  }
  std::reverse(done.begin(), done.end());
  return done;
}

}  // namespace gb

/// Reduced Gröbner basis of a submodule of O^rank under a fixed module order.
class GroebnerBasis {
 public:
  GroebnerBasis(ModuleOrder order, std::size_t rank, std::size_t nvars)
      : order_(std::move(order)), rank_(rank), nvars_(nvars), table_(rank) {}

  const ModuleOrder& order() const noexcept { return order_; }
  std::size_t rank() const noexcept { return rank_; }
  std::size_t nvars() const noexcept { return nvars_; }
  std::size_t size() const noexcept { return polys_.size(); }
  bool empty() const noexcept { return polys_.empty(); }
  const std::vector<gb::Vec>& raw() const noexcept { return polys_; }

  std::vector<FreeElement> elements() const {
    std::vector<FreeElement> out;
    out.reserve(polys_.size());
    for (const auto& p : polys_) out.push_back(gb::to_free(p, rank_, nvars_));
    return out;
  }

  /// Leading monomial and component of every element.
  std::vector<std::pair<Monomial, std::size_t>> leading_terms() const {
    std::vector<std::pair<Monomial, std::size_t>> out;
    for (const auto& p : polys_) out.push_back({p.back().m, p.back().comp});
    return out;
  }

  gb::Vec reduce(gb::Vec f) const { return gb::reduce(std::move(f), table_, polys_, order_); }

  FreeElement normal_form(const FreeElement& f) const {
    if (f.rank() != rank_) throw PreconditionError("normal_form: rank mismatch");
    return gb::to_free(reduce(gb::to_vec(f, order_)), rank_, nvars_);
  }

  bool contains(const FreeElement& f) const {
    if (f.rank() != rank_) throw PreconditionError("membership: rank mismatch");
    return reduce(gb::to_vec(f, order_)).empty();
  }

  /// True when every element of `other` reduces to zero here.
  bool contains_all(std::span<const FreeElement> others) const {
    for (const auto& g : others)
      if (!contains(g)) return false;
    return true;
  }

  bool same_module(const GroebnerBasis& other) const {
    if (polys_.size() != other.polys_.size()) return false;
    for (std::size_t i = 0; i < polys_.size(); ++i) {
      const auto& a = polys_[i];
      const auto& b = other.polys_[i];
      if (a.size() != b.size()) return false;
      for (std::size_t j = 0; j < a.size(); ++j)
        if (a[j].comp != b[j].comp || !(a[j].m == b[j].m) || a[j].c != b[j].c) return false;
    }
    return true;
  }

  /// Builds a basis from generators; pair elimination follows Gebauer–Möller.
  static GroebnerBasis compute(std::span<const FreeElement> gens, const ModuleOrder& order,
                               std::size_t rank, std::size_t nvars) {
    GroebnerBasis out(order, rank, nvars);
    Builder b(order, rank);
    std::vector<gb::Vec> input;
    for (const auto& g : gens) {
      if (g.rank() != rank) throw PreconditionError("groebner_basis: rank mismatch");
      gb::Vec v = gb::to_vec(g, order);
      if (!v.empty()) input.push_back(std::move(v));
    }
    // Smaller generators first keeps the run deterministic and usually shorter.
    std::stable_sort(input.begin(), input.end(), [&](const gb::Vec& a, const gb::Vec& c) {
      return gb::cmp(order, a.back(), c.back()) < 0;
    });
    for (auto& v : input) {
      v = b.reduce(std::move(v));
      if (v.empty()) continue;
      long s = gb::sugar_of(v, order);
      b.insert(std::move(v), s);
    }
    b.run();
    out.finish(b.active_polys());
    return out;
  }

 private:
  struct Builder {
    struct Pair {
      long sugar;
      gb::Term lcm;
      std::size_t i, j;
    };
    const ModuleOrder& o;
    std::vector<gb::Vec> polys;
    std::vector<long> sugar;
    std::vector<bool> active;
    gb::ReducerTable table;
    std::vector<Pair> pairs;
    bool ideal_case;

    Builder(const ModuleOrder& ord, std::size_t rank) : o(ord), table(rank), ideal_case(rank == 1) {}

    gb::Vec reduce(gb::Vec v) {
      v = gb::reduce(std::move(v), table, polys, o);
      gb::make_monic(v);
      return v;
    }

    std::vector<gb::Vec> active_polys() const {
      std::vector<gb::Vec> out;
      for (std::size_t i = 0; i < polys.size(); ++i)
        if (active[i]) out.push_back(polys[i]);
      return out;
    }

    Pair make_pair(std::size_t i, std::size_t j) const {
      const auto& a = polys[i].back();
      const auto& b = polys[j].back();
      Monomial l = lcm(a.m, b.m);
      long s = std::max(sugar[i] + o.weight(l / a.m), sugar[j] + o.weight(l / b.m));
      return Pair{s, {l, a.comp, 0}, i, j};
    }

    void insert(gb::Vec h, long s) {
      std::size_t hi = polys.size();
      polys.push_back(std::move(h));
      sugar.push_back(s);
      active.push_back(true);
      const gb::Term& lt = polys[hi].back();

      std::vector<Pair> c;
      for (std::size_t g = 0; g < hi; ++g)
        if (active[g] && polys[g].back().comp == lt.comp) c.push_back(make_pair(g, hi));

      std::vector<Pair> d;
      for (std::size_t k = 0; k < c.size(); ++k) {
        const Pair& p = c[k];
        bool coprime = ideal_case && polys[p.i].back().m.coprime(lt.m);
        bool keep = coprime;
        if (!keep) {
          keep = true;
          for (std::size_t q = k + 1; q < c.size() && keep; ++q)
            if (c[q].lcm.m.divides(p.lcm.m)) keep = false;
          for (const auto& q : d)
            if (keep && q.lcm.m.divides(p.lcm.m)) keep = false;
        }
        if (keep) d.push_back(p);
      }
      std::vector<Pair> e;
      for (const auto& p : d)
        if (!(ideal_case && polys[p.i].back().m.coprime(lt.m))) e.push_back(p);

      std::vector<Pair> kept;
      for (const auto& p : pairs) {
        bool drop = false;
        if (p.lcm.comp == lt.comp && lt.m.divides(p.lcm.m)) {
          Monomial l1 = lcm(polys[p.i].back().m, lt.m);
          Monomial l2 = lcm(polys[p.j].back().m, lt.m);
          drop = !(l1 == p.lcm.m) && !(l2 == p.lcm.m);
        }
        if (!drop) kept.push_back(p);
      }
      kept.insert(kept.end(), e.begin(), e.end());
      pairs = std::move(kept);

      for (std::size_t g = 0; g < hi; ++g) {
        if (active[g] && polys[g].back().comp == lt.comp && lt.m.divides(polys[g].back().m)) {
          active[g] = false;
          table.remove(lt.comp, g);
        }
      }
      table.add(lt.m, lt.comp, hi);
    }

    void run() {
      while (!pairs.empty()) {
        auto best = std::min_element(pairs.begin(), pairs.end(), [&](const Pair& a, const Pair& b) {
          if (a.sugar != b.sugar) return a.sugar < b.sugar;
          int k = gb::cmp(o, a.lcm, b.lcm);
          if (k != 0) return k < 0;
          return std::tie(a.j, a.i) < std::tie(b.j, b.i);
        });
        Pair p = *best;
        pairs.erase(best);
        const gb::Vec& f = polys[p.i];
        const gb::Vec& g = polys[p.j];
        gb::Vec s = gb::sub_mul({}, Rational(-1), p.lcm.m / f.back().m, f, o);
        s = gb::sub_mul(s, Rational(1), p.lcm.m / g.back().m, g, o);
        s = reduce(std::move(s));
        if (!s.empty()) insert(std::move(s), p.sugar);
      }
    }
  };

  void finish(std::vector<gb::Vec> basis) {
    // Drop elements whose leading term is divisible by another's.
    std::vector<bool> redundant_flag(basis.size(), false);
    for (std::size_t i = 0; i < basis.size(); ++i) {
      const auto& lt = basis[i].back();
      bool redundant = false;
      for (std::size_t j = 0; j < basis.size() && !redundant; ++j) {
        if (i == j) continue;
        const auto& lu = basis[j].back();
        if (lu.comp == lt.comp && lu.m.divides(lt.m) && (!(lu.m == lt.m) || j < i))
          redundant = true;
      }
      redundant_flag[i] = redundant;
    }
    std::vector<gb::Vec> minimal;
    for (std::size_t i = 0; i < basis.size(); ++i)
      if (!redundant_flag[i]) minimal.push_back(std::move(basis[i]));
    std::sort(minimal.begin(), minimal.end(), [&](const gb::Vec& a, const gb::Vec& b) {
      return gb::cmp(order_, a.back(), b.back()) < 0;
    });
    polys_ = minimal;
    for (std::size_t i = 0; i < polys_.size(); ++i) table_.add(polys_[i].back().m, polys_[i].back().comp, i);
    // Tail-reduce each element by the others; leading terms are untouched.
    for (std::size_t i = 0; i < polys_.size(); ++i) {
      gb::Term lead = polys_[i].back();
      gb::Vec tail(polys_[i].begin(), polys_[i].end() - 1);
      gb::Vec red = reduce(std::move(tail));
      red.push_back(std::move(lead));
      polys_[i] = std::move(red);
      gb::make_monic(polys_[i]);
    }
  }

  ModuleOrder order_;
  std::size_t rank_;
  std::size_t nvars_;
  std::vector<gb::Vec> polys_;
  gb::ReducerTable table_;
};

/// Position-over-term basis under a monomial order.
inline GroebnerBasis groebner_basis(std::span<const FreeElement> gens, const MonomialOrder& order,
                                    std::size_t rank, std::size_t nvars) {
  return GroebnerBasis::compute(gens, ModuleOrder::pot(order, rank), rank, nvars);
}

inline GroebnerBasis groebner_basis(std::span<const FreeElement> gens, const ModuleOrder& order) {
  if (gens.empty()) throw PreconditionError("groebner_basis: empty input needs explicit rank");
  return GroebnerBasis::compute(gens, order, gens[0].rank(), gens[0].nvars());
}

/// Ideal basis from polynomials.
inline GroebnerBasis ideal_basis(std::span<const Poly> gens, const MonomialOrder& order,
                                 std::size_t nvars) {
  std::vector<FreeElement> v;
  for (const auto& g : gens) v.push_back(FreeElement(std::vector<Poly>{g}));
  return groebner_basis(v, order, 1, nvars);
}

}  // namespace logforms
