#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "logforms/algebra/error.hpp"
#include "logforms/algebra/monomial.hpp"
#include "logforms/algebra/rational.hpp"

namespace logforms {

/// Weight vector of a grading; entries are non-negative, usually positive.
using Weights = std::vector<long>;

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Terms are stored in a std::map keyed by exponent vector (lexicographic storage
/// order). Zero coefficients are never stored, and every exponent vector has
/// exactly nvars() entries.
class Poly {
 public:
  using TermMap = std::map<Monomial, Rational>;

  Poly() = default;
  explicit Poly(std::size_t nvars) : n_(nvars) {}

  static Poly constant(std::size_t nvars, const Rational& c) {
    Poly p(nvars);
    if (c != 0) p.terms_.emplace(Monomial(nvars), c);
    return p;
  }
  static Poly variable(std::size_t nvars, std::size_t i) {
    Poly p(nvars);
    p.terms_.emplace(Monomial::variable(nvars, i), Rational(1));
    return p;
  }
  static Poly monomial(const Monomial& m, const Rational& c = 1) {
    Poly p(m.size());
    if (c != 0) p.terms_.emplace(m, c);
    return p;
  }

  std::size_t nvars() const noexcept { return n_; }
  const TermMap& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
  }
  Rational constant_term() const {
    auto it = terms_.find(Monomial(n_));
    return it == terms_.end() ? Rational(0) : it->second;
  }
  Rational coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  void add_term(const Monomial& m, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Poly& operator+=(const Poly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  Poly& operator*=(const Rational& c) {
    if (c == 0) {
      terms_.clear();
    } else {
      for (auto& [m, v] : terms_) v *= c;
    }
    return *this;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator-(Poly a) { return a *= Rational(-1); }
  friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
  friend Poly operator*(const Rational& c, Poly a) { return a *= c; }
  friend Poly operator*(const Poly& a, const Poly& b) {
    Poly r(a.n_);
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
    return r;
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  friend bool operator==(const Poly& a, const Poly& b) {
    return a.n_ == b.n_ && a.terms_ == b.terms_;
  }

  Poly mul_monomial(const Monomial& m) const {
    Poly r(n_);
    for (const auto& [t, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), t * m, c);
    return r;
  }

  Poly pow(unsigned e) const {
    Poly r = constant(n_, 1);
    Poly b = *this;
    while (e != 0) {
      if (e & 1U) r = r * b;
      e >>= 1U;
      if (e != 0) b = b * b;
    }
    return r;
  }

  Poly derivative(std::size_t i) const {
    Poly r(n_);
    for (const auto& [m, c] : terms_) {
      if (m[i] == 0) continue;
      Monomial d = m;
      d.set(i, m[i] - 1);
      r.add_term(d, c * m[i]);
    }
    return r;
  }

  int total_degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
    return d;
  }
  /// Largest weighted degree of a term (-1 for the zero polynomial).
  long max_weighted_degree(std::span<const long> w) const {
    long d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, m.weighted_degree(w));
    return d;
  }
  /// Common weighted degree of all terms, or nullopt when h is not homogeneous
  /// (zero counts as homogeneous of every degree; nullopt is returned for it too).
  std::optional<long> homogeneous_degree(std::span<const long> w) const {
    std::optional<long> deg;
    for (const auto& [m, c] : terms_) {
      long d = m.weighted_degree(w);
      if (deg && *deg != d) return std::nullopt;
      deg = d;
    }
    return deg;
  }

  /// Substitutes poly `subs[i]` for variable i; all substitutes share one ring.
  Poly compose(std::span<const Poly> subs) const {
    if (subs.size() != n_) throw std::invalid_argument("compose: substitution arity mismatch");
    std::size_t target_n = subs.empty() ? 0 : subs[0].nvars();
    Poly r(target_n);
    std::vector<std::vector<Poly>> powers(n_);
    for (const auto& [m, c] : terms_) {
      Poly t = constant(target_n, c);
      for (std::size_t i = 0; i < n_; ++i) {
        int e = m[i];
        if (e == 0) continue;
        auto& pw = powers[i];
        if (pw.empty()) pw.push_back(constant(target_n, 1));
        while (static_cast<int>(pw.size()) <= e) pw.push_back(pw.back() * subs[i]);
        t = t * pw[static_cast<std::size_t>(e)];
      }
      r += t;
    }
    return r;
  }

  /// Moves the polynomial into a ring with `nvars` variables; variable i of the
  /// new ring is old variable source[i], or absent (exponent 0) when source[i] < 0.
  /// Terms that involve a dropped variable are discarded (i.e. it is set to 0).
  Poly remap(std::size_t nvars, std::span<const int> source) const {
    std::vector<bool> kept(n_, false);
    for (int s : source)
      if (s >= 0) kept[static_cast<std::size_t>(s)] = true;
    Poly r(nvars);
    for (const auto& [m, c] : terms_) {
      bool dropped = false;
      for (std::size_t i = 0; i < n_; ++i)
        if (!kept[i] && m[i] != 0) dropped = true;
      if (!dropped) r.add_term(m.remap(nvars, source), c);
    }
    return r;
  }

  /// Sets the listed variables to zero (ring unchanged).
  Poly set_zero(std::span<const std::size_t> vars) const {
    Poly r(n_);
    for (const auto& [m, c] : terms_) {
      bool vanish = false;
      for (std::size_t v : vars)
        if (m[v] != 0) vanish = true;
      if (!vanish) r.terms_.emplace_hint(r.terms_.end(), m, c);
    }
    return r;
  }

 private:
  std::size_t n_ = 0;
  TermMap terms_;
};

/// Quotient f/g when g divides f exactly, nullopt otherwise.
inline std::optional<Poly> divide_exact(const Poly& f, const Poly& g) {
  if (g.is_zero()) throw std::invalid_argument("divide_exact: division by zero");
  Poly rem = f;
  Poly q(f.nvars());
  // The storage order is lex, a monomial order, so the last term leads.
  const auto& [glm, glc] = *g.terms().rbegin();
  while (!rem.is_zero()) {
    const auto& [lm, lc] = *rem.terms().rbegin();
    if (!glm.divides(lm)) return std::nullopt;
    Monomial m = lm / glm;
    Rational c = lc / glc;
    q.add_term(m, c);
    Poly t = g.mul_monomial(m);
    t *= c;
    rem -= t;
  }
  return q;
}

/// Euler-style derivation sum_i chi_i * d f / d x_i.
inline Poly apply_field(std::span<const Poly> chi, const Poly& f) {
  Poly r(f.nvars());
  for (std::size_t i = 0; i < chi.size(); ++i) {
    if (chi[i].is_zero()) continue;
    r += chi[i] * f.derivative(i);
  }
  return r;
}

}  // namespace logforms
