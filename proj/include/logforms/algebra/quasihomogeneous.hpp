#pragma once

#include <functional>
#include <numeric>
#include <optional>
#include <vector>

#include "logforms/algebra/linalg.hpp"
#include "logforms/algebra/poly.hpp"

namespace logforms {

/// Search limits when the solution space has dimension > 1.
inline constexpr long kWeightSearchCap = 64;
inline constexpr long kWeightSearchBudget = 200000;

namespace detail {

inline bool all_degrees_equal(const Poly& h, const Weights& w) {
  return h.homogeneous_degree(w).has_value();
}

inline Weights lowest_terms(Weights w) {
  long g = 0;
  for (long x : w) g = std::gcd(g, x);
  if (g > 1)
    for (auto& x : w) x /= g;
  return w;
}

}  // namespace detail

/// Positive integer weights making h weighted homogeneous, in lowest terms.
/// A one-dimensional solution space is solved exactly; otherwise all-ones is
/// tried first, then positive vectors by increasing total weight.
inline std::optional<Weights> is_quasihomogeneous(const Poly& h) {
  if (h.is_zero()) throw PreconditionError("is_quasihomogeneous: zero polynomial");
  std::size_t n = h.nvars();
  if (n == 0) return Weights{};
  const Monomial& first = h.terms().begin()->first;
  std::vector<std::vector<Rational>> rows;
  for (const auto& [m, c] : h.terms()) {
    std::vector<Rational> r(n);
    bool nonzero = false;
    for (std::size_t i = 0; i < n; ++i) {
      r[i] = m[i] - first[i];
      nonzero = nonzero || r[i] != 0;
    }
    if (nonzero) rows.push_back(std::move(r));
  }
  Weights ones(n, 1);
  if (detail::all_degrees_equal(h, ones)) return ones;
  auto ns = nullspace(rows, n);
  if (ns.empty()) return std::nullopt;
  if (ns.size() == 1) {
    auto v = ns[0];
    int sign = 0;
    for (const auto& x : v) {
      int s = sgn(x);
      if (s == 0 || (sign != 0 && s != sign)) return std::nullopt;
      sign = s;
    }
    mpz_class den = 1;
    for (const auto& x : v) den = lcm(den, mpz_class(x.get_den()));
    Weights w;
    for (const auto& x : v) {
      mpq_class y = x * den * sign;
      w.push_back(y.get_num().get_si());
    }
    return detail::lowest_terms(w);
  }
  // Enumerate compositions of the total weight into n positive parts.
  Weights w(n, 1);
  long budget = kWeightSearchBudget;
  for (long total = static_cast<long>(n); total <= kWeightSearchCap; ++total) {
    std::optional<Weights> found;
    std::function<void(std::size_t, long)> walk = [&](std::size_t i, long rest) {
      if (found || budget <= 0) return;
      if (i + 1 == n) {
        --budget;
        w[i] = rest;
        if (detail::all_degrees_equal(h, w)) found = w;
        return;
      }
      for (long x = 1; x <= rest - static_cast<long>(n - i - 1); ++x) {
        w[i] = x;
        walk(i + 1, rest - x);
        if (found) return;
      }
    };
    walk(0, total);
    if (found) return detail::lowest_terms(*found);
  }
  return std::nullopt;
}

}  // namespace logforms
