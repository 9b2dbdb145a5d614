#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "logforms/algebra/matrix.hpp"
#include "logforms/algebra/minimal.hpp"
#include "logforms/logarithmic/derlog.hpp"

namespace logforms {

/// n logarithmic fields with det(theta) = unit·h. Column j of theta holds the
/// coefficients of the j-th field.
struct LogBasis {
  PolyMatrix theta;
  std::vector<Poly> witnesses;
  Rational unit;

  std::size_t size() const noexcept { return theta.size(); }
  /// Entry in row i (coordinate) and column j (field).
  const Poly& at(std::size_t i, std::size_t j) const { return theta[j][i]; }
};

struct SaitoResult {
  std::optional<LogBasis> basis;
  std::string reason;
};

inline SaitoResult saito_check(const Divisor& d, const std::vector<FreeElement>& candidate) {
  std::size_t n = d.nvars();
  if (candidate.size() != n) return {std::nullopt, "expected " + std::to_string(n) + " fields"};
  LogBasis b;
  for (std::size_t j = 0; j < n; ++j) {
    if (candidate[j].rank() != n) throw PreconditionError("saito_check: field rank differs from ring size");
    Poly img = apply_field(candidate[j], d.h);
    Poly c(n);
    if (!img.is_zero()) {
      auto q = divide_exact(img, d.h);
      if (!q) return {std::nullopt, "field " + std::to_string(j) + " is not logarithmic"};
      c = *q;
    }
    b.theta.push_back(candidate[j]);
    b.witnesses.push_back(std::move(c));
  }
  Poly det = determinant(b.theta, n);
  if (det.is_zero()) return {std::nullopt, "determinant is zero"};
  auto q = divide_exact(det, d.h);
  if (!q || !q->is_constant()) return {std::nullopt, "determinant is not a constant multiple of h"};
  b.unit = q->constant_term();
  return {std::move(b), ""};
}

struct FreenessVerdict {
  enum class Kind { Free, NotFree, Inconclusive };
  Kind kind = Kind::Inconclusive;
  std::optional<LogBasis> basis;
  std::size_t generator_count = 0;
  std::string reason;
  /// Whether the verdict rests on a positive grading (a local statement).
  bool graded = false;
};

inline constexpr std::size_t kSaitoSearchCap = 4096;

namespace detail {

/// Tries n-subsets of the pool in lexicographic order.
inline std::optional<LogBasis> saito_search(const Divisor& d, const std::vector<FreeElement>& pool,
                                            std::string& reason) {
  std::size_t n = d.nvars(), tried = 0;
  if (pool.size() < n) {
    reason = "fewer generators than variables";
    return std::nullopt;
  }
  for (const auto& idx : subsets(pool.size(), n)) {
    if (++tried > kSaitoSearchCap) {
      reason = "subset search cap reached";
      return std::nullopt;
    }
    std::vector<FreeElement> cand;
    for (auto i : idx) cand.push_back(pool[i]);
    auto r = saito_check(d, cand);
    if (r.basis) return r.basis;
  }
  reason = "no subset of generators passes the Saito test";
  return std::nullopt;
}

/// Drops generators lying in the module spanned by the others.
inline std::vector<FreeElement> prune(std::vector<FreeElement> gens, const MonomialOrder& order) {
  if (gens.empty()) return gens;
  std::size_t n = gens[0].nvars(), r = gens[0].rank();
  for (std::size_t i = gens.size(); i-- > 0;) {
    std::vector<FreeElement> rest;
    for (std::size_t j = 0; j < gens.size(); ++j)
      if (j != i) rest.push_back(gens[j]);
    if (!rest.empty() && groebner_basis(rest, order, r, n).contains(gens[i])) gens = std::move(rest);
  }
  return gens;
}

/// The reduced Gröbner basis of Der(log D), when it has n elements, is a
/// Saito basis that does not depend on which generators were found first.
inline LogBasis canonical_basis(const Divisor& d, LogBasis b) {
  std::size_t n = d.nvars();
  auto els = groebner_basis(b.theta, divisor_order(d), n, n).elements();
  if (els.size() != n) return b;
  auto first_entry = [n](const FreeElement& f) {
    std::size_t i = 0;
    while (i < n && f[i].is_zero()) ++i;
    return i;
  };
  std::stable_sort(els.begin(), els.end(),
                   [&](const FreeElement& a, const FreeElement& c) { return first_entry(a) < first_entry(c); });
  auto r = saito_check(d, els);
  return r.basis ? std::move(*r.basis) : b;
}

}  // namespace detail

inline FreenessVerdict is_free(const Divisor& d) {
  std::size_t n = d.nvars();
  auto fields = fields_of(derlog(d));
  auto order = divisor_order(d);
  FreenessVerdict v;
  if (auto w = effective_weights(d)) {
    v.graded = true;
    auto mins = minimal_generators(fields, field_grading(*w), order);
    v.generator_count = mins.size();
    if (mins.size() < n) throw InvariantError("is_free: fewer minimal generators than variables");
    if (mins.size() > n) {
      v.kind = FreenessVerdict::Kind::NotFree;
      v.reason = "minimal generator count exceeds the number of variables";
      return v;
    }
    auto r = saito_check(d, mins);
    if (!r.basis) r.basis = detail::saito_search(d, fields, r.reason);
    if (r.basis) {
      v.kind = FreenessVerdict::Kind::Free;
      v.basis = detail::canonical_basis(d, std::move(*r.basis));
    } else {
      v.reason = r.reason;
    }
    return v;
  }
  auto pool = detail::prune(fields, order);
  v.generator_count = pool.size();
  std::string reason;
  if (auto b = detail::saito_search(d, pool, reason)) {
    v.kind = FreenessVerdict::Kind::Free;
    v.basis = detail::canonical_basis(d, std::move(*b));
  } else {
    v.reason = "no positive weights; " + reason;
  }
  return v;
}

inline const char* to_string(FreenessVerdict::Kind k) {
  switch (k) {
    case FreenessVerdict::Kind::Free: return "FREE";
    case FreenessVerdict::Kind::NotFree: return "NOT_FREE";
    default: return "INCONCLUSIVE";
  }
}

}  // namespace logforms
