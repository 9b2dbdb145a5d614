#pragma once

#include <optional>
#include <string>
#include <vector>

#include "logforms/algebra/error.hpp"
#include "logforms/algebra/order.hpp"
#include "logforms/algebra/quasihomogeneous.hpp"
#include "logforms/algebra/syzygy.hpp"

namespace logforms {

/// Hypersurface in affine space given by a reduced equation.
struct Divisor {
  std::vector<std::string> vars;
  Poly h;
  std::optional<Weights> weights;

  std::size_t nvars() const noexcept { return vars.size(); }
};

/// Throws PreconditionError when h has a repeated factor. Over a field of
/// characteristic zero this happens exactly when h and its partials share a
/// nonconstant common factor.
inline void check_reduced(const Poly& h) {
  if (h.is_zero()) throw PreconditionError("divisor equation is zero");
  if (h.is_constant()) throw PreconditionError("divisor equation is a nonzero constant");
  std::vector<Poly> ps{h};
  for (std::size_t i = 0; i < h.nvars(); ++i) ps.push_back(h.derivative(i));
  Poly g = gcd(ps);
  if (!g.is_constant()) throw PreconditionError("non-reduced equation: repeated factor detected");
}

/// Validates weights and reducedness.
inline Divisor make_divisor(std::vector<std::string> vars, Poly h,
                            std::optional<Weights> weights = std::nullopt) {
  if (h.nvars() != vars.size()) throw PreconditionError("divisor: ring size mismatch");
  if (weights) {
    if (weights->size() != vars.size()) throw PreconditionError("divisor: weight count mismatch");
    for (long w : *weights)
      if (w <= 0) throw PreconditionError("divisor: weights must be positive");
    if (!h.homogeneous_degree(*weights))
      throw PreconditionError("divisor: equation is not weighted homogeneous for the given weights");
  }
  check_reduced(h);
  return Divisor{std::move(vars), std::move(h), std::move(weights)};
}

/// Declared weights, or positive weights found by search.
inline std::optional<Weights> effective_weights(const Divisor& d) {
  if (d.weights) return d.weights;
  return is_quasihomogeneous(d.h);
}

/// The order used for module computations attached to d.
inline MonomialOrder divisor_order(const Divisor& d) {
  if (auto w = effective_weights(d)) return MonomialOrder::wdegrevlex(*w);
  return MonomialOrder::degrevlex(d.nvars());
}

/// Grading on vector fields: deg(x^a ∂_i) = w·a − w_i.
inline Grading field_grading(const Weights& w) {
  Grading g{w, {}};
  for (long x : w) g.shifts.push_back(-x);
  return g;
}

}  // namespace logforms
