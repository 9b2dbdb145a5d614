#pragma once

#include <vector>

#include "logforms/logarithmic/divisor.hpp"

namespace logforms {

/// A logarithmic vector field with its tangency witness: χ(h) = witness·h.
struct LogField {
  FreeElement field;
  Poly witness;
};

inline Poly apply_field(const FreeElement& chi, const Poly& f) {
  return apply_field(std::span<const Poly>(chi.entries()), f);
}

/// Generators of Der(log D), read off the syzygies of (∂h/∂x_1, …, ∂h/∂x_n, h).
inline std::vector<LogField> derlog(const Divisor& d) {
  check_reduced(d.h);
  std::size_t n = d.nvars();
  std::vector<FreeElement> cols;
  for (std::size_t i = 0; i < n; ++i) cols.push_back(FreeElement(std::vector<Poly>{d.h.derivative(i)}));
  cols.push_back(FreeElement(std::vector<Poly>{d.h}));
  std::vector<LogField> out;
  for (const auto& s : syzygy_module(cols, divisor_order(d))) {
    FreeElement chi(std::vector<Poly>(s.entries().begin(), s.entries().begin() + n));
    if (chi.is_zero()) continue;
    Poly c = -s[n];
    if (apply_field(chi, d.h) != c * d.h) throw InvariantError("derlog: witness identity fails");
    out.push_back({std::move(chi), std::move(c)});
  }
  return out;
}

inline std::vector<FreeElement> fields_of(const std::vector<LogField>& fs) {
  std::vector<FreeElement> out;
  for (const auto& f : fs) out.push_back(f.field);
  return out;
}

/// Generators of Der(log h) = {χ : χ(h) = 0}.
inline std::vector<FreeElement> derlog_h(const Divisor& d) {
  check_reduced(d.h);
  std::vector<FreeElement> cols;
  for (std::size_t i = 0; i < d.nvars(); ++i)
    cols.push_back(FreeElement(std::vector<Poly>{d.h.derivative(i)}));
  auto out = syzygy_module(cols, divisor_order(d));
  for (const auto& chi : out)
    if (!apply_field(chi, d.h).is_zero()) throw InvariantError("derlog_h: field does not annihilate h");
  return out;
}

/// Σ w_i x_i ∂/∂x_i.
inline FreeElement euler_field(const Weights& w) {
  std::size_t n = w.size();
  FreeElement chi(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (w[i] <= 0) throw PreconditionError("euler_field: weights must be positive");
    chi[i] = Rational(w[i]) * Poly::variable(n, i);
  }
  return chi;
}

}  // namespace logforms
