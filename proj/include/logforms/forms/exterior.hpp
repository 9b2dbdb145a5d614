#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "logforms/algebra/free_module.hpp"
#include "logforms/algebra/matrix.hpp"

namespace logforms {

/// Polynomial differential forms on affine n-space. A k-form is a
/// FreeElement of rank C(n,k) in the basis dx_I, I running over k-subsets in
/// lexicographic order. The coefficient ring may have extra trailing
/// variables (parameters) without differentials, giving relative forms.
class ExteriorAlgebra {
 public:
  using Mask = std::uint32_t;

  explicit ExteriorAlgebra(std::size_t n, std::optional<std::size_t> ring_vars = std::nullopt)
      : n_(n), ring_(ring_vars.value_or(n)), masks_(n + 1), index_(n + 1) {
    if (ring_ < n_) throw PreconditionError("exterior algebra: ring smaller than form variables");
    for (std::size_t k = 0; k <= n; ++k) {
      for (const auto& s : subsets(n, k)) {
        Mask m = 0;
        for (auto i : s) m |= Mask{1} << i;
        index_[k].emplace_back(m, masks_[k].size());
        masks_[k].push_back(m);
      }
      std::sort(index_[k].begin(), index_[k].end());
    }
  }

  std::size_t nvars() const noexcept { return n_; }
  std::size_t ring_vars() const noexcept { return ring_; }
  std::size_t rank(std::size_t k) const { return k <= n_ ? masks_[k].size() : 0; }
  const std::vector<Mask>& basis(std::size_t k) const { return masks_[k]; }

  std::size_t index(Mask m) const {
    std::size_t k = static_cast<std::size_t>(std::popcount(m));
    const auto& v = index_[k];
    auto it = std::lower_bound(v.begin(), v.end(), std::make_pair(m, std::size_t{0}));
    return it->second;
  }

  /// Sign of dx_A ∧ dx_B relative to dx_{A∪B}; zero if they overlap.
  static int wedge_sign(Mask a, Mask b) {
    if (a & b) return 0;
    int inversions = 0;
    for (Mask bb = b; bb; bb &= bb - 1) {
      int j = std::countr_zero(bb);
      inversions += std::popcount(a >> (j + 1));
    }
    return (inversions & 1) ? -1 : 1;
  }

  FreeElement zero(std::size_t k) const { return FreeElement(rank(k), ring_); }

  /// The basis form dx_I with coefficient 1.
  FreeElement basis_form(Mask m) const {
    std::size_t k = static_cast<std::size_t>(std::popcount(m));
    FreeElement f = zero(k);
    f[index(m)] = Poly::constant(ring_, 1);
    return f;
  }

  FreeElement volume() const { return basis_form(n_ == 32 ? ~Mask{0} : (Mask{1} << n_) - 1); }

  FreeElement wedge(const FreeElement& a, std::size_t ka, const FreeElement& b, std::size_t kb) const {
    FreeElement r = zero(ka + kb);
    if (ka + kb > n_) return r;
    for (std::size_t i = 0; i < a.rank(); ++i) {
      if (a[i].is_zero()) continue;
      for (std::size_t j = 0; j < b.rank(); ++j) {
        if (b[j].is_zero()) continue;
        Mask ma = masks_[ka][i], mb = masks_[kb][j];
        int s = wedge_sign(ma, mb);
        if (s == 0) continue;
        Poly t = a[i] * b[j];
        if (s > 0) r[index(ma | mb)] += t;
        else r[index(ma | mb)] -= t;
      }
    }
    return r;
  }

  /// dx_i as a 1-form.
  FreeElement dx(std::size_t i) const { return basis_form(Mask{1} << i); }

  /// Exact 1-form df.
  FreeElement differential(const Poly& f) const {
    FreeElement r = zero(1);
    for (std::size_t i = 0; i < n_; ++i) r[i] = f.derivative(i);
    return r;
  }

  /// Exterior derivative of a k-form (relative to the parameters).
  FreeElement d(const FreeElement& w, std::size_t k) const {
    FreeElement r = zero(k + 1);
    if (k >= n_) return r;
    for (std::size_t i = 0; i < w.rank(); ++i) {
      if (w[i].is_zero()) continue;
      Mask m = masks_[k][i];
      for (std::size_t j = 0; j < n_; ++j) {
        int s = wedge_sign(Mask{1} << j, m);
        if (s == 0) continue;
        Poly t = w[i].derivative(j);
        if (t.is_zero()) continue;
        if (s > 0) r[index(m | Mask{1} << j)] += t;
        else r[index(m | Mask{1} << j)] -= t;
      }
    }
    return r;
  }

  /// Contraction ι_χ of a k-form by the vector field χ = Σ χ_i ∂/∂x_i.
  FreeElement contract(const FreeElement& chi, const FreeElement& w, std::size_t k) const {
    if (k == 0) return zero(0);
    FreeElement r = zero(k - 1);
    for (std::size_t i = 0; i < w.rank(); ++i) {
      if (w[i].is_zero()) continue;
      Mask m = masks_[k][i];
      int pos = 0;
      for (Mask mm = m; mm; mm &= mm - 1, ++pos) {
        int j = std::countr_zero(mm);
        if (chi[j].is_zero()) continue;
        Poly t = chi[j] * w[i];
        std::size_t target = index(m & ~(Mask{1} << j));
        if (pos % 2 == 0) r[target] += t;
        else r[target] -= t;
      }
    }
    return r;
  }

  /// Pull-back of a k-form on this space along φ : source -> this space,
  /// given by its components (polynomials in the source variables).
  FreeElement pullback(const FreeElement& w, std::size_t k, std::span<const Poly> phi,
                       const ExteriorAlgebra& source) const {
    std::vector<FreeElement> dphi;
    for (const auto& p : phi) dphi.push_back(source.differential(p));
    FreeElement r = source.zero(k);
    for (std::size_t i = 0; i < w.rank(); ++i) {
      if (w[i].is_zero()) continue;
      FreeElement acc = source.zero(0);
      acc[0] = w[i].compose(phi);
      std::size_t deg = 0;
      for (Mask mm = masks_[k][i]; mm; mm &= mm - 1) {
        acc = source.wedge(acc, deg, dphi[std::countr_zero(mm)], 1);
        ++deg;
      }
      r += acc;
    }
    return r;
  }

  /// Weighted degree of dx_I.
  long form_weight(Mask m, const Weights& w) const {
    long s = 0;
    for (Mask mm = m; mm; mm &= mm - 1) s += w[std::countr_zero(mm)];
    return s;
  }

  /// Grading on k-forms: deg(x^a dx_I) = w·a + Σ_{i∈I} w_i.
  Grading grading(std::size_t k, const Weights& w) const {
    Grading g{w, {}};
    for (Mask m : masks_[k]) g.shifts.push_back(form_weight(m, w));
    return g;
  }

  /// Degree-k part of the exterior ideal generated by forms of the given degrees.
  std::vector<FreeElement> ideal_part(std::span<const std::pair<FreeElement, std::size_t>> gens,
                                      std::size_t k) const {
    std::vector<FreeElement> out;
    for (const auto& [g, kg] : gens) {
      if (kg > k) continue;
      for (Mask m : masks_[k - kg]) {
        FreeElement x = wedge(g, kg, basis_form(m), k - kg);
        if (!x.is_zero()) out.push_back(std::move(x));
      }
    }
    return out;
  }

 private:
  std::size_t n_, ring_;
  std::vector<std::vector<Mask>> masks_;
  std::vector<std::vector<std::pair<Mask, std::size_t>>> index_;
};

}  // namespace logforms
