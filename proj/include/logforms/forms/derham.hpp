#pragma once

#include <map>
#include <vector>

#include "logforms/algebra/linalg.hpp"
#include "logforms/forms/checked.hpp"

namespace logforms {

/// Degree slices of a complex of form modules M^0 → M^1 → … → M^n with the
/// exterior derivative. deg(x^a dx_I) = w·a + Σ_{i∈I} w_i. Variables of
/// weight zero are handled through a secondary filtration by their exponent
/// (plus one for their differential), which d preserves: the order refines
/// it, so standard monomials of secondary degree ≤ cap span a subcomplex.
class SliceComplex {
 public:
  SliceComplex(std::vector<std::vector<FreeElement>> relations, Weights w, int secondary_cap)
      : n_(w.size()), w_(std::move(w)), cap_(secondary_cap), ext_(n_) {
    for (long x : w_)
      if (x < 0) throw PreconditionError("de Rham: negative weight");
    for (std::size_t i = 0; i < n_; ++i)
      if (w_[i] == 0) zero_.push_back(i);
    if (relations.size() != n_ + 1) throw PreconditionError("de Rham: complex must have n+1 terms");
    for (std::size_t k = 0; k <= n_; ++k) {
      gbs_.push_back(GroebnerBasis::compute(relations[k], order_for(k), ext_.rank(k), n_));
      stairs_.push_back(staircase_of(gbs_.back()));
    }
  }

  std::size_t nvars() const noexcept { return n_; }
  bool filtered() const noexcept { return !zero_.empty(); }
  const GroebnerBasis& basis(std::size_t k) const { return gbs_[k]; }

  /// Standard monomials of M^k in weighted degree ℓ.
  std::vector<std::pair<Monomial, std::size_t>> slice_basis(std::size_t k, long ell) const {
    std::vector<std::pair<Monomial, std::size_t>> out;
    for (std::size_t c = 0; c < ext_.rank(k); ++c) {
      auto mask = ext_.basis(k)[c];
      long rest = ell - ext_.form_weight(mask, w_);
      long sec_mask = secondary_of_mask(mask);
      for (const auto& m : monomials_of_degree(n_, w_, rest, cap_)) {
        if (secondary(m) + sec_mask > cap_) continue;
        bool standard = true;
        for (const auto& l : stairs_[k][c])
          if (l.divides(m)) {
            standard = false;
            break;
          }
        if (standard) out.push_back({m, c});
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  /// Rank of d : M^k_ℓ → M^{k+1}_ℓ, given the slice bases.
  std::size_t d_rank(std::size_t k, const std::vector<std::pair<Monomial, std::size_t>>& src,
                     const std::vector<std::pair<Monomial, std::size_t>>& dst) const {
    if (k >= n_) return 0;
    std::map<std::pair<Monomial, std::size_t>, std::size_t> pos;
    for (std::size_t i = 0; i < dst.size(); ++i) pos[dst[i]] = i;
    EchelonBasis e;
    for (const auto& [m, c] : src) {
      FreeElement form(ext_.rank(k), n_);
      form[c] = Poly::monomial(m);
      FreeElement nf = gbs_[k + 1].normal_form(ext_.d(form, k));
      SparseRow row;
      for (std::size_t cc = 0; cc < nf.rank(); ++cc)
        for (const auto& [mm, q] : nf[cc].terms()) {
          auto it = pos.find({mm, cc});
          if (it == pos.end()) throw InvariantError("de Rham: image leaves the slice");
          row[it->second] = q;
        }
      e.insert(std::move(row));
    }
    return e.rank();
  }

 private:
  ModuleOrder order_for(std::size_t k) const {
    std::vector<Weights> rows{w_};
    std::vector<std::vector<long>> shifts(1);
    for (auto mask : ext_.basis(k)) shifts[0].push_back(ext_.form_weight(mask, w_));
    if (filtered()) {
      Weights sec(n_, 0);
      for (auto i : zero_) sec[i] = 1;
      rows.push_back(sec);
      shifts.emplace_back();
      for (auto mask : ext_.basis(k)) shifts[1].push_back(secondary_of_mask(mask));
    }
    return ModuleOrder(MonomialOrder::weight_matrix(rows), std::vector<int>(ext_.rank(k), 0), shifts);
  }

  long secondary(const Monomial& m) const {
    long s = 0;
    for (auto i : zero_) s += m[i];
    return s;
  }
  long secondary_of_mask(ExteriorAlgebra::Mask mask) const {
    long s = 0;
    for (auto i : zero_) s += (mask >> i) & 1u;
    return s;
  }

  static std::vector<std::vector<Monomial>> staircase_of(const GroebnerBasis& gb) {
    std::vector<std::vector<Monomial>> by(gb.rank());
    for (const auto& [m, c] : gb.leading_terms()) by[c].push_back(m);
    return by;
  }

  std::size_t n_;
  Weights w_;
  int cap_;
  ExteriorAlgebra ext_;
  std::vector<std::size_t> zero_;
  std::vector<GroebnerBasis> gbs_;
  std::vector<std::vector<std::vector<Monomial>>> stairs_;
};

struct SliceReport {
  long degree = 0;
  std::vector<std::size_t> dims;
  std::vector<std::size_t> ranks;
  std::vector<std::size_t> cohomology;
  bool exact = false;
};

struct DeRhamReport {
  std::vector<SliceReport> slices;
  bool exact = true;
  bool filtered = false;
  int secondary_cap = 0;
};

/// Per-degree exactness of 0 → C → M^0 → … → M^n → 0. In degree zero the
/// augmentation accounts for one dimension of H^0.
inline DeRhamReport de_rham_check(const SliceComplex& cx, long degree_bound) {
  DeRhamReport rep;
  rep.filtered = cx.filtered();
  std::size_t n = cx.nvars();
  for (long ell = 0; ell <= degree_bound; ++ell) {
    SliceReport s;
    s.degree = ell;
    std::vector<std::vector<std::pair<Monomial, std::size_t>>> bases;
    for (std::size_t k = 0; k <= n; ++k) {
      bases.push_back(cx.slice_basis(k, ell));
      s.dims.push_back(bases.back().size());
    }
    for (std::size_t k = 0; k < n; ++k) s.ranks.push_back(cx.d_rank(k, bases[k], bases[k + 1]));
    s.exact = true;
    for (std::size_t k = 0; k <= n; ++k) {
      std::size_t out = k < n ? s.ranks[k] : 0, in = k > 0 ? s.ranks[k - 1] : 0;
      std::size_t h = s.dims[k] - out - in;
      s.cohomology.push_back(h);
      std::size_t expected = (ell == 0 && k == 0) ? 1 : 0;
      if (h != expected) s.exact = false;
    }
    rep.exact = rep.exact && s.exact;
    rep.slices.push_back(std::move(s));
  }
  return rep;
}

/// The complex of modules Ω̌^0 … Ω̌^n attached to a presentation builder.
template <class Builder>
std::vector<std::vector<FreeElement>> complex_relations(std::size_t n, Builder&& build) {
  std::vector<std::vector<FreeElement>> out;
  for (std::size_t k = 0; k <= n; ++k) out.push_back(build(k).presentation.relations);
  return out;
}

}  // namespace logforms
