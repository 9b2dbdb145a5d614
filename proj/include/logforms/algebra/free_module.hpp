#pragma once

#include <optional>
#include <vector>

#include "logforms/algebra/error.hpp"
#include "logforms/algebra/poly.hpp"

namespace logforms {

/// Element of a free module O^r, written in a fixed basis e_0..e_{r-1}.
class FreeElement {
 public:
  FreeElement() = default;
  FreeElement(std::size_t rank, std::size_t nvars) : entries_(rank, Poly(nvars)), n_(nvars) {}
  explicit FreeElement(std::vector<Poly> entries)
      : entries_(std::move(entries)), n_(entries_.empty() ? 0 : entries_[0].nvars()) {}

  static FreeElement unit(std::size_t rank, std::size_t nvars, std::size_t i) {
    FreeElement v(rank, nvars);
    v.entries_[i] = Poly::constant(nvars, 1);
    return v;
  }

  std::size_t rank() const noexcept { return entries_.size(); }
  std::size_t nvars() const noexcept { return n_; }
  const Poly& operator[](std::size_t i) const { return entries_[i]; }
  Poly& operator[](std::size_t i) { return entries_[i]; }
  const std::vector<Poly>& entries() const noexcept { return entries_; }

  bool is_zero() const {
    for (const auto& p : entries_)
      if (!p.is_zero()) return false;
    return true;
  }

  FreeElement& operator+=(const FreeElement& o) {
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += o.entries_[i];
    return *this;
  }
  FreeElement& operator-=(const FreeElement& o) {
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= o.entries_[i];
    return *this;
  }
  friend FreeElement operator+(FreeElement a, const FreeElement& b) { return a += b; }
  friend FreeElement operator-(FreeElement a, const FreeElement& b) { return a -= b; }
  friend FreeElement operator*(const Poly& f, const FreeElement& v) {
    FreeElement r = v;
    for (auto& p : r.entries_) p = f * p;
    return r;
  }
  friend FreeElement operator*(const Rational& c, FreeElement v) {
    for (auto& p : v.entries_) p *= c;
    return v;
  }
  friend bool operator==(const FreeElement& a, const FreeElement& b) {
    return a.entries_ == b.entries_;
  }

  /// Applies a polynomial map to every entry (see Poly::compose).
  FreeElement compose(std::span<const Poly> subs) const {
    std::vector<Poly> out;
    out.reserve(entries_.size());
    for (const auto& p : entries_) out.push_back(p.compose(subs));
    return FreeElement(std::move(out));
  }
  FreeElement remap(std::size_t nvars, std::span<const int> source) const {
    std::vector<Poly> out;
    out.reserve(entries_.size());
    for (const auto& p : entries_) out.push_back(p.remap(nvars, source));
    return FreeElement(std::move(out));
  }

 private:
  std::vector<Poly> entries_;
  std::size_t n_ = 0;
};

/// Weighted grading on a free module: deg(x^a e_i) = weights . a + shifts[i].
struct Grading {
  Weights weights;
  std::vector<long> shifts;

  long degree(const Monomial& m, std::size_t comp) const {
    return m.weighted_degree(weights) + (shifts.empty() ? 0 : shifts[comp]);
  }
  /// Common degree of all terms of v, nullopt if v is zero or inhomogeneous.
  std::optional<long> homogeneous_degree(const FreeElement& v) const {
    std::optional<long> deg;
    for (std::size_t i = 0; i < v.rank(); ++i) {
      for (const auto& [m, c] : v[i].terms()) {
        long d = degree(m, i);
        if (deg && *deg != d) return std::nullopt;
        deg = d;
      }
    }
    return deg;
  }
};

/// Finitely presented module O^rank / <relations>.
struct ModulePresentation {
  std::size_t rank = 0;
  std::size_t nvars = 0;
  std::vector<FreeElement> relations;
  std::optional<Grading> grading;

  /// Checks the structural invariants; throws InvariantError on violation.
  void validate() const {
    for (const auto& r : relations) {
      if (r.rank() != rank) throw InvariantError("relation rank differs from module rank");
      if (grading && !r.is_zero() && !grading->homogeneous_degree(r))
        throw InvariantError("relation is not homogeneous for the declared grading");
    }
  }
};

}  // namespace logforms
