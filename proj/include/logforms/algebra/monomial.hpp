#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

namespace logforms {

/// Upper bound on the number of ring variables.
inline constexpr std::size_t kMaxVars = 16;

/// Exponent vector of a monomial x^a over a fixed number of variables.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t nvars) : n_(static_cast<std::uint8_t>(nvars)) {
    if (nvars > kMaxVars) throw std::length_error("too many variables");
  }
  Monomial(std::initializer_list<int> exps) : Monomial(exps.size()) {
    std::size_t i = 0;
    for (int e : exps) e_[i++] = static_cast<std::uint16_t>(e);
  }
  static Monomial from(std::span<const int> exps) {
    Monomial m(exps.size());
    for (std::size_t i = 0; i < exps.size(); ++i) m.e_[i] = static_cast<std::uint16_t>(exps[i]);
    return m;
  }
  static Monomial variable(std::size_t nvars, std::size_t i, int power = 1) {
    Monomial m(nvars);
    m.e_[i] = static_cast<std::uint16_t>(power);
    return m;
  }

  std::size_t size() const noexcept { return n_; }
  int operator[](std::size_t i) const noexcept { return e_[i]; }
  void set(std::size_t i, int v) noexcept { e_[i] = static_cast<std::uint16_t>(v); }

  int degree() const noexcept {
    int d = 0;
    for (std::size_t i = 0; i < n_; ++i) d += e_[i];
    return d;
  }
  long weighted_degree(std::span<const long> w) const noexcept {
    long d = 0;
    for (std::size_t i = 0; i < n_; ++i) d += w[i] * e_[i];
    return d;
  }
  bool is_one() const noexcept {
    for (std::size_t i = 0; i < n_; ++i)
      if (e_[i] != 0) return false;
    return true;
  }

  bool divides(const Monomial& o) const noexcept {
    for (std::size_t i = 0; i < n_; ++i)
      if (e_[i] > o.e_[i]) return false;
    return true;
  }
  bool coprime(const Monomial& o) const noexcept {
    for (std::size_t i = 0; i < n_; ++i)
      if (e_[i] != 0 && o.e_[i] != 0) return false;
    return true;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) noexcept {
    Monomial m(a.n_);
    for (std::size_t i = 0; i < a.n_; ++i) m.e_[i] = a.e_[i] + b.e_[i];
    return m;
  }
  /// Quotient a/b; b must divide a.
  friend Monomial operator/(const Monomial& a, const Monomial& b) noexcept {
    Monomial m(a.n_);
    for (std::size_t i = 0; i < a.n_; ++i) m.e_[i] = a.e_[i] - b.e_[i];
    return m;
  }
  friend Monomial lcm(const Monomial& a, const Monomial& b) noexcept {
    Monomial m(a.n_);
    for (std::size_t i = 0; i < a.n_; ++i) m.e_[i] = std::max(a.e_[i], b.e_[i]);
    return m;
  }

  friend bool operator==(const Monomial& a, const Monomial& b) noexcept {
    return a.n_ == b.n_ && std::equal(a.e_.begin(), a.e_.begin() + a.n_, b.e_.begin());
  }
  /// Lexicographic comparison on exponents; used only as a storage order.
  friend bool operator<(const Monomial& a, const Monomial& b) noexcept {
    return std::lexicographical_compare(a.e_.begin(), a.e_.begin() + a.n_, b.e_.begin(),
                                        b.e_.begin() + b.n_);
  }

  std::vector<int> exponents() const { return {e_.begin(), e_.begin() + n_}; }

  /// Drops or inserts variables: result has `nvars` variables, variable i of the
  /// result takes exponent from `source[i]` (or 0 when source[i] < 0).
  Monomial remap(std::size_t nvars, std::span<const int> source) const {
    Monomial m(nvars);
    for (std::size_t i = 0; i < nvars; ++i)
      if (source[i] >= 0) m.e_[i] = e_[static_cast<std::size_t>(source[i])];
    return m;
  }

 private:
  std::array<std::uint16_t, kMaxVars> e_{};
  std::uint8_t n_ = 0;
};

}  // namespace logforms
