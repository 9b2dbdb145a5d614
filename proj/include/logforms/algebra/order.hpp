#pragma once

#include <vector>

#include "logforms/algebra/monomial.hpp"
#include "logforms/algebra/poly.hpp"

namespace logforms {

/// Monomial order: a lexicographic stack of weight rows refined by reverse
/// lexicographic tie-breaking, or pure lexicographic order.
class MonomialOrder {
 public:
  enum class Kind { weighted_revlex, lex };

  static MonomialOrder wdegrevlex(Weights w) {
    MonomialOrder o;
    o.kind_ = Kind::weighted_revlex;
    o.rows_.push_back(std::move(w));
    return o;
  }
  static MonomialOrder degrevlex(std::size_t nvars) { return wdegrevlex(Weights(nvars, 1)); }
  /// Weight rows compared in sequence before the reverse lexicographic tie-break.
  static MonomialOrder weight_matrix(std::vector<Weights> rows) {
    MonomialOrder o;
    o.kind_ = Kind::weighted_revlex;
    o.rows_ = std::move(rows);
    return o;
  }
  static MonomialOrder lex(std::size_t nvars) {
    MonomialOrder o;
    o.kind_ = Kind::lex;
    o.rows_.push_back(Weights(nvars, 1));  // only used for sugar degrees
    return o;
  }

  Kind kind() const noexcept { return kind_; }
  const std::vector<Weights>& rows() const noexcept { return rows_; }
  std::size_t nvars() const noexcept { return rows_.empty() ? 0 : rows_[0].size(); }

  /// Returns >0 if a > b, <0 if a < b, 0 if equal.
  int compare(const Monomial& a, const Monomial& b) const noexcept {
    if (kind_ == Kind::lex) return lex_compare(a, b);
    for (const auto& w : rows_) {
      long da = a.weighted_degree(w), db = b.weighted_degree(w);
      if (da != db) return da > db ? 1 : -1;
    }
    return revlex_compare(a, b);
  }

  static int lex_compare(const Monomial& a, const Monomial& b) noexcept {
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a[i] != b[i]) return a[i] > b[i] ? 1 : -1;
    return 0;
  }
  static int revlex_compare(const Monomial& a, const Monomial& b) noexcept {
    for (std::size_t i = a.size(); i-- > 0;)
      if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
    return 0;
  }

 private:
  Kind kind_ = Kind::weighted_revlex;
  std::vector<Weights> rows_;
};

/// Order on module terms x^a e_i. Components are grouped into blocks compared
/// first (lower block index ranks higher); inside a block terms are compared by
/// shifted weights, then by the monomial tie-break, then by component index
/// (lower index ranks higher). With one component per block this is
/// position-over-term.
class ModuleOrder {
 public:
  ModuleOrder() = default;
  ModuleOrder(MonomialOrder mono, std::vector<int> blocks, std::vector<std::vector<long>> shifts)
      : mono_(std::move(mono)), blocks_(std::move(blocks)), shifts_(std::move(shifts)) {
    if (shifts_.empty()) shifts_.assign(mono_.rows().size(), std::vector<long>(blocks_.size(), 0));
  }

  static ModuleOrder pot(MonomialOrder mono, std::size_t rank) {
    std::vector<int> blocks(rank);
    for (std::size_t i = 0; i < rank; ++i) blocks[i] = static_cast<int>(i);
    return ModuleOrder(std::move(mono), std::move(blocks), {});
  }
  /// Term-over-position with a degree shift per component (first weight row).
  static ModuleOrder top(MonomialOrder mono, std::size_t rank, std::vector<long> shifts = {}) {
    std::vector<std::vector<long>> sh(mono.rows().size(), std::vector<long>(rank, 0));
    if (!shifts.empty()) sh[0] = std::move(shifts);
    return ModuleOrder(std::move(mono), std::vector<int>(rank, 0), std::move(sh));
  }

  const MonomialOrder& monomial_order() const noexcept { return mono_; }
  std::size_t rank() const noexcept { return blocks_.size(); }
  const std::vector<int>& blocks() const noexcept { return blocks_; }
  const std::vector<std::vector<long>>& shifts() const noexcept { return shifts_; }
  std::size_t nvars() const noexcept { return mono_.nvars(); }

  /// Sugar degree of a term: first weight row plus its shift.
  long degree(const Monomial& m, std::size_t comp) const noexcept {
    return m.weighted_degree(mono_.rows()[0]) + shifts_[0][comp];
  }

  long weight(const Monomial& m) const noexcept { return m.weighted_degree(mono_.rows()[0]); }

  int compare(const Monomial& a, std::size_t ca, const Monomial& b, std::size_t cb) const noexcept {
    if (blocks_[ca] != blocks_[cb]) return blocks_[ca] < blocks_[cb] ? 1 : -1;
    if (mono_.kind() == MonomialOrder::Kind::lex) {
      int c = MonomialOrder::lex_compare(a, b);
      if (c != 0) return c;
    } else {
      const auto& rows = mono_.rows();
      for (std::size_t r = 0; r < rows.size(); ++r) {
        long da = a.weighted_degree(rows[r]) + shifts_[r][ca];
        long db = b.weighted_degree(rows[r]) + shifts_[r][cb];
        if (da != db) return da > db ? 1 : -1;
      }
      int c = MonomialOrder::revlex_compare(a, b);
      if (c != 0) return c;
    }
    if (ca != cb) return ca < cb ? 1 : -1;
    return 0;
  }

 private:
  MonomialOrder mono_;
  std::vector<int> blocks_;
  std::vector<std::vector<long>> shifts_;
};

}  // namespace logforms
