#pragma once

#include <map>
#include <optional>
#include <vector>

#include "logforms/algebra/rational.hpp"

namespace logforms {

/// Sparse row over Q, keyed by column index.
using SparseRow = std::map<std::size_t, Rational>;

/// Incrementally maintained row echelon form over Q.
class EchelonBasis {
 public:
  /// Reduces a row against the stored pivots.
  SparseRow reduce(SparseRow row) const {
    for (const auto& [pivot, r] : rows_) {
      auto it = row.find(pivot);
      if (it == row.end()) continue;
      Rational c = it->second;
      for (const auto& [col, v] : r) {
        Rational& x = row[col];
        x -= c * v;
        if (sgn(x) == 0) row.erase(col);
      }
    }
    return row;
  }

  /// Adds a row; returns false when it was already in the span.
  bool insert(SparseRow row) {
    row = reduce(std::move(row));
    if (row.empty()) return false;
    std::size_t pivot = row.begin()->first;
    Rational inv = 1 / row.begin()->second;
    for (auto& [col, v] : row) v *= inv;
    // Keep existing rows reduced against the new pivot.
    for (auto& [p, r] : rows_) {
      auto it = r.find(pivot);
      if (it == r.end()) continue;
      Rational c = it->second;
      for (const auto& [col, v] : row) {
        Rational& x = r[col];
        x -= c * v;
        if (sgn(x) == 0) r.erase(col);
      }
    }
    rows_.emplace(pivot, std::move(row));
    return true;
  }

  bool contains(const SparseRow& row) const { return reduce(row).empty(); }
  std::size_t rank() const noexcept { return rows_.size(); }

 private:
  std::map<std::size_t, SparseRow> rows_;
};

inline std::size_t rank_of(const std::vector<SparseRow>& rows) {
  EchelonBasis e;
  for (const auto& r : rows) e.insert(r);
  return e.rank();
}

/// Basis of the right nullspace {v : A v = 0} of a dense matrix.
inline std::vector<std::vector<Rational>> nullspace(std::vector<std::vector<Rational>> a,
                                                    std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t c = 0; c < cols && row < a.size(); ++c) {
    std::size_t p = row;
    while (p < a.size() && sgn(a[p][c]) == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[row]);
    Rational inv = 1 / a[row][c];
    for (auto& x : a[row]) x *= inv;
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == row || sgn(a[r][c]) == 0) continue;
      Rational f = a[r][c];
      for (std::size_t k = 0; k < cols; ++k) a[r][k] -= f * a[row][k];
    }
    pivots.push_back(c);
    ++row;
  }
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<Rational>> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> v(cols, 0);
    v[f] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a[r][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace logforms
