#pragma once

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "logforms/algebra/free_module.hpp"

namespace logforms {

/// Polynomial matrix stored by columns.
using PolyMatrix = std::vector<FreeElement>;

/// Determinant of the square submatrix on the given rows and columns, by
/// Laplace expansion along rows with memoization over column subsets.
inline Poly minor(const PolyMatrix& m, std::span<const std::size_t> rows,
                  std::span<const std::size_t> cols, std::size_t nvars) {
  std::size_t k = rows.size();
  if (k != cols.size()) throw PreconditionError("minor: non-square selection");
  if (k == 0) return Poly::constant(nvars, 1);
  if (k > 31) throw PreconditionError("minor: matrix too large");
  std::unordered_map<std::uint32_t, Poly> memo;
  // det of rows [r..k) against the columns in mask, expanding along row r.
  auto rec = [&](auto&& self, std::size_t r, std::uint32_t mask) -> Poly {
    if (r == k) return Poly::constant(nvars, 1);
    auto it = memo.find(mask);
    if (it != memo.end()) return it->second;
    Poly acc(nvars);
    int sign = 1;
    for (std::size_t c = 0; c < k; ++c) {
      if (!(mask >> c & 1u)) continue;
      const Poly& e = m[cols[c]][rows[r]];
      if (!e.is_zero()) {
        Poly sub = self(self, r + 1, mask & ~(1u << c));
        if (!sub.is_zero()) {
          Poly t = e * sub;
          if (sign > 0) acc += t;
          else acc -= t;
        }
      }
      sign = -sign;
    }
    memo.emplace(mask, acc);
    return acc;
  };
  return rec(rec, 0, (k == 32 ? 0xffffffffu : ((1u << k) - 1)));
}

inline Poly determinant(const PolyMatrix& m, std::size_t nvars) {
  std::vector<std::size_t> idx(m.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  return minor(m, idx, idx, nvars);
}

/// All k-subsets of {0..n-1} in lexicographic order.
inline std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (cur.size() == k) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = start; i + (k - cur.size()) <= n; ++i) {
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

/// Maximal minors of a rows x cols matrix with rows <= cols.
inline std::vector<Poly> maximal_minors(const PolyMatrix& m, std::size_t nrows, std::size_t nvars) {
  std::vector<std::size_t> rows(nrows);
  for (std::size_t i = 0; i < nrows; ++i) rows[i] = i;
  std::vector<Poly> out;
  if (nrows > m.size()) return out;
  for (const auto& cols : subsets(m.size(), nrows)) {
    Poly d = minor(m, rows, cols, nvars);
    if (!d.is_zero()) out.push_back(std::move(d));
  }
  return out;
}

}  // namespace logforms
