#pragma once

// Dense exact linear algebra over the Gaussian rationals.

#include <cstddef>
#include <vector>

#include "ice/poly.hpp"

namespace ice {

using ScalarMatrix = std::vector<std::vector<GaussianRational>>;

/// Reduced row echelon form in place; returns pivot columns.
inline std::vector<std::size_t> row_reduce(ScalarMatrix& a) {
  std::vector<std::size_t> pivots;
  if (a.empty()) return pivots;
  const std::size_t rows = a.size(), cols = a.front().size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c].is_zero()) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    GaussianRational inv = GaussianRational(1) / a[r][c];
    for (auto& x : a[r]) x *= inv;
    for (std::size_t k = 0; k < rows; ++k) {
      if (k == r || a[k][c].is_zero()) continue;
      GaussianRational f = a[k][c];
      for (std::size_t j = c; j < cols; ++j) a[k][j] -= f * a[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

/// Basis of {x : a x = 0}.
inline std::vector<std::vector<GaussianRational>> nullspace(ScalarMatrix a, std::size_t cols) {
  auto pivots = row_reduce(a);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::vector<GaussianRational>> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<GaussianRational> v(cols);
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace ice
