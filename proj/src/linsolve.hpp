#pragma once

#include <numeric>
#include <string>
#include <vector>

#include "error.hpp"
#include "rational.hpp"

namespace fnlab {

/// Solves A x = b exactly, where A has rational entries and the right-hand side
/// lives in a Q-vector space C. Columns are eliminated in `order`. Throws
/// InvariantViolation when the system is inconsistent or underdetermined.
template <class C>
std::vector<C> solve_linear(std::vector<std::vector<Rational>> a, std::vector<C> b, const C& zero,
                            std::vector<std::size_t> order = {}) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  if (order.empty()) {
    order.resize(cols);
    std::iota(order.begin(), order.end(), std::size_t{0});
  }
  std::vector<std::size_t> pivot_row(cols, rows);
  std::size_t r = 0;
  for (std::size_t col : order) {
    std::size_t piv = r;
    while (piv < rows && sgn(a[piv][col]) == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[r]);
    std::swap(b[piv], b[r]);
    Rational inv = 1 / a[r][col];
    for (auto& x : a[r]) x *= inv;
    b[r] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || sgn(a[i][col]) == 0) continue;
      Rational f = a[i][col];
      for (std::size_t j = 0; j < cols; ++j) a[i][j] -= f * a[r][j];
      C scaled = b[r];
      scaled *= f;
      b[i] -= scaled;
    }
    pivot_row[col] = r;
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i) {
    if (!fnlab_is_zero(b[i])) throw InvariantViolation("linear system is inconsistent at row " + std::to_string(i));
  }
  if (r != cols) throw InvariantViolation("linear system has " + std::to_string(cols - r) + " free unknowns");
  std::vector<C> x(cols, zero);
  for (std::size_t col = 0; col < cols; ++col) x[col] = b[pivot_row[col]];
  return x;
}

}  // namespace fnlab

namespace fnlab {

using RationalMatrix = std::vector<std::vector<Rational>>;

/// Basis of the right null space of a (rows x cols) matrix, one vector per column
/// of the result, in order of the free columns.
inline std::vector<std::vector<Rational>> nullspace(RationalMatrix a, std::size_t cols) {
  const std::size_t rows = a.size();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t col = 0; col < cols && r < rows; ++col) {
    std::size_t piv = r;
    while (piv < rows && sgn(a[piv][col]) == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[r]);
    Rational inv = 1 / a[r][col];
    for (auto& x : a[r]) x *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || sgn(a[i][col]) == 0) continue;
      Rational f = a[i][col];
      for (std::size_t j = col; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    pivots.push_back(col);
    ++r;
  }
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<Rational>> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> v(cols, Rational(0));
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -a[i][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace fnlab
