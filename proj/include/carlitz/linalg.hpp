#pragma once

// Gaussian elimination over a field context.  Matrices are row-major
// vectors of rows.

#include <optional>
#include <utility>
#include <vector>

#include "carlitz/error.hpp"

namespace carlitz::linalg {

template <class F>
using Vec = std::vector<typename F::value_type>;

template <class F>
using Matrix = std::vector<Vec<F>>;

template <class F>
Matrix<F> zeros(const F& f, std::size_t rows, std::size_t cols) {
  return Matrix<F>(rows, Vec<F>(cols, f.zero()));
}

/// Reduced row echelon form in place; returns the pivot columns.
template <class F>
std::vector<std::size_t> rref(const F& f, Matrix<F>& a) {
  std::vector<std::size_t> pivots;
  if (a.empty()) return pivots;
  const std::size_t rows = a.size(), cols = a[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && f.is_zero(a[piv][c])) ++piv;
    if (piv == rows) continue;
    std::swap(a[r], a[piv]);
    const auto inv = f.inv(a[r][c]);
    for (std::size_t j = c; j < cols; ++j) a[r][j] = f.mul(a[r][j], inv);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || f.is_zero(a[i][c])) continue;
      const auto factor = a[i][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] = f.sub(a[i][j], f.mul(factor, a[r][j]));
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

template <class F>
std::size_t rank(const F& f, Matrix<F> a) {
  return rref(f, a).size();
}

/// Basis of {x : a x = 0}, one vector per free column.
template <class F>
std::vector<Vec<F>> kernel(const F& f, Matrix<F> a, std::size_t cols) {
  std::vector<Vec<F>> out;
  if (a.empty()) {
    for (std::size_t j = 0; j < cols; ++j) {
      Vec<F> v(cols, f.zero());
      v[j] = f.one();
      out.push_back(std::move(v));
    }
    return out;
  }
  const auto pivots = rref(f, a);
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    Vec<F> v(cols, f.zero());
    v[free] = f.one();
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = f.neg(a[r][free]);
    out.push_back(std::move(v));
  }
  return out;
}

struct SolveInfo {
  std::size_t rank = 0;
  std::size_t unknowns = 0;
  bool unique() const { return rank == unknowns; }
};

/// One solution of a x = b with every free variable set to zero, or nullopt
/// when the system is inconsistent.
template <class F>
std::optional<Vec<F>> solve(const F& f, const Matrix<F>& a, const Vec<F>& b, SolveInfo* info = nullptr) {
  if (a.size() != b.size()) throw UsageError("solve: row count mismatch");
  const std::size_t cols = a.empty() ? 0 : a[0].size();
  Matrix<F> aug = a;
  for (std::size_t i = 0; i < aug.size(); ++i) aug[i].push_back(b[i]);
  const auto pivots = rref(f, aug);
  if (info) {
    info->unknowns = cols;
    info->rank = pivots.size() - (!pivots.empty() && pivots.back() == cols ? 1 : 0);
  }
  if (!pivots.empty() && pivots.back() == cols) return std::nullopt;
  Vec<F> x(cols, f.zero());
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug[r][cols];
  return x;
}

}  // namespace carlitz::linalg
