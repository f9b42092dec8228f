#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "nhom/matrix.hpp"

namespace nhom {

/// u * input * v = d, with u and v unimodular and d diagonal with
/// nonnegative entries forming a divisibility chain d1 | d2 | ...
struct SmithDecomposition {
  IntMatrix u;
  IntMatrix d;
  IntMatrix v;

  std::size_t rank() const {
    std::size_t r = 0;
    const std::size_t k = std::min(d.rows(), d.cols());
    while (r < k && d.at(r, r) != 0) ++r;
    return r;
  }

  std::vector<Int> diagonal() const {
    const std::size_t k = std::min(d.rows(), d.cols());
    std::vector<Int> out(k);
    for (std::size_t i = 0; i < k; ++i) out[i] = d.at(i, i);
    return out;
  }
};

/// Smith normal form by elementary row/column operations. Pivot rule is
/// fixed for reproducibility: smallest nonzero absolute value, ties broken
/// by lowest row then lowest column.
inline SmithDecomposition smith_normal_form(const IntMatrix& input) {
  IntMatrix d = input;
  IntMatrix u = IntMatrix::identity(d.rows());
  IntMatrix v = IntMatrix::identity(d.cols());
  const std::size_t m = d.rows(), n = d.cols();
  const std::size_t steps = std::min(m, n);

  auto find_pivot = [&](std::size_t k) -> std::optional<std::pair<std::size_t, std::size_t>> {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    for (std::size_t i = k; i < m; ++i)
      for (std::size_t j = k; j < n; ++j) {
        if (d.at(i, j) == 0) continue;
        if (!best || abs_less(d.at(i, j), d.at(best->first, best->second)))
          best = std::make_pair(i, j);
      }
    return best;
  };

  for (std::size_t k = 0; k < steps; ++k) {
    auto pivot = find_pivot(k);
    if (!pivot) break;  // remaining block is zero
    for (;;) {
      d.swap_rows(k, pivot->first);
      u.swap_rows(k, pivot->first);
      d.swap_cols(k, pivot->second);
      v.swap_cols(k, pivot->second);

      bool dirty = false;
      for (std::size_t i = k + 1; i < m; ++i) {
        if (d.at(i, k) == 0) continue;
        Int q = trunc_div(d.at(i, k), d.at(k, k));
        if (q != 0) {
          d.row_axpy(i, k, -q);
          u.row_axpy(i, k, -q);
        }
        if (d.at(i, k) != 0) dirty = true;
      }
      for (std::size_t j = k + 1; j < n; ++j) {
        if (d.at(k, j) == 0) continue;
        Int q = trunc_div(d.at(k, j), d.at(k, k));
        if (q != 0) {
          d.col_axpy(j, k, -q);
          v.col_axpy(j, k, -q);
        }
        if (d.at(k, j) != 0) dirty = true;
      }
      if (dirty) {
        pivot = find_pivot(k);
        continue;
      }
      // Pivot row/column are clean; enforce that the pivot divides the rest
      // of the trailing block, otherwise fold an offending row in and redo.
      bool fixed = false;
      for (std::size_t i = k + 1; i < m && !fixed; ++i)
        for (std::size_t j = k + 1; j < n && !fixed; ++j)
          if (!divides(d.at(k, k), d.at(i, j))) {
            d.row_axpy(k, i, Int(1));
            u.row_axpy(k, i, Int(1));
            fixed = true;
          }
      if (!fixed) break;
      pivot = find_pivot(k);
    }
  }
  for (std::size_t k = 0; k < steps; ++k)
    if (d.at(k, k) < 0) {
      d.negate_row(k);
      u.negate_row(k);
    }
  return {std::move(u), std::move(d), std::move(v)};
}

/// Reusable exact solver for a * x = b over the integers: one Smith
/// decomposition, many right-hand sides.
class SmithSolver {
 public:
  explicit SmithSolver(const IntMatrix& a)
      : cols_(a.cols()), rows_(a.rows()), snf_(smith_normal_form(a)), rank_(snf_.rank()) {}

  /// Some integer solution of a * x = b, or nullopt when b is outside the
  /// column span. Solutions are deterministic for fixed input.
  std::optional<std::vector<Int>> solve(const std::vector<Int>& b) const {
    require(b.size() == rows_, "solve: right-hand side has wrong length");
    std::vector<Int> c = mul_vec(snf_.u, b);
    std::vector<Int> y(cols_, Int(0));
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i < rank_) {
        if (!divides(snf_.d.at(i, i), c[i])) return std::nullopt;
        y[i] = c[i] / snf_.d.at(i, i);
      } else if (c[i] != 0) {
        return std::nullopt;
      }
    }
    return mul_vec(snf_.v, y);
  }

  bool contains(const std::vector<Int>& b) const { return solve(b).has_value(); }

  /// Solve for every column of b; nullopt if any column fails.
  std::optional<IntMatrix> solve_matrix(const IntMatrix& b) const {
    require(b.rows() == rows_, "solve_matrix: row count mismatch");
    IntMatrix x(cols_, b.cols());
    for (std::size_t j = 0; j < b.cols(); ++j) {
      auto xj = solve(b.col(j));
      if (!xj) return std::nullopt;
      x.set_col(j, *xj);
    }
    return x;
  }

 private:
  std::size_t cols_;
  std::size_t rows_;
  SmithDecomposition snf_;
  std::size_t rank_;
};

inline std::optional<std::vector<Int>> solve_in_span(const IntMatrix& a,
                                                     const std::vector<Int>& b) {
  return SmithSolver(a).solve(b);
}

/// Basis of the lattice {x : a * x = 0}, one column per basis vector.
inline IntMatrix kernel_basis(const IntMatrix& a) {
  SmithDecomposition snf = smith_normal_form(a);
  const std::size_t rank = snf.rank();
  const std::size_t n = a.cols();
  IntMatrix k(n, n - rank);
  for (std::size_t j = rank; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) k.at(i, j - rank) = snf.v.at(i, j);
  return k;
}

/// Column-style Hermite normal form: the unique basis of the column span
/// with pivots on strictly increasing rows, positive pivots, entries above a
/// pivot zero and entries to its left reduced into [0, pivot). Zero columns
/// are dropped, so the result has full column rank.
inline IntMatrix hermite_basis(const IntMatrix& input) {
  IntMatrix h = input;
  const std::size_t m = h.rows(), n = h.cols();
  std::size_t next = 0;  // next pivot column
  std::vector<std::size_t> pivot_rows;
  for (std::size_t row = 0; row < m && next < n; ++row) {
    for (;;) {
      std::optional<std::size_t> best;
      for (std::size_t j = next; j < n; ++j)
        if (h.at(row, j) != 0 && (!best || abs_less(h.at(row, j), h.at(row, *best))))
          best = j;
      if (!best) break;
      h.swap_cols(next, *best);
      bool clean = true;
      for (std::size_t j = next + 1; j < n; ++j) {
        if (h.at(row, j) == 0) continue;
        Int q = trunc_div(h.at(row, j), h.at(row, next));
        if (q != 0) h.col_axpy(j, next, -q);
        if (h.at(row, j) != 0) clean = false;
      }
      if (clean) break;
    }
    if (h.at(row, next) != 0) {
      if (h.at(row, next) < 0) h.negate_col(next);
      // reduce earlier columns at this pivot row into [0, pivot)
      for (std::size_t j = 0; j < next; ++j) {
        Int q = floor_div(h.at(row, j), h.at(row, next));
        if (q != 0) h.col_axpy(j, next, -q);
      }
      pivot_rows.push_back(row);
      ++next;
    }
  }
  IntMatrix out(m, next);
  for (std::size_t j = 0; j < next; ++j)
    for (std::size_t i = 0; i < m; ++i) out.at(i, j) = h.at(i, j);
  return out;
}

}  // namespace nhom
