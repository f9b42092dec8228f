#pragma once

#include <cstddef>
#include <initializer_list>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "nhom/error.hpp"
#include "nhom/integers.hpp"

namespace nhom {

/// Dense matrix of arbitrary-precision integers, row-major. The universal
/// carrier for relation matrices, morphisms and differentials. Zero-sized
/// dimensions are legal everywhere; a 0xk by kx0 product is the 0x0 matrix.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), entries_(rows * cols, Int(0)) {}

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  static IntMatrix zero(std::size_t rows, std::size_t cols) { return IntMatrix(rows, cols); }

  /// Convenience builder for literals in tests and fixtures.
  static IntMatrix from_rows(std::initializer_list<std::initializer_list<long>> rows) {
    const std::size_t r = rows.size();
    std::size_t c = r == 0 ? 0 : rows.begin()->size();
    IntMatrix m(r, c);
    std::size_t i = 0;
    for (const auto& row : rows) {
      require(row.size() == c, "from_rows: ragged row lengths");
      std::size_t j = 0;
      for (long v : row) m.at(i, j++) = v;
      ++i;
    }
    return m;
  }

  static IntMatrix diagonal(const std::vector<Int>& d) {
    IntMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m.at(i, i) = d[i];
    return m;
  }

  static IntMatrix column(const std::vector<Int>& v) {
    IntMatrix m(v.size(), 1);
    for (std::size_t i = 0; i < v.size(); ++i) m.at(i, 0) = v[i];
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Int& at(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const Int& at(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

  bool operator==(const IntMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && entries_ == o.entries_;
  }
  bool operator!=(const IntMatrix& o) const { return !(*this == o); }

  bool is_zero() const {
    for (const Int& e : entries_)
      if (e != 0) return false;
    return true;
  }

  std::vector<Int> col(std::size_t j) const {
    std::vector<Int> v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = at(i, j);
    return v;
  }

  void set_col(std::size_t j, const std::vector<Int>& v) {
    require(v.size() == rows_, "set_col: length mismatch");
    for (std::size_t i = 0; i < rows_; ++i) at(i, j) = v[i];
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap(at(a, j), at(b, j));
  }

  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap(at(i, a), at(i, b));
  }

  /// row a += q * row b
  void row_axpy(std::size_t a, std::size_t b, const Int& q) {
    for (std::size_t j = 0; j < cols_; ++j) at(a, j) += q * at(b, j);
  }

  /// col a += q * col b
  void col_axpy(std::size_t a, std::size_t b, const Int& q) {
    for (std::size_t i = 0; i < rows_; ++i) at(i, a) += q * at(i, b);
  }

  void negate_row(std::size_t a) {
    for (std::size_t j = 0; j < cols_; ++j) at(a, j) = -at(a, j);
  }

  void negate_col(std::size_t a) {
    for (std::size_t i = 0; i < rows_; ++i) at(i, a) = -at(i, a);
  }

  std::string to_string() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < rows_; ++i) {
      os << (i == 0 ? "[" : " [");
      for (std::size_t j = 0; j < cols_; ++j) os << (j ? " " : "") << at(i, j).get_str();
      os << "]";
      if (i + 1 < rows_) os << "\n";
    }
    os << "]";
    return os.str();
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Int> entries_;
};

inline IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  require(a.cols() == b.rows(), "matrix product: inner dimensions differ");
  IntMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Int& aik = a.at(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c.at(i, j) += aik * b.at(k, j);
    }
  return c;
}

inline IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
  require(a.rows() == b.rows() && a.cols() == b.cols(), "matrix sum: shape mismatch");
  IntMatrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c.at(i, j) = a.at(i, j) + b.at(i, j);
  return c;
}

inline IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
  require(a.rows() == b.rows() && a.cols() == b.cols(), "matrix difference: shape mismatch");
  IntMatrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c.at(i, j) = a.at(i, j) - b.at(i, j);
  return c;
}

inline IntMatrix operator*(const Int& s, const IntMatrix& a) {
  IntMatrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c.at(i, j) = s * a.at(i, j);
  return c;
}

inline std::vector<Int> mul_vec(const IntMatrix& a, const std::vector<Int>& x) {
  require(a.cols() == x.size(), "matrix-vector product: dimension mismatch");
  std::vector<Int> y(a.rows(), Int(0));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (a.at(i, j) != 0) y[i] += a.at(i, j) * x[j];
  return y;
}

/// Columns of a followed by columns of b.
inline IntMatrix hstack(const IntMatrix& a, const IntMatrix& b) {
  require(a.rows() == b.rows(), "hstack: row counts differ");
  IntMatrix c(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) c.at(i, j) = a.at(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) c.at(i, a.cols() + j) = b.at(i, j);
  }
  return c;
}

inline IntMatrix block_diagonal(const std::vector<IntMatrix>& blocks) {
  std::size_t r = 0, c = 0;
  for (const IntMatrix& b : blocks) r += b.rows(), c += b.cols();
  IntMatrix m(r, c);
  std::size_t ro = 0, co = 0;
  for (const IntMatrix& b : blocks) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) m.at(ro + i, co + j) = b.at(i, j);
    ro += b.rows();
    co += b.cols();
  }
  return m;
}

/// Fraction-free Gaussian elimination (Bareiss). Exact determinant of a
/// square matrix without leaving the integers.
inline Int det_bareiss(IntMatrix m) {
  require(m.rows() == m.cols(), "det_bareiss: matrix not square");
  const std::size_t n = m.rows();
  if (n == 0) return Int(1);
  Int prev(1);
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m.at(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m.at(p, k) == 0) ++p;
      if (p == n) return Int(0);
      m.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Int num = m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j);
        m.at(i, j) = num / prev;  // exact by Bareiss
      }
    prev = m.at(k, k);
  }
  return sign > 0 ? m.at(n - 1, n - 1) : Int(-m.at(n - 1, n - 1));
}

}  // namespace nhom
