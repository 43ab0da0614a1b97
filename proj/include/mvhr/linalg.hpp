#pragma once

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <utility>
#include <vector>

#include "mvhr/scalar.hpp"

namespace mvhr {

/// Dense row-major matrix over exact rationals.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw InputError("matrix product: shape mismatch");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Scalar& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Scalar> data_;
};

/// Reduced row echelon form with the list of pivot columns.
struct Echelon {
  Matrix reduced;
  std::vector<std::size_t> pivots;
};

inline Echelon rref(Matrix m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t sel = row;
    while (sel < m.rows() && m(sel, col) == 0) ++sel;
    if (sel == m.rows()) continue;
    if (sel != row)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(sel, j), m(row, j));
    Scalar inv = 1 / m(row, col);
    for (std::size_t j = col; j < m.cols(); ++j) m(row, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, col) == 0) continue;
      Scalar f = m(i, col);
      for (std::size_t j = col; j < m.cols(); ++j) m(i, j) -= f * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return {std::move(m), std::move(pivots)};
}

inline std::size_t rank(const Matrix& m) { return rref(m).pivots.size(); }

/// Scales a rational vector to the primitive integer vector with the same direction.
inline std::vector<Scalar> primitive_scaled(std::vector<Scalar> v) {
  Integer l = 1, g = 0;
  for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den().get_mpz_t());
  for (auto& x : v) {
    x *= l;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_num().get_mpz_t());
  }
  if (g != 0)
    for (auto& x : v) x /= g;
  return v;
}

/// Basis of the right kernel {x : m x = 0}; one vector per free column, scaled to
/// primitive integers. Deterministic for a given matrix.
inline std::vector<std::vector<Scalar>> nullspace(const Matrix& m) {
  Echelon e = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<std::vector<Scalar>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<Scalar> v(m.cols());
    v[free] = 1;
    for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = -e.reduced(r, free);
    basis.push_back(primitive_scaled(std::move(v)));
  }
  return basis;
}

/// Determinant by rational Gaussian elimination.
inline Scalar det(Matrix m) {
  if (m.rows() != m.cols()) throw InputError("det: matrix not square");
  const std::size_t n = m.rows();
  Scalar d = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t sel = c;
    while (sel < n && m(sel, c) == 0) ++sel;
    if (sel == n) return 0;
    if (sel != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(sel, j), m(c, j));
      d = -d;
    }
    d *= m(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m(i, c) == 0) continue;
      Scalar f = m(i, c) / m(c, c);
      for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  return d;
}

using IntRow = std::vector<Integer>;

namespace detail {

inline bool bareiss_fits_int64(const std::vector<IntRow>& rows) {
  // Hadamard bound on every minor, squared, must stay below 2^62.
  double bound_log2 = 0;
  for (const auto& r : rows) {
    double norm2 = 0;
    for (const auto& x : r) {
      if (mpz_sizeinbase(x.get_mpz_t(), 2) > 30) return false;
      double v = x.get_d();
      norm2 += v * v;
    }
    if (norm2 > 0) bound_log2 += 0.5 * std::log2(norm2);
  }
  return 2 * bound_log2 < 61;
}

inline std::int64_t bareiss_int64(std::vector<std::vector<std::int64_t>> a) {
  const std::size_t n = a.size();
  std::int64_t prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t sel = k;
    while (sel < n && a[sel][k] == 0) ++sel;
    if (sel == n) return 0;
    if (sel != k) {
      std::swap(a[sel], a[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]) / prev;
      a[i][k] = 0;
    }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

}  // namespace detail

/// Determinant of a square integer matrix (fraction-free elimination, with a machine
/// integer fast path when the Hadamard bound allows it).
inline Integer det_integer(const std::vector<IntRow>& rows) {
  const std::size_t n = rows.size();
  if (n == 0) return 1;
  if (detail::bareiss_fits_int64(rows)) {
    std::vector<std::vector<std::int64_t>> a(n, std::vector<std::int64_t>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) a[i][j] = rows[i][j].get_si();
    return Integer(static_cast<long>(detail::bareiss_int64(std::move(a))));
  }
  std::vector<IntRow> a = rows;
  Integer prev = 1, t;
  int sign = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t sel = k;
    while (sel < n && a[sel][k] == 0) ++sel;
    if (sel == n) return 0;
    if (sel != k) {
      std::swap(a[sel], a[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        t = a[k][k] * a[i][j] - a[i][k] * a[k][j];
        mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      a[i][k] = 0;
    }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

/// Generalized cross product of n-1 vectors in R^n: component j is (-1)^j times the
/// minor with column j removed, so <c, x> = det(v_1, ..., v_{n-1}, x) up to a fixed sign.
inline IntRow cofactor_vector(const std::vector<IntRow>& rows, std::size_t n) {
  IntRow c(n);
  std::vector<IntRow> minor(rows.size(), IntRow(n - 1));
  for (std::size_t skip = 0; skip < n; ++skip) {
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0, jj = 0; j < n; ++j)
        if (j != skip) minor[i][jj++] = rows[i][j];
    Integer d = det_integer(minor);
    c[skip] = (skip % 2 == 0) ? d : Integer(-d);
  }
  return c;
}

}  // namespace mvhr
