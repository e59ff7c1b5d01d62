#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <type_traits>
#include <utility>
#include <vector>

#include "dualinv/errors.hpp"
#include "dualinv/scalar.hpp"

namespace dualinv {

// Dense row-major matrix over a commutative ring element type T.  T must
// provide +, -, *, ==, is_zero(), is_unit(), inverse() and tau().
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n, const T& zero, const T& one) {
    Matrix m(n, n, zero);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = one;
    return m;
  }
  static Matrix scalar(std::size_t n, const T& zero, const T& s) { return identity(n, zero, s); }
  static Matrix from_rows(const std::vector<std::vector<T>>& rows) {
    if (rows.empty()) return {};
    Matrix m(rows.size(), rows[0].size(), rows[0][0]);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.cols_) throw std::invalid_argument("ragged matrix rows");
      for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  const std::vector<T>& data() const { return data_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Matrix operator+(const Matrix& o) const {
    require_same_shape(o);
    Matrix r = *this;
    for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] += o.data_[k];
    return r;
  }
  Matrix operator-(const Matrix& o) const {
    require_same_shape(o);
    Matrix r = *this;
    for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] -= o.data_[k];
    return r;
  }
  Matrix operator-() const {
    Matrix r = *this;
    for (auto& x : r.data_) x = -x;
    return r;
  }
  Matrix operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("matrix product shape mismatch");
    Matrix r(rows_, o.cols_, zero_like());
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t k = 0; k < cols_; ++k) {
        const T& a = (*this)(i, k);
        if (a.is_zero()) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) += a * o(k, j);
      }
    }
    return r;
  }
  Matrix operator*(const T& s) const {
    Matrix r = *this;
    for (auto& x : r.data_) x = x * s;
    return r;
  }
  friend Matrix operator*(const T& s, const Matrix& m) { return m * s; }
  Matrix& operator+=(const Matrix& o) { return *this = *this + o; }
  Matrix& operator-=(const Matrix& o) { return *this = *this - o; }
  Matrix& operator*=(const Matrix& o) { return *this = *this * o; }

  // this + s*1 for square matrices.
  Matrix plus_scalar(const T& s) const {
    Matrix r = *this;
    for (std::size_t i = 0; i < rows_; ++i) r(i, i) += s;
    return r;
  }

  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

  // Lexicographic order over row-major entries (residue matrices only).
  std::strong_ordering operator<=>(const Matrix& o) const
    requires std::three_way_comparable<T>
  {
    if (auto c = rows_ <=> o.rows_; c != 0) return c;
    if (auto c = cols_ <=> o.cols_; c != 0) return c;
    return std::lexicographical_compare_three_way(data_.begin(), data_.end(), o.data_.begin(),
                                                  o.data_.end());
  }

  Matrix transpose() const {
    Matrix r(cols_, rows_, zero_like());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
  }
  // Entrywise Galois conjugation.
  Matrix tau() const {
    Matrix r = *this;
    for (auto& x : r.data_) x = x.tau();
    return r;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const T& x) { return x.is_zero(); });
  }
  // The scalar s with this == s*1, if any.
  std::optional<T> scalar_value() const {
    if (!is_square() || rows_ == 0) return std::nullopt;
    const T& s = (*this)(0, 0);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) {
        if (i == j ? !((*this)(i, j) == s) : !(*this)(i, j).is_zero()) return std::nullopt;
      }
    }
    return s;
  }

  // Gauss-Jordan with unit pivots.  Over a local ring this succeeds exactly
  // for invertible matrices.
  std::optional<Matrix> inverse() const {
    if (!is_square()) throw std::invalid_argument("inverse of non-square matrix");
    const std::size_t n = rows_;
    if (n == 0) return *this;
    Matrix a = *this;
    Matrix inv = identity(n, zero_like(), one_like());
    for (std::size_t c = 0; c < n; ++c) {
      std::size_t piv = n;
      for (std::size_t r = c; r < n; ++r) {
        if (a(r, c).is_unit()) {
          piv = r;
          break;
        }
      }
      if (piv == n) return std::nullopt;
      if (piv != c) {
        a.swap_rows(piv, c);
        inv.swap_rows(piv, c);
      }
      T pinv = a(c, c).inverse();
      for (std::size_t j = 0; j < n; ++j) {
        a(c, j) = a(c, j) * pinv;
        inv(c, j) = inv(c, j) * pinv;
      }
      for (std::size_t r = 0; r < n; ++r) {
        if (r == c || a(r, c).is_zero()) continue;
        T f = a(r, c);
        for (std::size_t j = 0; j < n; ++j) {
          a(r, j) -= f * a(c, j);
          inv(r, j) -= f * inv(c, j);
        }
      }
    }
    return inv;
  }
  bool is_invertible() const { return inverse().has_value(); }

  // Cofactor expansion; matrices here are small.
  T determinant() const {
    if (!is_square()) throw std::invalid_argument("determinant of non-square matrix");
    if (rows_ == 0) return one_like();
    if (rows_ == 1) return data_[0];
    if (rows_ == 2) return (*this)(0, 0) * (*this)(1, 1) - (*this)(0, 1) * (*this)(1, 0);
    T det = zero_like();
    for (std::size_t j = 0; j < cols_; ++j) {
      if ((*this)(0, j).is_zero()) continue;
      T term = (*this)(0, j) * minor(0, j).determinant();
      if (j % 2 == 0) det += term;
      else det -= term;
    }
    return det;
  }

  Matrix minor(std::size_t row, std::size_t col) const {
    Matrix m(rows_ - 1, cols_ - 1, zero_like());
    for (std::size_t i = 0, mi = 0; i < rows_; ++i) {
      if (i == row) continue;
      for (std::size_t j = 0, mj = 0; j < cols_; ++j) {
        if (j == col) continue;
        m(mi, mj++) = (*this)(i, j);
      }
      ++mi;
    }
    return m;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }

  template <class F>
  auto map(F&& f) const -> Matrix<std::invoke_result_t<F, const T&>> {
    using U = std::invoke_result_t<F, const T&>;
    Matrix<U> r(rows_, cols_, f(data_.at(0)));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r(i, j) = f((*this)(i, j));
    return r;
  }

  T zero_like() const { return data_.empty() ? T() : data_[0] - data_[0]; }
  T one_like() const {
    if (data_.empty()) return T();
    T z = data_[0] - data_[0];
    return one_from(z);
  }

 private:
  static T one_from(const T& zero) {
    if constexpr (std::is_same_v<T, QuadResidue>) {
      return QuadResidue(1, 0, zero.prime(), zero.modulus(), zero.u());
    } else {
      return T(1);
    }
  }
  void require_same_shape(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using QMatrix = Matrix<QuadRational>;
using RMatrix = Matrix<QuadResidue>;

QMatrix to_exact_lift(const RMatrix& m);
RMatrix reduce_mod(const QMatrix& m, const ResidueRing& ring);

// Row-major canonical text "[[a,b],[c,d]]" with scalars in canonical form.
std::string to_string(const QMatrix& m);
std::string to_string(const RMatrix& m);
QMatrix parse_qmatrix(const std::string& text, long u);
RMatrix parse_rmatrix(const std::string& text, const ResidueRing& ring);

// F-coordinates of an n x n matrix over E: row-major entries, each entry
// contributing its real part and (inert case) its s-coefficient.
std::vector<mpq_class> flatten(const QMatrix& m, bool inert);
QMatrix unflatten(const std::vector<mpq_class>& coords, std::size_t n, long u);
std::vector<std::int64_t> flatten(const RMatrix& m, bool inert);
RMatrix unflatten(const std::vector<std::int64_t>& coords, std::size_t n, const ResidueRing& ring);

}  // namespace dualinv
