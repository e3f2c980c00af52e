#pragma once

#include "eqp/rational.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>
#include <utility>
#include <vector>

namespace eqp {

template <class T>
struct scalar_traits {
  static constexpr bool exact = false;
  static double abs(const T& x) { return std::abs(x); }
  static bool eq(const T& a, const T& b, double tol) { return std::abs(a - b) <= tol; }
};

template <>
struct scalar_traits<Rational> {
  static constexpr bool exact = true;
  static Rational abs(const Rational& x) { return x < 0 ? Rational(-x) : x; }
  static bool eq(const Rational& a, const Rational& b, double) { return a == b; }
};

// Dense row-major matrix over double, Rational or std::complex<double>.
// The rational backend is exact; binary64 comparisons take an explicit
// absolute tolerance.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols, T init = T(0))
      : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols, init) {
    if (rows <= 0 || cols <= 0) throw std::invalid_argument("matrix dimensions must be positive");
  }
  explicit Matrix(const std::vector<std::vector<T>>& entries) {
    if (entries.empty() || entries[0].empty())
      throw std::invalid_argument("matrix dimensions must be positive");
    rows_ = static_cast<int>(entries.size());
    cols_ = static_cast<int>(entries[0].size());
    data_.reserve(static_cast<size_t>(rows_) * cols_);
    for (const auto& row : entries) {
      if (static_cast<int>(row.size()) != cols_)
        throw std::invalid_argument("ragged matrix initializer");
      for (const auto& x : row) data_.push_back(x);
    }
  }

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }
  static Matrix constant(int rows, int cols, T v) { return Matrix(rows, cols, v); }
  static Matrix diagonal(const std::vector<T>& d) {
    Matrix m(static_cast<int>(d.size()), static_cast<int>(d.size()));
    for (size_t i = 0; i < d.size(); ++i) m(static_cast<int>(i), static_cast<int>(i)) = d[i];
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  T& operator()(int i, int j) { return data_[static_cast<size_t>(i) * cols_ + j]; }
  const T& operator()(int i, int j) const { return data_[static_cast<size_t>(i) * cols_ + j]; }

  Matrix operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("matrix product dimension mismatch");
    Matrix r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
      for (int k = 0; k < cols_; ++k) {
        const T& a = (*this)(i, k);
        if (a == T(0)) continue;
        for (int j = 0; j < o.cols_; ++j) r(i, j) += a * o(k, j);
      }
    return r;
  }
  Matrix operator+(const Matrix& o) const {
    check_same_shape(o);
    Matrix r = *this;
    for (size_t i = 0; i < data_.size(); ++i) r.data_[i] += o.data_[i];
    return r;
  }
  Matrix operator-(const Matrix& o) const {
    check_same_shape(o);
    Matrix r = *this;
    for (size_t i = 0; i < data_.size(); ++i) r.data_[i] -= o.data_[i];
    return r;
  }
  Matrix operator*(const T& s) const {
    Matrix r = *this;
    for (auto& x : r.data_) x *= s;
    return r;
  }
  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

  Matrix transposed() const {
    Matrix r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
  }

  T row_sum(int i) const {
    T s(0);
    for (int j = 0; j < cols_; ++j) s += (*this)(i, j);
    return s;
  }
  T col_sum(int j) const {
    T s(0);
    for (int i = 0; i < rows_; ++i) s += (*this)(i, j);
    return s;
  }
  std::vector<T> row_sums() const {
    std::vector<T> s(rows_);
    for (int i = 0; i < rows_; ++i) s[i] = row_sum(i);
    return s;
  }
  std::vector<T> col_sums() const {
    std::vector<T> s(cols_);
    for (int j = 0; j < cols_; ++j) s[j] = col_sum(j);
    return s;
  }

  // diag(d) * M and M * diag(d)
  Matrix scaled_rows(const std::vector<T>& d) const {
    if (static_cast<int>(d.size()) != rows_) throw std::invalid_argument("row scaling size mismatch");
    Matrix r = *this;
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) r(i, j) *= d[i];
    return r;
  }
  Matrix scaled_cols(const std::vector<T>& d) const {
    if (static_cast<int>(d.size()) != cols_) throw std::invalid_argument("col scaling size mismatch");
    Matrix r = *this;
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) r(i, j) *= d[j];
    return r;
  }

  std::vector<T> apply(const std::vector<T>& x) const {
    if (static_cast<int>(x.size()) != cols_) throw std::invalid_argument("matvec size mismatch");
    std::vector<T> y(rows_, T(0));
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) y[i] += (*this)(i, j) * x[j];
    return y;
  }

  double max_abs() const {
    double m = 0;
    for (const auto& x : data_) m = std::max(m, static_cast<double>(scalar_traits<T>::abs(x)));
    return m;
  }
  double max_abs_diff(const Matrix& o) const {
    check_same_shape(o);
    double m = 0;
    for (size_t i = 0; i < data_.size(); ++i)
      m = std::max(m, static_cast<double>(scalar_traits<T>::abs(data_[i] - o.data_[i])));
    return m;
  }
  bool approx_equal(const Matrix& o, double tol) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) return false;
    for (size_t i = 0; i < data_.size(); ++i)
      if (!scalar_traits<T>::eq(data_[i], o.data_[i], tol)) return false;
    return true;
  }
  bool is_symmetric(double tol = 0) const {
    if (!square()) return false;
    for (int i = 0; i < rows_; ++i)
      for (int j = i + 1; j < cols_; ++j)
        if (!scalar_traits<T>::eq((*this)(i, j), (*this)(j, i), tol)) return false;
    return true;
  }

  Matrix permuted(const std::vector<int>& row_perm, const std::vector<int>& col_perm) const {
    Matrix r(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) r(row_perm[i], col_perm[j]) = (*this)(i, j);
    return r;
  }

 private:
  void check_same_shape(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw std::invalid_argument("matrix shape mismatch");
  }

  int rows_ = 0, cols_ = 0;
  std::vector<T> data_;
};

template <class T>
Matrix<T> hcat(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("hcat row mismatch");
  Matrix<T> r(a.rows(), a.cols() + b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) r(i, j) = a(i, j);
    for (int j = 0; j < b.cols(); ++j) r(i, a.cols() + j) = b(i, j);
  }
  return r;
}

// Rank by exact Gaussian elimination.
inline int rank(Matrix<Rational> a) {
  int r = 0;
  for (int c = 0; c < a.cols() && r < a.rows(); ++c) {
    int pivot = -1;
    for (int i = r; i < a.rows(); ++i)
      if (a(i, c) != 0) {
        pivot = i;
        break;
      }
    if (pivot < 0) continue;
    if (pivot != r)
      for (int j = 0; j < a.cols(); ++j) std::swap(a(pivot, j), a(r, j));
    for (int i = r + 1; i < a.rows(); ++i) {
      if (a(i, c) == 0) continue;
      Rational f = a(i, c) / a(r, c);
      for (int j = c; j < a.cols(); ++j) a(i, j) -= f * a(r, j);
    }
    ++r;
  }
  return r;
}

inline Matrix<double> to_double(const Matrix<Rational>& m) {
  Matrix<double> r(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) r(i, j) = to_double(m(i, j));
  return r;
}

using CMatrix = Matrix<std::complex<double>>;

}  // namespace eqp
