#pragma once

// Small dense matrices over an exact field (Rational in practice). Gaussian
// elimination, inverse, and the Moore–Penrose pseudo-inverse through a
// full-rank factorization.

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "wgcalc/rational.hpp"

namespace wgcalc {

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill = T(0))
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product shape mismatch");
    Matrix out(a.rows_, b.cols_);
    T tmp;
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t l = 0; l < a.cols_; ++l) {
        const T& ail = a(i, l);
        if (ail == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          tmp = ail * b(l, j);
          out(i, j) += tmp;
        }
      }
    return out;
  }

  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix difference shape mismatch");
    Matrix out(a);
    for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] -= b.data_[i];
    return out;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  bool is_symmetric() const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i + 1; j < cols_; ++j)
        if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
  }

  // Reduced row echelon form in place; returns the pivot columns.
  std::vector<std::size_t> rref() {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols_ && row < rows_; ++col) {
      std::size_t sel = row;
      while (sel < rows_ && (*this)(sel, col) == 0) ++sel;
      if (sel == rows_) continue;
      swap_rows(sel, row);
      const T inv = T(1) / (*this)(row, col);
      for (std::size_t c = col; c < cols_; ++c) (*this)(row, c) *= inv;
      for (std::size_t r = 0; r < rows_; ++r) {
        if (r == row || (*this)(r, col) == 0) continue;
        const T factor = (*this)(r, col);
        for (std::size_t c = col; c < cols_; ++c) (*this)(r, c) -= factor * (*this)(row, c);
      }
      pivots.push_back(col);
      ++row;
    }
    return pivots;
  }

  std::size_t rank() const {
    Matrix tmp(*this);
    return tmp.rref().size();
  }

  Matrix inverse() const {
    if (rows_ != cols_) throw std::invalid_argument("inverse of non-square matrix");
    const std::size_t n = rows_;
    Matrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) aug(i, j) = (*this)(i, j);
      aug(i, n + i) = T(1);
    }
    const auto pivots = aug.rref();
    if (pivots.size() < n || pivots[n - 1] != n - 1) throw std::domain_error("matrix is singular");
    Matrix out(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) out(i, j) = aug(i, n + j);
    return out;
  }

  // Moore–Penrose inverse: with A = C F (C the pivot columns, F the nonzero
  // rows of rref(A)), A^+ = F^T (F F^T)^{-1} (C^T C)^{-1} C^T.
  Matrix pseudo_inverse() const {
    Matrix reduced(*this);
    const auto pivots = reduced.rref();
    const std::size_t r = pivots.size();
    if (r == 0) return Matrix(cols_, rows_);
    Matrix c(rows_, r);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < r; ++j) c(i, j) = (*this)(i, pivots[j]);
    Matrix f(r, cols_);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < cols_; ++j) f(i, j) = reduced(i, j);
    const Matrix ft = f.transpose();
    const Matrix ct = c.transpose();
    return ft * (f * ft).inverse() * (ct * c).inverse() * ct;
  }

 private:
  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using RationalMatrix = Matrix<Rational>;

}  // namespace wgcalc
