#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "toricgw/rational.hpp"

namespace toricgw {

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

  static Matrix from_rows(const std::vector<std::vector<T>>& rows, std::size_t cols) {
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<T> row(std::size_t i) const {
    return std::vector<T>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
  }
  std::vector<T> column(std::size_t j) const {
    std::vector<T> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
    return out;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix operator*(const Matrix& o) const {
    Matrix out(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        if ((*this)(i, k) == 0) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) out(i, j) += (*this)(i, k) * o(k, j);
      }
    return out;
  }

  std::vector<T> operator*(const std::vector<T>& v) const {
    std::vector<T> out(rows_, T(0));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
    return out;
  }

  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }
  // row[a] += f * row[b]
  void add_row(std::size_t a, std::size_t b, const T& f) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(a, j) += f * (*this)(b, j);
  }
  // col[a] += f * col[b]
  void add_col(std::size_t a, std::size_t b, const T& f) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, a) += f * (*this)(i, b);
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using QMatrix = Matrix<Rational>;
using ZMatrix = Matrix<Integer>;

// U * A * V == S with U, V unimodular and S diagonal, s_1 | s_2 | ... .
struct SmithForm {
  ZMatrix U;
  ZMatrix S;
  ZMatrix V;
  std::size_t rank = 0;
  ZVector invariant_factors() const;
};

SmithForm smith_normal_form(const ZMatrix& a);

QMatrix to_rational(const ZMatrix& a);
// Fails unless every entry is integral.
ZMatrix to_integer(const QMatrix& a);
// Columns are lattice vectors.
ZMatrix columns_matrix(const std::vector<LatticeVector>& cols, std::size_t dim);

std::size_t rank(const QMatrix& a);
Rational determinant(QMatrix a);
std::optional<QMatrix> inverse(const QMatrix& a);
// Some solution of a x = b, or empty if inconsistent. Unique when a has full column rank.
std::optional<QVector> solve(const QMatrix& a, const QVector& b);
// Greedy choice of linearly independent rows, in index order.
std::vector<std::size_t> independent_rows(const QMatrix& a);
// Basis of {x : a x = 0}.
std::vector<QVector> nullspace(const QMatrix& a);

struct LinearConstraint {
  enum class Sense { LessEqual, GreaterEqual, Equal };
  QVector coefficients;
  Sense sense;
  Rational rhs;
};

// Exact phase-1 simplex (Bland's rule). Variables are free.
std::optional<QVector> feasible_point(std::size_t num_vars,
                                      const std::vector<LinearConstraint>& constraints);
// Some x >= 0 with a x = b.
std::optional<QVector> nonnegative_solution(const QMatrix& a, const QVector& b);

Rational dot(const QVector& a, const QVector& b);

}  // namespace toricgw
