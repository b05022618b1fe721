#pragma once

#include <optional>
#include <span>
#include <vector>

#include "ellt/exact/rational.hpp"

namespace ellt::exact {

using Vector = std::vector<Rational>;

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);
  static Matrix identity(std::size_t n);
  static Matrix from_rows(const std::vector<Vector>& rows, std::size_t cols);
  static Matrix from_columns(const std::vector<Vector>& cols, std::size_t rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rational& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

  Vector row(std::size_t r) const;
  Vector column(std::size_t c) const;
  Matrix transpose() const;
  // Rows of `below` appended; column counts must agree.
  Matrix stacked(const Matrix& below) const;
  Vector apply(std::span<const Rational> v) const;
  bool is_zero() const;

  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend bool operator==(const Matrix& a, const Matrix& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> a_;
};

struct KernelImage {
  // One vector per free column of the reduced echelon form, in column order.
  std::vector<Vector> kernel;
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_columns;
};

// Exact Gauss-Jordan elimination with column-order pivoting.
KernelImage kernel_and_image(const Matrix& m);
std::size_t rank(const Matrix& m);
// Some x with m x = b, or nullopt when b is outside the column space.
std::optional<Vector> solve(const Matrix& m, std::span<const Rational> b);

// Indices of standard basis vectors e_i (in order) that complete the column
// space of m to the whole target; their count is rows - rank.
std::vector<std::size_t> cokernel_complement(const Matrix& m);

}  // namespace ellt::exact
