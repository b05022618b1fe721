#include "ellt/exact/matrix.hpp"

#include "ellt/errors.hpp"

namespace ellt::exact {

Matrix::Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(const std::vector<Vector>& rows, std::size_t cols) {
  Matrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw ValidationError("ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

Matrix Matrix::from_columns(const std::vector<Vector>& columns, std::size_t rows) {
  Matrix m(rows, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].size() != rows) throw ValidationError("ragged matrix columns");
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = columns[c][r];
  }
  return m;
}

Vector Matrix::row(std::size_t r) const {
  return Vector(a_.begin() + static_cast<long>(r * cols_), a_.begin() + static_cast<long>((r + 1) * cols_));
}

Vector Matrix::column(std::size_t c) const {
  Vector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

Matrix Matrix::stacked(const Matrix& below) const {
  if (rows_ == 0) return below;
  if (below.rows_ == 0) return *this;
  if (below.cols_ != cols_) throw ValidationError("stacking matrices with different column counts");
  Matrix m(rows_ + below.rows_, cols_);
  std::copy(a_.begin(), a_.end(), m.a_.begin());
  std::copy(below.a_.begin(), below.a_.end(), m.a_.begin() + static_cast<long>(a_.size()));
  return m;
}

Vector Matrix::apply(std::span<const Rational> v) const {
  if (v.size() != cols_) throw ValidationError("matrix-vector size mismatch");
  Vector out(rows_);
  Rational t;
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) {
      if (exact::is_zero(v[c])) continue;
      t = (*this)(r, c) * v[c];
      out[r] += t;
    }
  return out;
}

bool Matrix::is_zero() const {
  for (const auto& x : a_)
    if (!exact::is_zero(x)) return false;
  return true;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_) throw ValidationError("matrix product size mismatch");
  Matrix m(a.rows_, b.cols_);
  Rational t;
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      if (exact::is_zero(a(i, k))) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        t = a(i, k) * b(k, j);
        m(i, j) += t;
      }
    }
  return m;
}

namespace {

struct Echelon {
  Matrix reduced;
  std::vector<std::size_t> pivots;  // pivot column of row i
};

// Reduced row echelon form; the pivot of each column is the first nonzero
// entry at or below the current row.
Echelon reduce(Matrix m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  Rational t;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t p = row;
    while (p < m.rows() && exact::is_zero(m(p, col))) ++p;
    if (p == m.rows()) continue;
    if (p != row)
      for (std::size_t c = col; c < m.cols(); ++c) std::swap(m(p, c), m(row, c));
    Rational inv = 1 / m(row, col);
    for (std::size_t c = col; c < m.cols(); ++c) m(row, c) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || exact::is_zero(m(r, col))) continue;
      Rational f = m(r, col);
      for (std::size_t c = col; c < m.cols(); ++c) {
        if (exact::is_zero(m(row, c))) continue;
        t = f * m(row, c);
        m(r, c) -= t;
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return {std::move(m), std::move(pivots)};
}

}  // namespace

KernelImage kernel_and_image(const Matrix& m) {
  Echelon e = reduce(m);
  KernelImage out;
  out.rank = e.pivots.size();
  out.pivot_columns = e.pivots;
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : e.pivots) is_pivot[c] = true;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vector v(m.cols());
    v[free] = 1;
    for (std::size_t i = 0; i < e.pivots.size(); ++i) v[e.pivots[i]] = -e.reduced(i, free);
    out.kernel.push_back(std::move(v));
  }
  return out;
}

std::size_t rank(const Matrix& m) { return reduce(m).pivots.size(); }

std::optional<Vector> solve(const Matrix& m, std::span<const Rational> b) {
  if (b.size() != m.rows()) throw ValidationError("solve: right-hand side size mismatch");
  Matrix aug(m.rows(), m.cols() + 1);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) aug(r, c) = m(r, c);
    aug(r, m.cols()) = b[r];
  }
  Echelon e = reduce(std::move(aug));
  if (!e.pivots.empty() && e.pivots.back() == m.cols()) return std::nullopt;
  Vector x(m.cols());
  for (std::size_t i = 0; i < e.pivots.size(); ++i) x[e.pivots[i]] = e.reduced(i, m.cols());
  return x;
}

std::vector<std::size_t> cokernel_complement(const Matrix& m) {
  // Reduce [m | I]: pivots that land in the identity block mark the
  // standard vectors not yet reached by the columns of m.
  Matrix aug(m.rows(), m.cols() + m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) aug(r, c) = m(r, c);
    aug(r, m.cols() + r) = 1;
  }
  Echelon e = reduce(std::move(aug));
  std::vector<std::size_t> out;
  for (auto c : e.pivots)
    if (c >= m.cols()) out.push_back(c - m.cols());
  return out;
}

}  // namespace ellt::exact
