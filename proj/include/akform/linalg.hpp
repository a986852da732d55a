#pragma once

// Exact dense linear algebra over the Gaussian rationals.

#include <span>
#include <vector>

#include "akform/scalars.hpp"

namespace akform {

using Vector = std::vector<GaussRat>;

class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols) {}

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int k = 0; k < n; ++k) m(k, k) = GaussRat(1);
    return m;
  }

  static Matrix from_rows(const std::vector<Vector>& rows, int cols) {
    Matrix m(static_cast<int>(rows.size()), cols);
    for (int r = 0; r < m.rows_; ++r)
      for (int c = 0; c < cols; ++c) m(r, c) = rows[r][c];
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  GaussRat& operator()(int r, int c) { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
  const GaussRat& operator()(int r, int c) const { return data_[static_cast<std::size_t>(r) * cols_ + c]; }

  Vector row(int r) const { return Vector(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_); }

  bool is_zero() const {
    for (const auto& v : data_)
      if (!v.is_zero()) return false;
    return true;
  }

  /// Appends the rows of `o` below this matrix.
  void stack(const Matrix& o) {
    if (rows_ == 0 && cols_ == 0) cols_ = o.cols_;
    if (o.cols_ != cols_) throw Error("stacking matrices with different column counts");
    data_.insert(data_.end(), o.data_.begin(), o.data_.end());
    rows_ += o.rows_;
  }

  Vector apply(const Vector& x) const {
    if (static_cast<int>(x.size()) != cols_) throw Error("matrix-vector size mismatch");
    Vector y(rows_);
    for (int r = 0; r < rows_; ++r)
      for (int c = 0; c < cols_; ++c)
        if (!(*this)(r, c).is_zero() && !x[c].is_zero()) y[r] += (*this)(r, c) * x[c];
    return y;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw Error("matrix product size mismatch");
    Matrix m(a.rows_, b.cols_);
    for (int r = 0; r < a.rows_; ++r)
      for (int k = 0; k < a.cols_; ++k) {
        const GaussRat& x = a(r, k);
        if (x.is_zero()) continue;
        for (int c = 0; c < b.cols_; ++c)
          if (!b(k, c).is_zero()) m(r, c) += x * b(k, c);
      }
    return m;
  }
  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw Error("matrix sum size mismatch");
    Matrix m = a;
    for (std::size_t k = 0; k < m.data_.size(); ++k) m.data_[k] += b.data_[k];
    return m;
  }
  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw Error("matrix difference size mismatch");
    Matrix m = a;
    for (std::size_t k = 0; k < m.data_.size(); ++k) m.data_[k] -= b.data_[k];
    return m;
  }
  friend Matrix operator*(const GaussRat& c, Matrix m) {
    for (auto& v : m.data_) v *= c;
    return m;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<GaussRat> data_;
};

/// Reduced row echelon form in place; returns pivot columns. Zero rows are dropped.
inline std::vector<int> rref_in_place(Matrix& m) {
  std::vector<int> pivots;
  const int rows = m.rows(), cols = m.cols();
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int pr = -1;
    for (int k = r; k < rows; ++k)
      if (!m(k, c).is_zero()) {
        pr = k;
        break;
      }
    if (pr < 0) continue;
    if (pr != r)
      for (int j = 0; j < cols; ++j) std::swap(m(pr, j), m(r, j));
    GaussRat inv = GaussRat(1) / m(r, c);
    for (int j = c; j < cols; ++j)
      if (!m(r, j).is_zero()) m(r, j) *= inv;
    for (int k = 0; k < rows; ++k) {
      if (k == r || m(k, c).is_zero()) continue;
      GaussRat factor = m(k, c);
      for (int j = c; j < cols; ++j)
        if (!m(r, j).is_zero()) m(k, j) -= factor * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  Matrix trimmed(r, cols);
  for (int k = 0; k < r; ++k)
    for (int j = 0; j < cols; ++j) trimmed(k, j) = m(k, j);
  m = std::move(trimmed);
  return pivots;
}

inline int rank(Matrix m) { return static_cast<int>(rref_in_place(m).size()); }

/// Null space basis, one vector per free column.
inline std::vector<Vector> kernel(Matrix m) {
  const int cols = m.cols();
  std::vector<int> pivots = rref_in_place(m);
  std::vector<bool> is_pivot(cols, false);
  for (int c : pivots) is_pivot[c] = true;
  std::vector<Vector> out;
  for (int f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    Vector v(cols);
    v[f] = GaussRat(1);
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m(static_cast<int>(r), f);
    out.push_back(std::move(v));
  }
  return out;
}

/// Subspace of GaussRat^dim held as its reduced echelon basis, so equal spaces compare equal.
class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(int ambient) : ambient_(ambient) {}

  static Subspace span(int ambient, const std::vector<Vector>& vectors) {
    Subspace s(ambient);
    if (vectors.empty()) return s;
    Matrix m = Matrix::from_rows(vectors, ambient);
    rref_in_place(m);
    for (int r = 0; r < m.rows(); ++r) s.basis_.push_back(m.row(r));
    return s;
  }

  static Subspace whole(int ambient) {
    std::vector<Vector> rows;
    for (int k = 0; k < ambient; ++k) {
      Vector v(ambient);
      v[k] = GaussRat(1);
      rows.push_back(std::move(v));
    }
    return span(ambient, rows);
  }

  static Subspace null_space(const Matrix& m) { return span(m.cols(), kernel(m)); }

  int ambient() const { return ambient_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  const std::vector<Vector>& basis() const { return basis_; }

  bool contains(const Vector& v) const {
    std::vector<Vector> rows = basis_;
    rows.push_back(v);
    return rank(Matrix::from_rows(rows, ambient_)) == dim();
  }

  bool contains(const Subspace& o) const {
    for (const auto& v : o.basis_)
      if (!contains(v)) return false;
    return true;
  }

  friend Subspace operator+(const Subspace& a, const Subspace& b) {
    std::vector<Vector> rows = a.basis_;
    rows.insert(rows.end(), b.basis_.begin(), b.basis_.end());
    return span(a.ambient_, rows);
  }

  friend Subspace intersect(const Subspace& a, const Subspace& b) {
    if (a.dim() == 0 || b.dim() == 0) return Subspace(a.ambient_);
    // Solve sum x_i a_i - sum y_j b_j = 0 and map x back.
    const int na = a.dim(), nb = b.dim();
    Matrix m(a.ambient_, na + nb);
    for (int i = 0; i < na; ++i)
      for (int r = 0; r < a.ambient_; ++r) m(r, i) = a.basis_[i][r];
    for (int j = 0; j < nb; ++j)
      for (int r = 0; r < a.ambient_; ++r) m(r, na + j) = -b.basis_[j][r];
    std::vector<Vector> out;
    for (const auto& sol : kernel(m)) {
      Vector v(a.ambient_);
      for (int i = 0; i < na; ++i)
        if (!sol[i].is_zero())
          for (int r = 0; r < a.ambient_; ++r) v[r] += sol[i] * a.basis_[i][r];
      out.push_back(std::move(v));
    }
    return span(a.ambient_, out);
  }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }

 private:
  int ambient_ = 0;
  std::vector<Vector> basis_;
};

}  // namespace akform
