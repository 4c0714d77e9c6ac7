#pragma once

// Small dense exact vectors and matrices. Dimensions are runtime values but
// never exceed a handful (ambient rank <= 9), so everything is stored flat.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "civ/errors.hpp"
#include "civ/rational.hpp"

namespace civ {

class Vector {
 public:
  Vector() = default;
  explicit Vector(std::size_t n) : c_(n) {}
  Vector(std::initializer_list<Scalar> il) : c_(il) {}
  explicit Vector(std::vector<Scalar> coords) : c_(std::move(coords)) {}

  static Vector unit(std::size_t n, std::size_t i) {
    Vector v(n);
    v.c_.at(i) = 1;
    return v;
  }

  std::size_t size() const { return c_.size(); }
  const Scalar& operator[](std::size_t i) const { return c_[i]; }
  Scalar& operator[](std::size_t i) { return c_[i]; }
  auto begin() const { return c_.begin(); }
  auto end() const { return c_.end(); }
  const std::vector<Scalar>& coords() const { return c_; }

  bool is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Scalar& s) { return s.is_zero(); });
  }

  Vector& operator+=(const Vector& o) {
    check_dim(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  Vector& operator-=(const Vector& o) {
    check_dim(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  Vector& operator*=(const Scalar& s) {
    for (auto& x : c_) x *= s;
    return *this;
  }

  friend Vector operator+(Vector a, const Vector& b) { return a += b; }
  friend Vector operator-(Vector a, const Vector& b) { return a -= b; }
  friend Vector operator*(const Scalar& s, Vector v) { return v *= s; }
  friend Vector operator*(Vector v, const Scalar& s) { return v *= s; }
  Vector operator-() const { return Scalar(-1) * *this; }

  friend bool operator==(const Vector&, const Vector&) = default;

  /// Lexicographic on coordinates.
  friend bool operator<(const Vector& a, const Vector& b) {
    return std::lexicographical_compare(a.c_.begin(), a.c_.end(), b.c_.begin(), b.c_.end());
  }

  std::string to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (i) s += ", ";
      const auto& x = c_[i];
      s += x.is_integer() ? std::to_string(x.numerator()) : x.to_string();
    }
    return s + ")";
  }

  friend std::ostream& operator<<(std::ostream& os, const Vector& v) { return os << v.to_string(); }

 private:
  void check_dim(const Vector& o) const {
    if (o.size() != size()) throw dimension_error("civ::Vector: dimension mismatch");
  }

  std::vector<Scalar> c_;
};

/// Standard Euclidean form.
inline Scalar inner_product(const Vector& u, const Vector& v) {
  if (u.size() != v.size()) throw dimension_error("inner_product: dimension mismatch");
  Scalar s;
  for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
  return s;
}

/// Dense row-major exact matrix. Vectors are rows and act on the left:
/// `v * M` is the row vector whose entries are sum_i v_i M(i, j).
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static Matrix from_rows(const std::vector<Vector>& rows) {
    if (rows.empty()) return {};
    Matrix m(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.cols_) throw dimension_error("Matrix::from_rows: ragged rows");
      for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
  Scalar& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const std::vector<Scalar>& entries() const { return a_; }

  Vector row(std::size_t i) const {
    return Vector(std::vector<Scalar>(a_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                                      a_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_)));
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw dimension_error("Matrix product: dimension mismatch");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Scalar& aik = a(i, k);
        if (aik.is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  friend Vector operator*(const Vector& v, const Matrix& m) {
    if (v.size() != m.rows_) throw dimension_error("vector-matrix product: dimension mismatch");
    Vector r(m.cols_);
    for (std::size_t i = 0; i < m.rows_; ++i) {
      if (v[i].is_zero()) continue;
      for (std::size_t j = 0; j < m.cols_; ++j) r[j] += v[i] * m(i, j);
    }
    return r;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> a_;
};

/// Gauss-Jordan inverse of a square matrix; nullopt when singular.
inline std::optional<Matrix> inverse(const Matrix& m) {
  if (m.rows() != m.cols()) throw dimension_error("inverse: matrix not square");
  const std::size_t n = m.rows();
  Matrix a = m;
  Matrix inv = Matrix::identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a(pivot, col).is_zero()) ++pivot;
    if (pivot == n) return std::nullopt;
    if (pivot != col)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(pivot, j), a(col, j));
        std::swap(inv(pivot, j), inv(col, j));
      }
    Scalar p = a(col, col);
    for (std::size_t j = 0; j < n; ++j) {
      a(col, j) /= p;
      inv(col, j) /= p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a(r, col).is_zero()) continue;
      Scalar f = a(r, col);
      for (std::size_t j = 0; j < n; ++j) {
        a(r, j) -= f * a(col, j);
        inv(r, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

/**
 * Coordinates relative to a linearly independent family of row vectors.
 *
 * For a basis B (k rows in an n-dimensional space) and a vector v in its
 * span, `coordinates(v)` returns the unique c with c * B == v. Vectors
 * outside the span yield nullopt.
 */
class BasisCoordinates {
 public:
  BasisCoordinates() = default;
  explicit BasisCoordinates(std::vector<Vector> basis) : basis_(Matrix::from_rows(basis)) {
    Matrix gram = basis_ * basis_.transpose();
    auto gi = inverse(gram);
    if (!gi) throw construction_error("BasisCoordinates: basis vectors are linearly dependent");
    // c = v B^T (B B^T)^{-1}
    projector_ = basis_.transpose() * *gi;
  }

  std::size_t size() const { return basis_.rows(); }
  const Matrix& basis() const { return basis_; }

  std::optional<Vector> coordinates(const Vector& v) const {
    Vector c = v * projector_;
    if (c * basis_ != v) return std::nullopt;
    return c;
  }

  Vector combine(const Vector& c) const { return c * basis_; }

 private:
  Matrix basis_;
  Matrix projector_;
};

}  // namespace civ

template <>
struct std::hash<civ::Vector> {
  std::size_t operator()(const civ::Vector& v) const noexcept {
    std::size_t h = v.size();
    for (const auto& x : v) h = h * 1000003u ^ std::hash<civ::Rational>{}(x);
    return h;
  }
};

template <>
struct std::hash<civ::Matrix> {
  std::size_t operator()(const civ::Matrix& m) const noexcept {
    std::size_t h = m.rows() * 31 + m.cols();
    for (const auto& x : m.entries()) h = h * 1000003u ^ std::hash<civ::Rational>{}(x);
    return h;
  }
};
