#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "phaseret/config.hpp"
#include "phaseret/scalar.hpp"

namespace phaseret {

/// Dense real vector over Scalar.
class Vector {
 public:
  Vector() = default;
  explicit Vector(std::size_t n) : entries_(n) {}
  Vector(std::initializer_list<Scalar> init) : entries_(init) {}
  explicit Vector(std::vector<Scalar> entries) : entries_(std::move(entries)) {}

  static Vector unit(std::size_t n, std::size_t i);
  static Vector from_doubles(std::span<const double> values);

  std::size_t dim() const { return entries_.size(); }
  Scalar& operator[](std::size_t i) { return entries_[i]; }
  const Scalar& operator[](std::size_t i) const { return entries_[i]; }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }
  auto begin() { return entries_.begin(); }
  auto end() { return entries_.end(); }

  /// True when every entry is rational.
  bool is_exact() const;
  bool is_zero(double tol = 0.0) const;
  std::vector<double> to_doubles() const;
  Vector to_float() const;

  /// Indices of the nonzero entries (beyond `tol` in float mode).
  std::vector<std::size_t> support(double tol = 0.0) const;

  /// "(1, -1/2, 3)"
  std::string str() const;

  Vector& operator+=(const Vector& o);
  Vector& operator-=(const Vector& o);
  Vector& operator*=(const Scalar& s);
  Vector& operator/=(const Scalar& s);
  Vector operator-() const;

  friend Vector operator+(Vector a, const Vector& b) { return a += b; }
  friend Vector operator-(Vector a, const Vector& b) { return a -= b; }
  friend Vector operator*(Vector a, const Scalar& s) { return a *= s; }
  friend Vector operator*(const Scalar& s, Vector a) { return a *= s; }
  friend Vector operator/(Vector a, const Scalar& s) { return a /= s; }
  friend bool operator==(const Vector& a, const Vector& b) { return a.entries_ == b.entries_; }

 private:
  std::vector<Scalar> entries_;
};

/// Row-major dense matrix over Scalar.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n);
  /// Matrix whose rows are the given vectors (all of dimension `cols`).
  static Matrix from_rows(std::span<const Vector> rows, std::size_t cols);
  static Matrix from_columns(std::span<const Vector> cols, std::size_t rows);
  /// x yᵀ
  static Matrix outer(const Vector& x, const Vector& y);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Vector row(std::size_t r) const;
  Vector column(std::size_t c) const;
  Matrix transpose() const;
  bool is_exact() const;
  bool is_symmetric(double tol = 0.0) const;
  std::vector<double> to_doubles() const;  // row-major

  Matrix& operator+=(const Matrix& o);
  Matrix& operator-=(const Matrix& o);
  Matrix& operator*=(const Scalar& s);
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, const Scalar& s) { return a *= s; }
  friend Matrix operator*(const Scalar& s, Matrix a) { return a *= s; }
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Vector operator*(const Matrix& a, const Vector& x);
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  std::string str() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

/// Same entries up to `tol` (exact for rational pairs).
bool approx_equal(const Vector& a, const Vector& b, double tol);
bool approx_equal(const Matrix& a, const Matrix& b, double tol);

Scalar inner(const Vector& x, const Vector& y);
Scalar norm_squared(const Vector& x);

/// Numerical rank. Rational matrices use fraction-free (Bareiss) elimination;
/// anything else counts singular values >= tol * sigma_max.
std::size_t rank(const Matrix& m, double tol = 1e-9);
/// Rank of the matrix with the given vectors as rows.
std::size_t rank(std::span<const Vector> vectors, std::size_t dim, double tol = 1e-9);

/// Determinant of a square matrix, exact when every entry is rational.
Scalar det(const Matrix& m);

/// Inverse of a square matrix; throws PreconditionError when singular.
Matrix inverse(const Matrix& m, double tol = 1e-9);

/// Smallest singular value of a float matrix (0 for empty matrices).
double smallest_singular_value(const Matrix& m);

/// Modified Gram-Schmidt. Exact inputs come back orthogonal but not
/// normalized (normalization would need square roots); float inputs come
/// back orthonormal. Vectors that reduce to zero are dropped.
std::vector<Vector> gram_schmidt(std::span<const Vector> vectors, double tol = 1e-9);

/// A subspace of R^n held by a basis plus an orthogonalized copy of it.
class Subspace {
 public:
  /// Throws PreconditionError if `basis` is linearly dependent and
  /// DimensionError if a vector does not live in R^n.
  Subspace(std::size_t ambient_dim, std::vector<Vector> basis, double tol = 1e-9);

  /// The span of arbitrary (possibly dependent) vectors.
  static Subspace span_of(std::size_t ambient_dim, std::span<const Vector> vectors,
                          double tol = 1e-9);
  static Subspace whole(std::size_t n);
  static Subspace zero(std::size_t n) { return Subspace(n, {}); }

  std::size_t ambient_dim() const { return ambient_dim_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<Vector>& basis() const { return basis_; }
  /// Orthogonal basis (orthonormal in float mode) spanning the same space.
  const std::vector<Vector>& ortho_basis() const { return ortho_; }
  bool is_exact() const;
  bool contains(const Vector& x, double tol = 1e-9) const;

  /// Orthogonal projection matrix onto the subspace.
  Matrix projection() const;

 private:
  std::size_t ambient_dim_;
  std::vector<Vector> basis_;
  std::vector<Vector> ortho_;
};

/// Orthogonal complement of the span of `vectors` inside R^n. Exact inputs
/// give a rational basis whose vectors have a positive first nonzero entry.
Subspace orthocomplement(std::span<const Vector> vectors, std::size_t n, double tol = 1e-9);
Subspace orthocomplement(const Subspace& s, double tol = 1e-9);

/// Subspace intersection W1 ∩ W2.
Subspace intersection(const Subspace& a, const Subspace& b, double tol = 1e-9);

Vector project_subspace(const Subspace& s, const Vector& x);
/// x - (<x,n>/<n,n>) n. Throws PreconditionError for a zero normal.
Vector project_hyperplane(const Vector& normal, const Vector& x);

/// Are all pairwise inner products between the two lists zero?
bool mutually_orthogonal(std::span<const Vector> a, std::span<const Vector> b, double tol = 1e-9);

}  // namespace phaseret
