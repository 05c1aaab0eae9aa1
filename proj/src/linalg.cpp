#include "phaseret/linalg.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "phaseret/error.hpp"

namespace phaseret {

namespace {

void require_same_dim(const Vector& a, const Vector& b, const char* what) {
  if (a.dim() != b.dim()) {
    throw DimensionError(std::string(what) + ": dimension mismatch (" + std::to_string(a.dim()) +
                         " vs " + std::to_string(b.dim()) + ")");
  }
}

bool all_exact(std::span<const Vector> vs) {
  return std::all_of(vs.begin(), vs.end(), [](const Vector& v) { return v.is_exact(); });
}

Eigen::MatrixXd to_eigen(const Matrix& m) {
  Eigen::MatrixXd e(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) e(r, c) = m(r, c).to_double();
  return e;
}

// Positive rescaling of a rational vector to a primitive integer vector.
Vector primitive(const Vector& v) {
  mpz_class lcm_den = 1;
  for (const Scalar& s : v) {
    const mpq_class& q = s.rational();
    mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), q.get_den_mpz_t());
  }
  mpz_class g = 0;
  std::vector<mpz_class> ints;
  ints.reserve(v.dim());
  for (const Scalar& s : v) {
    const mpq_class& q = s.rational();
    mpz_class k = q.get_num() * (lcm_den / q.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), k.get_mpz_t());
    ints.push_back(std::move(k));
  }
  if (g == 0) return v;
  Vector out(v.dim());
  for (std::size_t i = 0; i < v.dim(); ++i) out[i] = Scalar(mpq_class(ints[i] / g));
  return out;
}

// First nonzero entry made positive.
void normalize_sign(Vector& v, double tol) {
  for (const Scalar& s : v) {
    const int sg = s.sign(tol);
    if (sg == 0) continue;
    if (sg < 0) v = -v;
    return;
  }
}

// Rows scaled to integers, for fraction-free elimination. `scale` collects the
// product of the row multipliers so determinants can be recovered.
struct IntegerMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<mpz_class> a;
  mpz_class scale = 1;

  mpz_class& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }
};

IntegerMatrix to_integer_rows(const Matrix& m) {
  IntegerMatrix im;
  im.rows = m.rows();
  im.cols = m.cols();
  im.a.resize(im.rows * im.cols);
  for (std::size_t r = 0; r < im.rows; ++r) {
    mpz_class lcm_den = 1;
    for (std::size_t c = 0; c < im.cols; ++c) {
      const mpq_class& q = m(r, c).rational();
      mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), q.get_den_mpz_t());
    }
    for (std::size_t c = 0; c < im.cols; ++c) {
      const mpq_class& q = m(r, c).rational();
      im.at(r, c) = q.get_num() * (lcm_den / q.get_den());
    }
    im.scale *= lcm_den;
  }
  return im;
}

// Bareiss elimination in place. Returns the rank; `sign` tracks row swaps.
// After elimination of a square full-rank matrix, the last pivot equals the
// determinant (up to `sign`).
std::size_t bareiss(IntegerMatrix& m, int& sign) {
  sign = 1;
  mpz_class prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols && r < m.rows; ++c) {
    std::size_t p = r;
    while (p < m.rows && m.at(p, c) == 0) ++p;
    if (p == m.rows) continue;
    if (p != r) {
      for (std::size_t j = 0; j < m.cols; ++j) std::swap(m.at(p, j), m.at(r, j));
      sign = -sign;
    }
    for (std::size_t i = r + 1; i < m.rows; ++i) {
      for (std::size_t j = c + 1; j < m.cols; ++j) {
        mpz_class v = m.at(r, c) * m.at(i, j) - m.at(i, c) * m.at(r, j);
        mpz_divexact(m.at(i, j).get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
      }
      m.at(i, c) = 0;
    }
    prev = m.at(r, c);
    ++r;
  }
  return r;
}

// Reduced row echelon form over the rationals; returns the pivot columns.
std::vector<std::size_t> rref(std::vector<std::vector<mpq_class>>& a, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
    std::size_t p = r;
    while (p < a.size() && sgn(a[p][c]) == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[r]);
    const mpq_class piv = a[r][c];
    for (std::size_t j = c; j < cols; ++j) a[r][j] /= piv;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r || sgn(a[i][c]) == 0) continue;
      const mpq_class f = a[i][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::vector<Vector> exact_nullspace(std::span<const Vector> rows, std::size_t n) {
  std::vector<std::vector<mpq_class>> a;
  a.reserve(rows.size());
  for (const Vector& v : rows) {
    std::vector<mpq_class> row(n);
    for (std::size_t j = 0; j < n; ++j) row[j] = v[j].rational();
    a.push_back(std::move(row));
  }
  const std::vector<std::size_t> pivots = rref(a, n);
  std::vector<bool> is_pivot(n, false);
  for (std::size_t p : pivots) is_pivot[p] = true;
  std::vector<Vector> out;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    Vector v(n);
    v[f] = Scalar(1);
    for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = Scalar(mpq_class(-a[k][f]));
    v = primitive(v);
    normalize_sign(v, 0.0);
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<Vector> float_nullspace(std::span<const Vector> rows, std::size_t n, double tol) {
  if (rows.empty()) {
    std::vector<Vector> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(Vector::unit(n, i).to_float());
    return out;
  }
  const Matrix m = Matrix::from_rows(rows, n);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(to_eigen(m), Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() > 0 ? sv(0) : 0.0;
  std::size_t r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (smax > 0 && sv(i) >= tol * smax) ++r;
  std::vector<Vector> out;
  const Eigen::MatrixXd& v = svd.matrixV();
  for (std::size_t c = r; c < n; ++c) {
    Vector col(n);
    for (std::size_t i = 0; i < n; ++i) col[i] = Scalar(v(static_cast<Eigen::Index>(i),
                                                          static_cast<Eigen::Index>(c)));
    normalize_sign(col, tol);
    out.push_back(std::move(col));
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Vector

Vector Vector::unit(std::size_t n, std::size_t i) {
  Vector v(n);
  v[i] = Scalar(1);
  return v;
}

Vector Vector::from_doubles(std::span<const double> values) {
  Vector v(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) v[i] = Scalar(values[i]);
  return v;
}

bool Vector::is_exact() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const Scalar& s) { return s.is_exact(); });
}

bool Vector::is_zero(double tol) const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [tol](const Scalar& s) { return s.is_zero(tol); });
}

std::vector<double> Vector::to_doubles() const {
  std::vector<double> out;
  out.reserve(entries_.size());
  for (const Scalar& s : entries_) out.push_back(s.to_double());
  return out;
}

Vector Vector::to_float() const {
  Vector out(dim());
  for (std::size_t i = 0; i < dim(); ++i) out[i] = Scalar(entries_[i].to_double());
  return out;
}

std::vector<std::size_t> Vector::support(double tol) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < entries_.size(); ++i)
    if (!entries_[i].is_zero(tol)) out.push_back(i);
  return out;
}

std::string Vector::str() const {
  std::string s = "(";
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i > 0) s += ", ";
    s += entries_[i].str();
  }
  return s + ")";
}

Vector& Vector::operator+=(const Vector& o) {
  require_same_dim(*this, o, "vector addition");
  for (std::size_t i = 0; i < dim(); ++i) entries_[i] += o[i];
  return *this;
}

Vector& Vector::operator-=(const Vector& o) {
  require_same_dim(*this, o, "vector subtraction");
  for (std::size_t i = 0; i < dim(); ++i) entries_[i] -= o[i];
  return *this;
}

Vector& Vector::operator*=(const Scalar& s) {
  for (Scalar& e : entries_) e *= s;
  return *this;
}

Vector& Vector::operator/=(const Scalar& s) {
  for (Scalar& e : entries_) e /= s;
  return *this;
}

Vector Vector::operator-() const {
  Vector out(dim());
  for (std::size_t i = 0; i < dim(); ++i) out[i] = -entries_[i];
  return out;
}

// ---------------------------------------------------------------------------
// Matrix

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar(1);
  return m;
}

Matrix Matrix::from_rows(std::span<const Vector> rows, std::size_t cols) {
  Matrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].dim() != cols) throw DimensionError("matrix row has wrong dimension");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

Matrix Matrix::from_columns(std::span<const Vector> cols, std::size_t rows) {
  Matrix m(rows, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (cols[c].dim() != rows) throw DimensionError("matrix column has wrong dimension");
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = cols[c][r];
  }
  return m;
}

Matrix Matrix::outer(const Vector& x, const Vector& y) {
  Matrix m(x.dim(), y.dim());
  for (std::size_t r = 0; r < x.dim(); ++r)
    for (std::size_t c = 0; c < y.dim(); ++c) m(r, c) = x[r] * y[c];
  return m;
}

Vector Matrix::row(std::size_t r) const {
  Vector v(cols_);
  for (std::size_t c = 0; c < cols_; ++c) v[c] = (*this)(r, c);
  return v;
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

bool Matrix::is_exact() const {
  return std::all_of(data_.begin(), data_.end(), [](const Scalar& s) { return s.is_exact(); });
}

bool Matrix::is_symmetric(double tol) const {
  if (rows_ != cols_) return false;
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = r + 1; c < cols_; ++c)
      if (!approx_equal((*this)(r, c), (*this)(c, r), tol)) return false;
  return true;
}

std::vector<double> Matrix::to_doubles() const {
  std::vector<double> out;
  out.reserve(data_.size());
  for (const Scalar& s : data_) out.push_back(s.to_double());
  return out;
}

Matrix& Matrix::operator+=(const Matrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError("matrix addition: shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw DimensionError("matrix subtraction: shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

Matrix& Matrix::operator*=(const Scalar& s) {
  for (Scalar& e : data_) e *= s;
  return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_) throw DimensionError("matrix product: shape mismatch");
  Matrix m(a.rows_, b.cols_);
  for (std::size_t r = 0; r < a.rows_; ++r)
    for (std::size_t c = 0; c < b.cols_; ++c) {
      Scalar acc;
      for (std::size_t k = 0; k < a.cols_; ++k) acc += a(r, k) * b(k, c);
      m(r, c) = std::move(acc);
    }
  return m;
}

Vector operator*(const Matrix& a, const Vector& x) {
  if (a.cols_ != x.dim()) throw DimensionError("matrix-vector product: shape mismatch");
  Vector y(a.rows_);
  for (std::size_t r = 0; r < a.rows_; ++r) {
    Scalar acc;
    for (std::size_t k = 0; k < a.cols_; ++k) acc += a(r, k) * x[k];
    y[r] = std::move(acc);
  }
  return y;
}

std::string Matrix::str() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t r = 0; r < rows_; ++r) {
    if (r > 0) os << "; ";
    for (std::size_t c = 0; c < cols_; ++c) {
      if (c > 0) os << ", ";
      os << (*this)(r, c);
    }
  }
  os << "]";
  return os.str();
}

bool approx_equal(const Vector& a, const Vector& b, double tol) {
  if (a.dim() != b.dim()) return false;
  for (std::size_t i = 0; i < a.dim(); ++i)
    if (!approx_equal(a[i], b[i], tol)) return false;
  return true;
}

bool approx_equal(const Matrix& a, const Matrix& b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c)
      if (!approx_equal(a(r, c), b(r, c), tol)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Scalar-valued operations

Scalar inner(const Vector& x, const Vector& y) {
  require_same_dim(x, y, "inner product");
  Scalar acc;
  for (std::size_t i = 0; i < x.dim(); ++i) acc += x[i] * y[i];
  return acc;
}

Scalar norm_squared(const Vector& x) { return inner(x, x); }

std::size_t rank(const Matrix& m, double tol) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  if (m.is_exact()) {
    IntegerMatrix im = to_integer_rows(m);
    int sign = 1;
    return bareiss(im, sign);
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(to_eigen(m));
  const auto& sv = svd.singularValues();
  const double smax = sv(0);
  if (smax <= 0.0) return 0;
  std::size_t r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) >= tol * smax) ++r;
  return r;
}

std::size_t rank(std::span<const Vector> vectors, std::size_t dim, double tol) {
  return rank(Matrix::from_rows(vectors, dim), tol);
}

Scalar det(const Matrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("det: matrix is not square");
  const std::size_t n = m.rows();
  if (n == 0) return Scalar(1);
  if (m.is_exact()) {
    IntegerMatrix im = to_integer_rows(m);
    int sign = 1;
    if (bareiss(im, sign) < n) return Scalar(0);
    mpq_class d(im.at(n - 1, n - 1) * sign, im.scale);
    return Scalar(std::move(d));
  }
  return Scalar(to_eigen(m).determinant());
}

Matrix inverse(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) throw DimensionError("inverse: matrix is not square");
  const std::size_t n = m.rows();
  if (m.is_exact()) {
    std::vector<std::vector<mpq_class>> a(n, std::vector<mpq_class>(2 * n));
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) a[r][c] = m(r, c).rational();
      a[r][n + r] = 1;
    }
    const auto pivots = rref(a, 2 * n);
    if (pivots.size() < n || pivots[n - 1] != n - 1)
      throw PreconditionError("inverse: matrix is singular");
    Matrix inv(n, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) inv(r, c) = Scalar(a[r][n + c]);
    return inv;
  }
  if (rank(m, tol) < n) throw PreconditionError("inverse: matrix is singular");
  const Eigen::MatrixXd e = to_eigen(m).inverse();
  Matrix inv(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      inv(r, c) = Scalar(e(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)));
  return inv;
}

double smallest_singular_value(const Matrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(to_eigen(m));
  const auto& sv = svd.singularValues();
  return sv(sv.size() - 1);
}

std::vector<Vector> gram_schmidt(std::span<const Vector> vectors, double tol) {
  std::vector<Vector> out;
  const bool exact = all_exact(vectors);
  for (const Vector& v : vectors) {
    Vector w = exact ? v : v.to_float();
    for (const Vector& q : out) {
      if (exact) {
        w -= q * (inner(w, q) / norm_squared(q));
      } else {
        w -= q * inner(w, q);  // q is unit length
      }
    }
    if (exact) {
      if (w.is_zero()) continue;
      out.push_back(primitive(w));
    } else {
      const double nv = std::sqrt(norm_squared(v).to_double());
      const double nw = std::sqrt(norm_squared(w).to_double());
      if (nw <= tol * std::max(1.0, nv)) continue;
      out.push_back(w / Scalar(nw));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Subspace

Subspace::Subspace(std::size_t ambient_dim, std::vector<Vector> basis, double tol)
    : ambient_dim_(ambient_dim), basis_(std::move(basis)) {
  for (const Vector& v : basis_) {
    if (v.dim() != ambient_dim_)
      throw DimensionError("subspace basis vector of dimension " + std::to_string(v.dim()) +
                           " in R^" + std::to_string(ambient_dim_));
  }
  if (!basis_.empty() && rank(basis_, ambient_dim_, tol) != basis_.size())
    throw PreconditionError("subspace basis is linearly dependent");
  ortho_ = gram_schmidt(basis_, tol);
}

Subspace Subspace::span_of(std::size_t ambient_dim, std::span<const Vector> vectors, double tol) {
  std::vector<Vector> basis;
  for (const Vector& v : vectors) {
    if (v.dim() != ambient_dim) throw DimensionError("span_of: vector dimension mismatch");
    basis.push_back(v);
    if (rank(basis, ambient_dim, tol) < basis.size()) basis.pop_back();
    if (basis.size() == ambient_dim) break;
  }
  return Subspace(ambient_dim, std::move(basis), tol);
}

Subspace Subspace::whole(std::size_t n) {
  std::vector<Vector> basis;
  for (std::size_t i = 0; i < n; ++i) basis.push_back(Vector::unit(n, i));
  return Subspace(n, std::move(basis));
}

bool Subspace::is_exact() const { return all_exact(basis_); }

bool Subspace::contains(const Vector& x, double tol) const {
  const Vector r = x - project_subspace(*this, x);
  return r.is_zero(tol);
}

Matrix Subspace::projection() const {
  Matrix p(ambient_dim_, ambient_dim_);
  for (const Vector& q : ortho_) p += Matrix::outer(q, q) * norm_squared(q).reciprocal();
  return p;
}

Subspace orthocomplement(std::span<const Vector> vectors, std::size_t n, double tol) {
  for (const Vector& v : vectors)
    if (v.dim() != n) throw DimensionError("orthocomplement: vector dimension mismatch");
  if (all_exact(vectors)) return Subspace(n, exact_nullspace(vectors, n), tol);
  return Subspace(n, float_nullspace(vectors, n, tol), tol);
}

Subspace orthocomplement(const Subspace& s, double tol) {
  return orthocomplement(s.basis(), s.ambient_dim(), tol);
}

Subspace intersection(const Subspace& a, const Subspace& b, double tol) {
  if (a.ambient_dim() != b.ambient_dim()) throw DimensionError("intersection: ambient mismatch");
  const Subspace ca = orthocomplement(a, tol);
  const Subspace cb = orthocomplement(b, tol);
  std::vector<Vector> both = ca.basis();
  both.insert(both.end(), cb.basis().begin(), cb.basis().end());
  return orthocomplement(both, a.ambient_dim(), tol);
}

Vector project_subspace(const Subspace& s, const Vector& x) {
  if (x.dim() != s.ambient_dim()) throw DimensionError("project_subspace: dimension mismatch");
  Vector p(x.dim());
  for (const Vector& q : s.ortho_basis()) p += q * (inner(x, q) / norm_squared(q));
  return p;
}

Vector project_hyperplane(const Vector& normal, const Vector& x) {
  require_same_dim(normal, x, "project_hyperplane");
  const Scalar nn = norm_squared(normal);
  if (nn.is_zero()) throw PreconditionError("project_hyperplane: zero normal");
  return x - normal * (inner(x, normal) / nn);
}

bool mutually_orthogonal(std::span<const Vector> a, std::span<const Vector> b, double tol) {
  for (const Vector& u : a)
    for (const Vector& v : b) {
      const Scalar ip = inner(u, v);
      if (ip.is_exact()) {
        if (!ip.is_zero()) return false;
        continue;
      }
      const double scale = std::sqrt(norm_squared(u).to_double() * norm_squared(v).to_double());
      if (std::abs(ip.to_double()) > tol * std::max(1.0, scale)) return false;
    }
  return true;
}

}  // namespace phaseret
