#include "phaseret/frames.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "phaseret/error.hpp"

namespace phaseret {

namespace {

// Advances `idx` (strictly increasing, values < m) to the next k-combination
// in lexicographic order. Returns false after the last one.
bool next_combination(std::vector<std::size_t>& idx, std::size_t m) {
  const std::size_t k = idx.size();
  for (std::size_t i = k; i-- > 0;) {
    if (idx[i] < m - k + i) {
      ++idx[i];
      for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

std::pair<double, double> extreme_eigenvalues(const Matrix& s) {
  const std::size_t n = s.rows();
  Eigen::MatrixXd e(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      e(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = s(r, c).to_double();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(e, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  return {std::max(0.0, ev(0)), ev(ev.size() - 1)};
}

void check_cap(std::size_t m, const NumericConfig& cfg, const char* what) {
  if (m > cfg.max_enumeration) {
    throw CapExceeded(std::string(what) + ": " + std::to_string(m) +
                      " vectors exceeds the enumeration cap of " +
                      std::to_string(cfg.max_enumeration));
  }
}

}  // namespace

Frame::Frame(std::size_t dim, std::vector<Vector> vectors, std::string label, FrameOptions options)
    : dim_(dim), vectors_(std::move(vectors)), label_(std::move(label)) {
  if (dim_ == 0) throw PreconditionError("frame dimension must be positive");
  if (vectors_.empty()) throw PreconditionError("frame has no vectors");
  for (std::size_t i = 0; i < vectors_.size(); ++i) {
    if (vectors_[i].dim() != dim_) {
      throw DimensionError("frame vector " + std::to_string(i) + " has dimension " +
                           std::to_string(vectors_[i].dim()) + ", expected " +
                           std::to_string(dim_));
    }
    if (!options.allow_zero && vectors_[i].is_zero())
      throw PreconditionError("frame vector " + std::to_string(i) + " is zero");
  }
}

bool Frame::is_exact() const {
  return std::all_of(vectors_.begin(), vectors_.end(), [](const Vector& v) { return v.is_exact(); });
}

std::vector<Vector> Frame::select(std::uint64_t mask) const {
  std::vector<Vector> out;
  for (std::size_t i = 0; i < vectors_.size(); ++i)
    if ((mask >> i) & 1U) out.push_back(vectors_[i]);
  return out;
}

std::vector<Vector> Frame::select(const std::vector<std::size_t>& indices) const {
  std::vector<Vector> out;
  out.reserve(indices.size());
  for (std::size_t i : indices) out.push_back(vectors_.at(i));
  return out;
}

FusionFrame::FusionFrame(std::size_t dim, std::vector<Subspace> subspaces,
                         std::vector<Scalar> weights)
    : dim_(dim), subspaces_(std::move(subspaces)), weights_(std::move(weights)) {
  if (weights_.empty()) weights_.assign(subspaces_.size(), Scalar(1));
  if (weights_.size() != subspaces_.size())
    throw PreconditionError("fusion frame needs one weight per subspace");
  for (const Scalar& w : weights_)
    if (w.sign() <= 0) throw PreconditionError("fusion frame weights must be positive");
  for (const Subspace& s : subspaces_)
    if (s.ambient_dim() != dim_) throw DimensionError("fusion frame subspace in wrong ambient space");
}

bool FrameBounds::is_tight(double tol) const { return std::abs(lower - upper) <= tol * upper; }

bool FrameBounds::is_parseval(double tol) const {
  return std::abs(lower - 1.0) <= tol && std::abs(upper - 1.0) <= tol;
}

Matrix frame_operator(const Frame& f) {
  Matrix s(f.dim(), f.dim());
  for (const Vector& x : f.vectors()) s += Matrix::outer(x, x);
  return s;
}

Matrix fusion_operator(const FusionFrame& ff) {
  Matrix s(ff.dim(), ff.dim());
  for (std::size_t i = 0; i < ff.size(); ++i)
    s += ff.subspaces()[i].projection() * (ff.weights()[i] * ff.weights()[i]);
  return s;
}

FrameBounds frame_bounds(const Frame& f) {
  auto [a, b] = extreme_eigenvalues(frame_operator(f));
  return {a, b};
}

FrameBounds frame_bounds(const FusionFrame& ff) {
  auto [a, b] = extreme_eigenvalues(fusion_operator(ff));
  return {a, b};
}

std::size_t spark(const Frame& f, const NumericConfig& cfg) {
  const std::size_t m = f.size();
  const std::size_t n = f.dim();
  check_cap(m, cfg, "spark");
  for (std::size_t k = 1; k <= std::min(m, n + 1); ++k) {
    std::vector<std::size_t> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    do {
      if (rank(f.select(idx), n, cfg.tolerance) < k) return k;
    } while (next_combination(idx, m));
  }
  return m + 1;  // only reachable when m <= n and the family is independent
}

bool is_full_spark(const Frame& f, const NumericConfig& cfg) {
  const std::size_t m = f.size();
  const std::size_t n = f.dim();
  if (m < n) return false;
  check_cap(m, cfg, "is_full_spark");
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  do {
    const std::vector<Vector> sub = f.select(idx);
    const Matrix mat = Matrix::from_rows(sub, n);
    if (mat.is_exact()) {
      if (det(mat).is_zero()) return false;
    } else if (rank(mat, cfg.tolerance) < n) {
      return false;
    }
  } while (next_combination(idx, m));
  return true;
}

bool spans(const Frame& f, const NumericConfig& cfg) {
  return rank(f.vectors(), f.dim(), cfg.tolerance) == f.dim();
}

RieszReport is_riesz_sequence(const std::vector<Vector>& vectors, const NumericConfig& cfg) {
  RieszReport r;
  if (vectors.empty()) return r;
  const std::size_t dim = vectors.front().dim();
  r.is_riesz = rank(vectors, dim, cfg.tolerance) == vectors.size();
  Matrix gram(vectors.size(), vectors.size());
  for (std::size_t i = 0; i < vectors.size(); ++i)
    for (std::size_t j = 0; j < vectors.size(); ++j) gram(i, j) = inner(vectors[i], vectors[j]);
  auto [a, b] = extreme_eigenvalues(gram);
  r.lower = r.is_riesz ? a : 0.0;
  r.upper = b;
  return r;
}

bool is_orthogonal_set(const std::vector<Vector>& vectors, const NumericConfig& cfg) {
  for (std::size_t i = 0; i < vectors.size(); ++i)
    for (std::size_t j = i + 1; j < vectors.size(); ++j)
      if (!mutually_orthogonal(std::span(&vectors[i], 1), std::span(&vectors[j], 1), cfg.tolerance))
        return false;
  return true;
}

}  // namespace phaseret
