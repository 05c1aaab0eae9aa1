#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "phaseret/config.hpp"
#include "phaseret/linalg.hpp"

namespace phaseret {

struct FrameOptions {
  /// Zero vectors carry no measurement information and are rejected unless set.
  bool allow_zero = false;
};

/// An ordered list of m vectors in R^n.
class Frame {
 public:
  Frame(std::size_t dim, std::vector<Vector> vectors, std::string label = {},
        FrameOptions options = {});

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return vectors_.size(); }
  const Vector& operator[](std::size_t i) const { return vectors_[i]; }
  const std::vector<Vector>& vectors() const { return vectors_; }
  const std::string& label() const { return label_; }
  bool is_exact() const;

  /// Vectors whose indices are selected by `mask` (bit i => vector i).
  std::vector<Vector> select(std::uint64_t mask) const;
  std::vector<Vector> select(const std::vector<std::size_t>& indices) const;

 private:
  std::size_t dim_;
  std::vector<Vector> vectors_;
  std::string label_;
};

/// Weighted subspaces {(W_i, v_i)} of R^n.
class FusionFrame {
 public:
  FusionFrame(std::size_t dim, std::vector<Subspace> subspaces, std::vector<Scalar> weights = {});

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return subspaces_.size(); }
  const std::vector<Subspace>& subspaces() const { return subspaces_; }
  const std::vector<Scalar>& weights() const { return weights_; }

 private:
  std::size_t dim_;
  std::vector<Subspace> subspaces_;
  std::vector<Scalar> weights_;
};

/// Optimal frame bounds, i.e. the extreme eigenvalues of the frame operator.
struct FrameBounds {
  double lower = 0.0;
  double upper = 0.0;

  bool is_frame(double tol = 1e-9) const { return lower > tol; }
  bool is_tight(double tol = 1e-9) const;
  bool is_parseval(double tol = 1e-9) const;
};

/// S = Σ x_i x_iᵀ
Matrix frame_operator(const Frame& f);
/// S = Σ v_i² P_i
Matrix fusion_operator(const FusionFrame& ff);

FrameBounds frame_bounds(const Frame& f);
FrameBounds frame_bounds(const FusionFrame& ff);

/// Size of the smallest linearly dependent subfamily, or m + 1 when the
/// whole family is independent. Subsets are enumerated by increasing size.
std::size_t spark(const Frame& f, const NumericConfig& cfg = {});

/// Every n-element subset spans R^n (checked through n x n determinants).
bool is_full_spark(const Frame& f, const NumericConfig& cfg = {});

/// Does the family span R^n?
bool spans(const Frame& f, const NumericConfig& cfg = {});

struct RieszReport {
  bool is_riesz = false;
  /// Extreme eigenvalues of the Gram matrix.
  double lower = 0.0;
  double upper = 0.0;
};

RieszReport is_riesz_sequence(const std::vector<Vector>& vectors, const NumericConfig& cfg = {});

/// All pairwise inner products vanish.
bool is_orthogonal_set(const std::vector<Vector>& vectors, const NumericConfig& cfg = {});

}  // namespace phaseret
