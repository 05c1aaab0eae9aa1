#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "phaseret/config.hpp"
#include "phaseret/frames.hpp"
#include "phaseret/linalg.hpp"
#include "phaseret/vector_retrieval.hpp"
#include "phaseret/weak_phase.hpp"

namespace phaseret {

/// A family of orthogonal projections {P_i} onto subspaces W_i of R^n.
/// Weights are carried along but do not affect any norm-equality check.
class ProjectionFamily {
 public:
  ProjectionFamily(std::size_t dim, std::vector<Subspace> members,
                   std::vector<Scalar> weights = {}, double tol = 1e-9);

  /// Projections onto the lines span{x_i}.
  static ProjectionFamily rank_one(const Frame& f);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return members_.size(); }
  const std::vector<Subspace>& members() const { return members_; }
  const Matrix& projection(std::size_t i) const { return projections_[i]; }
  const std::vector<Matrix>& projections() const { return projections_; }
  const std::vector<Scalar>& weights() const { return weights_; }
  bool is_exact() const;
  bool is_hyperplane(std::size_t i) const { return members_[i].dim() + 1 == dim_; }

 private:
  std::size_t dim_;
  std::vector<Subspace> members_;
  std::vector<Scalar> weights_;
  std::vector<Matrix> projections_;
};

/// A nonzero x whose projections {P_i x} fail to span R^n.
struct SpanWitness {
  Vector x;
  std::size_t achieved_rank = 0;
  std::vector<Vector> spanned;  // basis of span{P_i x}
};

/// ‖P_i x‖², one per member. Squares keep exact inputs rational.
std::vector<Scalar> proj_measurements(const ProjectionFamily& pf, const Vector& x);

/// Rank of {P_i x}; a SpanWitness when it is below n, nullopt otherwise.
std::optional<SpanWitness> span_criterion_at(const ProjectionFamily& pf, const Vector& x,
                                             const NumericConfig& cfg = {});

struct ProjectionPairReport {
  bool norms_equal = false;
  std::optional<PhaseRelation> relation;  // set when the norms agree
  /// Equal norms with incomparable signs: the family fails weak phase retrieval.
  bool refutes_wpr = false;
};

ProjectionPairReport weak_phase_by_projections_check(const ProjectionFamily& pf, const Vector& x,
                                                     const Vector& y,
                                                     const NumericConfig& cfg = {});

/// Hyperplanes x_i⊥ with P_i = I - x_i x_iᵀ/‖x_i‖².
ProjectionFamily perp_family(const Frame& f, double tol = 1e-9);

struct Rank1Report {
  ProjectionFamily family;
  /// ‖P_i x‖²‖x_i‖² = <x, x_i>² on every probe vector.
  bool identity_holds = false;
  std::size_t probes = 0;
  /// Verdicts carried over from the frame.
  bool phase_retrieval = false;
  std::optional<bool> weak_phase_retrieval;
};

/// Builds the rank-one family for F and checks that norm equality for the
/// family is the same statement as measurement equality for the frame.
Rank1Report rank1_equivalence(const Frame& f, const NumericConfig& cfg = {});

struct FusionNormResult {
  bool holds = false;
  /// A failing expansion refutes norm retrieval for the subspaces. A passing
  /// one settles it only when every member is a line; otherwise another
  /// orthonormal basis could still fail.
  bool conclusive = false;
  /// Concatenated orthogonal bases of the members.
  std::optional<Frame> expansion;
  std::optional<PartitionWitness> witness;
};

/// Norm retrieval for subspaces through the vector-level decider applied to
/// the concatenation of orthogonal bases of the members.
FusionNormResult fusion_norm_retrieval(const std::vector<Subspace>& members,
                                       const NumericConfig& cfg = {});
FusionNormResult fusion_norm_retrieval(const FusionFrame& ff, const NumericConfig& cfg = {});
FusionNormResult fusion_norm_retrieval(const ProjectionFamily& pf, const NumericConfig& cfg = {});

struct IpTransferReport {
  std::vector<Subspace> complements;  // ranges of I - P_i
  bool complement_norm_retrieval = false;
  std::optional<PartitionWitness> norm_witness;
  /// given_wpr and the complements do norm retrieval.
  bool transfer_applies = false;
  /// When the transfer applies: a refutation of weak phase retrieval for
  /// {I - P_i} found by the falsifier, which would contradict the transfer.
  std::optional<WeakWitness> contradiction;
};

IpTransferReport ip_transfer_check(const ProjectionFamily& pf, bool given_wpr,
                                   const NumericConfig& cfg = {}, std::uint64_t seed = 0);

struct TwoSubspaceResult {
  bool disjoint = false;
  /// Disjoint case: T maps a basis of W1 to e_1..e_k and one of W2 to e_{k+1}..e_n.
  std::optional<Matrix> t;
  std::optional<Subspace> tw1;
  std::optional<Subspace> tw2;
  /// Disjoint case: det T ≠ 0 and {TW1, TW2} does norm retrieval.
  /// Intersecting case: the witness re-verifies.
  bool verified = false;

  // Intersecting case.
  std::string construction;
  std::optional<Vector> y1;
  std::optional<Vector> y2;
  std::optional<Scalar> norm1;  // ‖y1‖²
  std::optional<Scalar> norm2;  // ‖y2‖²
};

/// Two subspaces spanning R^n. With W1 ∩ W2 = {0}, builds T with {TW1, TW2}
/// doing norm retrieval. Otherwise, for the given T (identity by default),
/// produces a pair with equal projected norms onto TW1 and TW2 but different
/// norms.
TwoSubspaceResult two_subspace_operator(const Subspace& w1, const Subspace& w2,
                                        const std::optional<Matrix>& t = std::nullopt,
                                        const NumericConfig& cfg = {});

struct BoundAdvisory {
  bool phase_retrieval_impossible = false;
  bool dimension_rule = false;   // n = 2^k - 1 and fewer than 2n - 1 members
  bool hyperplane_rule = false;  // all hyperplanes and fewer than 2n - 2 members
  std::vector<std::string> reasons;
};

BoundAdvisory bound_advisories(std::size_t n, const ProjectionFamily& pf);

}  // namespace phaseret
