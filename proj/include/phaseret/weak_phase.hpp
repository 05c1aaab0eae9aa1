#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "phaseret/config.hpp"
#include "phaseret/frames.hpp"
#include "phaseret/vector_retrieval.hpp"

namespace phaseret {

/// How the signs of two vectors compare on the coordinates where both are
/// nonzero.
enum class PhaseRelation {
  SameSigns,      // one global sign θ = +1 works
  OppositeSigns,  // θ = -1 works
  TriviallySame,  // no coordinate where both are nonzero
  Incomparable,   // no single θ works
};

std::string_view to_string(PhaseRelation r);

/// Whether x and y weakly have the same phase (anything but Incomparable).
inline bool weakly_same_phase(PhaseRelation r) { return r != PhaseRelation::Incomparable; }

PhaseRelation phase_relation(const Vector& x, const Vector& y, double tol = 0.0);

/// sgn(x_i x_j) = sgn(y_i y_j) for all i ≠ j, skipping pairs where either
/// product vanishes.
bool sign_products_consistent(const Vector& x, const Vector& y, double tol = 0.0);

/// A pair with equal measurement magnitudes whose signs disagree: a proof
/// that a family fails weak phase retrieval.
struct WeakWitness {
  Vector x;
  Vector y;
  std::string construction;
  bool verified = false;
};

/// Re-checks measurement equality and incomparability; sets `verified`.
bool verify_weak_witness(const Frame& f, WeakWitness& w, const NumericConfig& cfg = {});

// Closed-form witnesses for the normalized two-vector frames of R^2.

/// Frame {(1,0), (1,a)}, a ≠ 0.
WeakWitness axis_slope_witness(const Scalar& a);
/// Frame {(1,a), (1,b)} with a > b > 0.
WeakWitness same_sign_slopes_witness(const Scalar& a, const Scalar& b);
/// Frame {(1,a), (1,-b)} with a > b > 0. The free coordinate x_2 is
/// (a - b) / (4ab), which keeps 2ab·x_2 < a - b.
WeakWitness opposite_sign_slopes_witness(const Scalar& a, const Scalar& b);

struct R2Classification {
  bool does_wpr = false;
  /// The two vectors after normalization (scaling, sign flips, coordinate swaps).
  Vector normal_first;
  Vector normal_second;
  /// b of the mirror form {(1,b), (1,-b)} when `does_wpr`.
  std::optional<Scalar> mirror_slope;
  std::string route;
  std::optional<WeakWitness> witness;
};

/// Complete weak phase retrieval classifier for two nonzero vectors in R^2:
/// true exactly for the mirror pairs {(1,b), (1,-b)}.
R2Classification classify_wpr_r2(const Vector& x1, const Vector& x2, const NumericConfig& cfg = {});

/// Witness for a frame whose span is a proper subspace of R^n.
WeakWitness nonspanning_counterexample(const Frame& f, const NumericConfig& cfg = {});
/// Same, from a caller-chosen x ∈ span(F) and z ⊥ span(F), both nonzero.
WeakWitness nonspanning_counterexample(const Frame& f, const Vector& x, const Vector& z,
                                       const NumericConfig& cfg = {});

struct NecessaryConditionsReport {
  std::size_t m = 0;
  std::size_t n = 0;
  bool count_ok = false;                // m >= 2n - 2
  std::optional<bool> full_spark_ok;    // checked only when m = 2n - 2
  bool spanning_ok = false;
  std::vector<std::string> failed;
  std::optional<WeakWitness> witness;   // when the frame does not span

  /// Some necessary condition fails, so the frame cannot do weak phase retrieval.
  bool refuted() const { return !failed.empty(); }
};

NecessaryConditionsReport wpr_necessary_conditions(const Frame& f, const NumericConfig& cfg = {});

/// x = a·y on the coordinates in `coords`, x = y/a elsewhere.
struct ScaledDecomposition {
  Scalar a;
  std::vector<std::size_t> coords;
};

/// For a full spark frame with m = 2n - 2 and a measurement-equal pair,
/// recovers (a, I). Returns nullopt when no such decomposition exists, which
/// certifies that the frame fails weak phase retrieval.
std::optional<ScaledDecomposition> decompose_scaled(const Frame& f, const Vector& x,
                                                    const Vector& y,
                                                    const NumericConfig& cfg = {});

/// True when x(i) ∈ {a·y(i), y(i)/a} for every coordinate, with the split
/// given by `d.coords`.
bool check_decomposition(const ScaledDecomposition& d, const Vector& x, const Vector& y,
                         double tol = 0.0);

struct DisjointSupportReport {
  struct PairCheck {
    std::size_t u_index = 0;
    std::size_t v_index = 0;
    bool disjoint = false;
  };
  bool holds = true;
  /// One side of the partition spans R^n, so its complement is {0}.
  bool vacuous = false;
  /// m = 2n - 2, |I| = n - 1 and both complements are lines.
  bool hypotheses_met = false;
  std::vector<PairCheck> pairs;
};

/// For u ⊥ span_I and v ⊥ span_{I^c}, checks that u/‖u‖ + v/‖v‖ and
/// u/‖u‖ - v/‖v‖ have disjoint supports, i.e. u_i²‖v‖² = v_i²‖u‖² for every
/// coordinate. Complements of dimension > 1 are checked basis pair by basis pair.
DisjointSupportReport disjoint_support_check(const Frame& f, const Partition& partition,
                                             const NumericConfig& cfg = {});

/// For orthogonal x, y sharing a nonzero coordinate: confirms they are Incomparable.
bool orthogonal_incomparability(const Vector& x, const Vector& y, const NumericConfig& cfg = {});

}  // namespace phaseret
