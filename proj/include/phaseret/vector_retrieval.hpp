#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "phaseret/config.hpp"
#include "phaseret/frames.hpp"

namespace phaseret {

/// Index partition I | I^c of [m] encoded as a bit mask (bit i => i ∈ I).
struct Partition {
  std::uint64_t mask = 0;
  std::size_t size = 0;  // m

  bool contains(std::size_t i) const { return ((mask >> i) & 1U) != 0; }
  std::vector<std::size_t> indices() const;
  std::vector<std::size_t> complement() const;
  std::uint64_t complement_mask() const;
};

/// Number of partitions visited by a sweep that treats I and I^c as the same
/// test: partitions are the masks 0 .. 2^(m-1) - 1, so the last index always
/// sits in I^c.
std::uint64_t partition_count(std::size_t m);

/// A measurement-equal pair built from a partition: u ⊥ span{x_i : i ∈ I},
/// v ⊥ span{x_i : i ∈ I^c}, x = (u + v)/2, y = (v - u)/2.
struct PartitionWitness {
  Partition partition;
  Vector u;
  Vector v;
  Vector x;
  Vector y;
};

struct ComplementPropertyResult {
  bool holds = false;
  /// A partition where neither side spans, when `holds` is false.
  std::optional<Partition> failing;
};

/// Every partition has a side spanning R^n. Throws CapExceeded above the cap.
ComplementPropertyResult has_complement_property(const Frame& f, const NumericConfig& cfg = {});

struct PhaseRetrievalCertificate {
  bool holds = false;
  /// Human-readable account of how the verdict was reached.
  std::string reason;
  std::optional<Partition> failing;
  /// Filled when m = 2n - 1, where phase retrieval and full spark coincide.
  std::optional<bool> full_spark;
};

/// Phase retrieval decided through the complement property.
PhaseRetrievalCertificate does_phase_retrieval(const Frame& f, const NumericConfig& cfg = {});

struct NormRetrievalResult {
  bool holds = false;
  std::optional<PartitionWitness> witness;
};

/// Norm retrieval: for every partition the complements of span_I and
/// span_{I^c} are orthogonal. A failing partition yields a pair with equal
/// measurement magnitudes and ‖x‖² - ‖y‖² = <u, v> ≠ 0.
NormRetrievalResult does_norm_retrieval(const Frame& f, const NumericConfig& cfg = {});

struct OrthogonalityReport {
  bool orthogonal = false;
  bool norm_retrieval = false;
  /// norm retrieval implies orthogonal; for a basis the two coincide.
  bool consistent = false;
};

/// For a basis of R^n (exactly n independent vectors).
OrthogonalityReport orthogonality_necessity(const Frame& f, const NumericConfig& cfg = {});

/// x = (u + v)/2, y = (v - u)/2 after checking u ⊥ span_I and v ⊥ span_{I^c}.
PartitionWitness measurement_pair(const Frame& f, const Partition& partition, const Vector& u,
                                  const Vector& v, const NumericConfig& cfg = {});

/// |<x, x_i>| = |<y, x_i>| for every frame vector.
bool measurements_equal(const Frame& f, const Vector& x, const Vector& y, double tol = 1e-9);

}  // namespace phaseret
