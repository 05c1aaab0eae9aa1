#pragma once

#include <cstdint>
#include <optional>
#include <random>

#include "phaseret/config.hpp"
#include "phaseret/frames.hpp"
#include "phaseret/projection_retrieval.hpp"
#include "phaseret/vector_retrieval.hpp"
#include "phaseret/weak_phase.hpp"

namespace phaseret {

struct SearchBudget {
  std::uint64_t trials = 10000;
  std::uint64_t seed = 0;
  std::uint64_t samples = 64;  // per partition, or random starts for projections

  /// Throws PreconditionError unless trials and samples are positive.
  void validate() const;
};

/// Independent generator for (seed, stream, index); the same triple always
/// gives the same sequence, whatever order trials are run in.
std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

struct WprSearchStats {
  std::uint64_t partitions = 0;
  std::uint64_t decided_trivially = 0;  // a complement is {0}
  std::uint64_t decided_exactly = 0;    // both complements are lines
  std::uint64_t sampled = 0;
  std::uint64_t trials_used = 0;
};

struct WprSearchResult {
  std::optional<WeakWitness> witness;
  std::optional<Partition> partition;
  WprSearchStats stats;

  /// No witness and every partition was decided without sampling.
  bool complete() const { return !witness && stats.sampled == 0; }
};

/// Looks for a measurement-equal pair with incomparable signs. Partitions
/// whose complements are lines are decided exactly by a scan over the
/// parameter α in x = (αu + v)/2, y = (v - αu)/2; larger complements are
/// sampled. A non-spanning frame goes straight to nonspanning_counterexample.
WprSearchResult wpr_falsify(const Frame& f, const SearchBudget& budget = {},
                            const NumericConfig& cfg = {});

/// The exact scan for one partition with generators u, v. Returns the first
/// incomparable pair in α order.
std::optional<WeakWitness> scan_line_pair(const Frame& f, const Vector& u, const Vector& v,
                                          const NumericConfig& cfg = {});

struct ProjectionSearchResult {
  std::optional<SpanWitness> witness;
  /// The witness rank was confirmed in rational arithmetic.
  bool exact = false;
  std::uint64_t starts = 0;
  double best_sigma = 0.0;
};

/// Seeks x with rank{P_i x} < n: fixed probe vectors first, then random unit
/// starts refined by coordinate descent on σ_min([P_1 x ... P_m x]).
ProjectionSearchResult projection_pr_falsify(const ProjectionFamily& pf,
                                             const SearchBudget& budget = {},
                                             const NumericConfig& cfg = {});

struct NormOracleResult {
  std::optional<PartitionWitness> witness;
  std::uint64_t trials_used = 0;
};

/// Random partitions and random u, v; any pair with <u, v> ≠ 0 refutes norm
/// retrieval. For rational frames the witness is rebuilt from exact bases.
NormOracleResult norm_retrieval_sampling_oracle(const Frame& f, const SearchBudget& budget = {},
                                                const NumericConfig& cfg = {});

}  // namespace phaseret
