#include "phaseret/vector_retrieval.hpp"

#include <cmath>
#include <stdexcept>

#include "phaseret/error.hpp"

namespace phaseret {

namespace {

void check_sweep_cap(const Frame& f, const NumericConfig& cfg, const char* what) {
  if (f.size() > cfg.max_enumeration || f.size() > 63) {
    throw CapExceeded(std::string(what) + ": " + std::to_string(f.size()) +
                      " vectors exceeds the enumeration cap of " +
                      std::to_string(cfg.max_enumeration));
  }
}

// <a, b> = 0, exactly or relative to ‖a‖‖b‖.
bool orthogonal(const Vector& a, const Vector& b, double tol) {
  const Scalar ip = inner(a, b);
  if (ip.is_exact()) return ip.is_zero();
  const double scale = std::sqrt(norm_squared(a).to_double() * norm_squared(b).to_double());
  return std::abs(ip.to_double()) <= tol * std::max(1.0, scale);
}

}  // namespace

std::vector<std::size_t> Partition::indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < size; ++i)
    if (contains(i)) out.push_back(i);
  return out;
}

std::vector<std::size_t> Partition::complement() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < size; ++i)
    if (!contains(i)) out.push_back(i);
  return out;
}

std::uint64_t Partition::complement_mask() const {
  const std::uint64_t all = size >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << size) - 1);
  return all & ~mask;
}

std::uint64_t partition_count(std::size_t m) {
  return m == 0 ? 1 : (std::uint64_t{1} << (m - 1));
}

ComplementPropertyResult has_complement_property(const Frame& f, const NumericConfig& cfg) {
  check_sweep_cap(f, cfg, "complement property");
  const std::size_t n = f.dim();
  const std::uint64_t count = partition_count(f.size());
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    const Partition p{mask, f.size()};
    if (rank(f.select(mask), n, cfg.tolerance) == n) continue;
    if (rank(f.select(p.complement_mask()), n, cfg.tolerance) == n) continue;
    return {false, p};
  }
  return {true, std::nullopt};
}

PhaseRetrievalCertificate does_phase_retrieval(const Frame& f, const NumericConfig& cfg) {
  PhaseRetrievalCertificate cert;
  const ComplementPropertyResult cp = has_complement_property(f, cfg);
  cert.holds = cp.holds;
  cert.failing = cp.failing;
  const std::size_t m = f.size();
  const std::size_t n = f.dim();
  if (cp.holds) {
    cert.reason = "complement property verified over all " +
                  std::to_string(partition_count(m)) + " partitions";
  } else {
    cert.reason = "complement property fails: neither side of the partition spans R^" +
                  std::to_string(n);
    if (m < 2 * n - 1) cert.reason += " (m = " + std::to_string(m) + " < 2n-1)";
  }
  if (m == 2 * n - 1) {
    cert.full_spark = is_full_spark(f, cfg);
    if (*cert.full_spark != cert.holds)
      throw std::logic_error("complement property and full spark disagree at m = 2n-1");
  }
  return cert;
}

NormRetrievalResult does_norm_retrieval(const Frame& f, const NumericConfig& cfg) {
  check_sweep_cap(f, cfg, "norm retrieval");
  const std::size_t n = f.dim();
  const std::uint64_t count = partition_count(f.size());
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    const Partition p{mask, f.size()};
    const Subspace u_space = orthocomplement(f.select(mask), n, cfg.tolerance);
    if (u_space.dim() == 0) continue;
    const Subspace v_space = orthocomplement(f.select(p.complement_mask()), n, cfg.tolerance);
    for (const Vector& u : u_space.basis()) {
      for (const Vector& v : v_space.basis()) {
        if (orthogonal(u, v, cfg.tolerance)) continue;
        return {false, measurement_pair(f, p, u, v, cfg)};
      }
    }
  }
  return {true, std::nullopt};
}

OrthogonalityReport orthogonality_necessity(const Frame& f, const NumericConfig& cfg) {
  if (f.size() != f.dim() || !spans(f, cfg))
    throw PreconditionError("orthogonality_necessity needs exactly n vectors spanning R^n");
  OrthogonalityReport r;
  r.orthogonal = is_orthogonal_set(f.vectors(), cfg);
  r.norm_retrieval = does_norm_retrieval(f, cfg).holds;
  r.consistent = r.orthogonal == r.norm_retrieval;
  return r;
}

PartitionWitness measurement_pair(const Frame& f, const Partition& partition, const Vector& u,
                                  const Vector& v, const NumericConfig& cfg) {
  if (partition.size != f.size()) throw PreconditionError("partition does not match frame size");
  if (u.dim() != f.dim() || v.dim() != f.dim())
    throw DimensionError("measurement_pair: u and v must live in R^n");
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (partition.contains(i) && !orthogonal(u, f[i], cfg.tolerance))
      throw PreconditionError("measurement_pair: u is not orthogonal to frame vector " +
                              std::to_string(i));
    if (!partition.contains(i) && !orthogonal(v, f[i], cfg.tolerance))
      throw PreconditionError("measurement_pair: v is not orthogonal to frame vector " +
                              std::to_string(i));
  }
  const Scalar half = Scalar::ratio(1, 2);
  return {partition, u, v, (u + v) * half, (v - u) * half};
}

bool measurements_equal(const Frame& f, const Vector& x, const Vector& y, double tol) {
  for (const Vector& fi : f.vectors()) {
    if (!approx_equal_rel(inner(x, fi).abs(), inner(y, fi).abs(), tol)) return false;
  }
  return true;
}

}  // namespace phaseret
