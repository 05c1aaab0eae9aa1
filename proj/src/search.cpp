#include "phaseret/search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <utility>

#include "phaseret/error.hpp"

namespace phaseret {

namespace {

constexpr int kRefineIterations = 200;
constexpr double kSigmaStop = 1e-8;
constexpr double kInnerThreshold = 1e-6;
constexpr long kSnapDenominator = 1000;

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Orthonormal float basis of a subspace.
std::vector<Vector> float_onb(const Subspace& s, double tol) {
  std::vector<Vector> basis;
  for (const Vector& b : s.basis()) basis.push_back(b.to_float());
  return gram_schmidt(basis, tol);
}

Vector gaussian_combination(const std::vector<Vector>& onb, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Vector out(onb.front().dim());
  for (std::size_t i = 0; i < out.dim(); ++i) out[i] = Scalar(0.0);
  for (const Vector& q : onb) out += q * Scalar(normal(rng));
  return out;
}

Vector random_unit(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  std::vector<double> v(n);
  double len = 0.0;
  do {
    len = 0.0;
    for (double& c : v) {
      c = normal(rng);
      len += c * c;
    }
  } while (len < 1e-12);
  len = std::sqrt(len);
  for (double& c : v) c /= len;
  return Vector::from_doubles(v);
}

std::optional<WeakWitness> try_pair(const Frame& f, const Vector& x, const Vector& y,
                                    const char* tag, const NumericConfig& cfg) {
  if (phase_relation(x, y, cfg.tolerance) != PhaseRelation::Incomparable) return std::nullopt;
  WeakWitness w{x, y, tag};
  if (!verify_weak_witness(f, w, cfg)) return std::nullopt;
  return w;
}

Matrix image_matrix(const ProjectionFamily& pf, const std::vector<double>& x) {
  const std::size_t n = pf.dim();
  Matrix m(n, pf.size());
  for (std::size_t j = 0; j < pf.size(); ++j) {
    const Matrix& p = pf.projection(j);
    for (std::size_t r = 0; r < n; ++r) {
      double acc = 0.0;
      for (std::size_t c = 0; c < n; ++c) acc += p(r, c).to_double() * x[c];
      m(r, j) = Scalar(acc);
    }
  }
  return m;
}

double sigma_min(const ProjectionFamily& pf, const std::vector<double>& x) {
  return smallest_singular_value(image_matrix(pf, x));
}

void normalize(std::vector<double>& x) {
  double len = 0.0;
  for (double c : x) len += c * c;
  len = std::sqrt(len);
  if (len > 0) for (double& c : x) c /= len;
}

// Best rational approximation with denominator at most `max_den`.
mpq_class snap(double value, long max_den) {
  long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double r = value;
  for (int step = 0; step < 64; ++step) {
    const double a = std::floor(r);
    const long ai = static_cast<long>(a);
    const long p2 = ai * p1 + p0;
    const long q2 = ai * q1 + q0;
    if (q2 > max_den) break;
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    const double frac = r - a;
    if (frac < 1e-12) break;
    r = 1.0 / frac;
  }
  if (q1 == 0) return mpq_class(static_cast<long>(std::lround(value)));
  mpq_class q(p1, q1);
  q.canonicalize();
  return q;
}

std::vector<Vector> probe_vectors(std::size_t n) {
  std::vector<Vector> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(Vector::unit(n, i));
  Vector ones(n);
  for (std::size_t i = 0; i < n; ++i) ones[i] = Scalar(1);
  out.push_back(ones);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      out.push_back(Vector::unit(n, i) + Vector::unit(n, j));
      out.push_back(Vector::unit(n, i) - Vector::unit(n, j));
    }
  }
  return out;
}

}  // namespace

void SearchBudget::validate() const {
  if (trials == 0) throw PreconditionError("search budget: trials must be positive");
  if (samples == 0) throw PreconditionError("search budget: samples must be positive");
}

std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  const std::uint64_t k = splitmix64(splitmix64(seed ^ splitmix64(stream)) + index);
  return std::mt19937_64(k);
}

std::optional<WeakWitness> scan_line_pair(const Frame& f, const Vector& u, const Vector& v,
                                          const NumericConfig& cfg) {
  const double tol = cfg.tolerance;
  const bool exact = u.is_exact() && v.is_exact();
  std::vector<Scalar> points{Scalar(0)};
  for (std::size_t i = 0; i < u.dim(); ++i) {
    if (u[i].is_zero(tol)) continue;
    const Scalar r = v[i] / u[i];
    points.push_back(r);
    points.push_back(-r);
  }
  if (exact) {
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
  } else {
    std::sort(points.begin(), points.end(),
              [](const Scalar& a, const Scalar& b) { return a.to_double() < b.to_double(); });
    points.erase(std::unique(points.begin(), points.end(),
                             [&](const Scalar& a, const Scalar& b) {
                               return std::abs(a.to_double() - b.to_double()) <= tol;
                             }),
                 points.end());
  }
  std::vector<Scalar> alphas;
  alphas.push_back(points.front() - Scalar(1));
  for (std::size_t i = 0; i + 1 < points.size(); ++i)
    alphas.push_back((points[i] + points[i + 1]) * Scalar::ratio(1, 2));
  alphas.push_back(points.back() + Scalar(1));

  const Scalar half = Scalar::ratio(1, 2);
  for (const Scalar& alpha : alphas) {
    const Vector x = (u * alpha + v) * half;
    const Vector y = (v - u * alpha) * half;
    if (auto w = try_pair(f, x, y, "partition-scan", cfg)) return w;
  }
  return std::nullopt;
}

WprSearchResult wpr_falsify(const Frame& f, const SearchBudget& budget, const NumericConfig& cfg) {
  budget.validate();
  WprSearchResult out;
  if (!spans(f, cfg)) {
    out.witness = nonspanning_counterexample(f, cfg);
    return out;
  }
  if (f.size() > cfg.max_enumeration || f.size() > 63)
    throw CapExceeded("wpr_falsify: " + std::to_string(f.size()) +
                      " vectors exceeds the enumeration cap of " +
                      std::to_string(cfg.max_enumeration));
  const double tol = cfg.tolerance;
  const std::size_t n = f.dim();
  const std::uint64_t count = partition_count(f.size());
  out.stats.partitions = count;
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    const Partition p{mask, f.size()};
    const Subspace us = orthocomplement(f.select(mask), n, tol);
    const Subspace vs = orthocomplement(f.select(p.complement_mask()), n, tol);
    if (us.dim() == 0 || vs.dim() == 0) {
      ++out.stats.decided_trivially;
      continue;
    }
    if (us.dim() == 1 && vs.dim() == 1) {
      ++out.stats.decided_exactly;
      if (auto w = scan_line_pair(f, us.basis().front(), vs.basis().front(), cfg)) {
        out.witness = std::move(w);
        out.partition = p;
        return out;
      }
      continue;
    }
    ++out.stats.sampled;
    const std::vector<Vector> uq = float_onb(us, tol);
    const std::vector<Vector> vq = float_onb(vs, tol);
    const Scalar half = Scalar::ratio(1, 2);
    for (std::uint64_t s = 0; s < budget.samples && out.stats.trials_used < budget.trials; ++s) {
      std::mt19937_64 rng = trial_rng(budget.seed, mask, s);
      ++out.stats.trials_used;
      const Vector u = gaussian_combination(uq, rng);
      const Vector v = gaussian_combination(vq, rng);
      if (auto w = try_pair(f, (u + v) * half, (v - u) * half, "partition-sample", cfg)) {
        out.witness = std::move(w);
        out.partition = p;
        return out;
      }
    }
  }
  return out;
}

ProjectionSearchResult projection_pr_falsify(const ProjectionFamily& pf,
                                             const SearchBudget& budget,
                                             const NumericConfig& cfg) {
  budget.validate();
  const std::size_t n = pf.dim();
  ProjectionSearchResult out;
  out.best_sigma = std::numeric_limits<double>::infinity();

  auto accept = [&](const Vector& x) -> bool {
    if (x.is_zero(cfg.tolerance)) return false;
    if (auto w = span_criterion_at(pf, x, cfg)) {
      out.witness = std::move(w);
      out.exact = x.is_exact() && pf.is_exact();
      return true;
    }
    return false;
  };

  for (const Vector& x : probe_vectors(n))
    if (accept(x)) return out;

  for (std::uint64_t s = 0; s < budget.samples; ++s) {
    ++out.starts;
    std::mt19937_64 rng = trial_rng(budget.seed, 0x5052, s);
    std::vector<double> x = random_unit(n, rng).to_doubles();
    double value = sigma_min(pf, x);
    double step = 0.25;
    for (int it = 0; it < kRefineIterations && value >= kSigmaStop; ++it) {
      bool improved = false;
      for (std::size_t c = 0; c < n; ++c) {
        for (double dir : {1.0, -1.0}) {
          std::vector<double> trial = x;
          trial[c] += dir * step;
          normalize(trial);
          const double tv = sigma_min(pf, trial);
          if (tv < value) {
            x = std::move(trial);
            value = tv;
            improved = true;
          }
        }
      }
      if (!improved) step *= 0.5;
    }
    out.best_sigma = std::min(out.best_sigma, value);
    if (value >= std::sqrt(kSigmaStop)) continue;

    // Snap to small rationals, scaled so the largest entry is 1.
    double big = 0.0;
    for (double c : x) big = std::max(big, std::abs(c));
    Vector snapped(n);
    for (std::size_t i = 0; i < n; ++i) snapped[i] = Scalar(snap(x[i] / big, kSnapDenominator));
    if (accept(snapped)) return out;
    if (!pf.is_exact() && accept(Vector::from_doubles(x))) return out;
  }
  return out;
}

NormOracleResult norm_retrieval_sampling_oracle(const Frame& f, const SearchBudget& budget,
                                                const NumericConfig& cfg) {
  budget.validate();
  if (f.size() > 63) throw CapExceeded("norm_retrieval_sampling_oracle: more than 63 vectors");
  const double tol = cfg.tolerance;
  const std::size_t n = f.dim();
  const std::uint64_t count = partition_count(f.size());
  struct Sides {
    Subspace us;
    Subspace vs;
    std::vector<Vector> uq;
    std::vector<Vector> vq;
  };
  std::map<std::uint64_t, Sides> cache;
  NormOracleResult out;
  for (std::uint64_t t = 0; t < budget.trials; ++t) {
    ++out.trials_used;
    std::mt19937_64 rng = trial_rng(budget.seed, 0x4e52, t);
    const std::uint64_t mask = std::uniform_int_distribution<std::uint64_t>(0, count - 1)(rng);
    auto it = cache.find(mask);
    if (it == cache.end()) {
      const Partition p{mask, f.size()};
      Subspace us = orthocomplement(f.select(mask), n, tol);
      Subspace vs = orthocomplement(f.select(p.complement_mask()), n, tol);
      std::vector<Vector> uq = us.dim() ? float_onb(us, tol) : std::vector<Vector>{};
      std::vector<Vector> vq = vs.dim() ? float_onb(vs, tol) : std::vector<Vector>{};
      it = cache.emplace(mask, Sides{std::move(us), std::move(vs), std::move(uq), std::move(vq)}).first;
    }
    const Sides& sides = it->second;
    if (sides.uq.empty() || sides.vq.empty()) continue;
    Vector u = gaussian_combination(sides.uq, rng);
    Vector v = gaussian_combination(sides.vq, rng);
    u /= sqrt(norm_squared(u));
    v /= sqrt(norm_squared(v));
    if (std::abs(inner(u, v).to_double()) <= kInnerThreshold) continue;

    const Partition p{mask, f.size()};
    if (f.is_exact()) {
      for (const Vector& a : sides.us.basis())
        for (const Vector& b : sides.vs.basis())
          if (!inner(a, b).is_zero()) {
            out.witness = measurement_pair(f, p, a, b, cfg);
            return out;
          }
    }
    out.witness = measurement_pair(f, p, u, v, cfg);
    return out;
  }
  return out;
}

}  // namespace phaseret
