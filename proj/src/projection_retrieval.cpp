#include "phaseret/projection_retrieval.hpp"

#include <algorithm>
#include <cmath>

#include "phaseret/error.hpp"
#include "phaseret/search.hpp"

namespace phaseret {

namespace {

void check_dim(const ProjectionFamily& pf, const Vector& x) {
  if (x.dim() != pf.dim())
    throw DimensionError("vector of dimension " + std::to_string(x.dim()) +
                         " for a family in R^" + std::to_string(pf.dim()));
}

Frame expand(std::size_t dim, const std::vector<Subspace>& members) {
  std::vector<Vector> vectors;
  for (const Subspace& s : members)
    for (const Vector& q : s.ortho_basis()) vectors.push_back(q);
  if (vectors.empty()) throw PreconditionError("all subspaces are {0}");
  return Frame(dim, std::move(vectors), "orthogonal expansion");
}

Subspace image(const Matrix& t, const Subspace& w, double tol) {
  std::vector<Vector> basis;
  for (const Vector& b : w.basis()) basis.push_back(t * b);
  return Subspace(w.ambient_dim(), std::move(basis), tol);
}

// The part of `w` orthogonal to `inner_part` (which must lie inside `w`).
Subspace relative_complement(const Subspace& w, const Subspace& inner_part, double tol) {
  return intersection(w, orthocomplement(inner_part, tol), tol);
}

Vector unit_or_float(const Vector& v) {
  const Scalar len = sqrt(norm_squared(v));
  return v / len;
}

bool is_power_of_two_minus_one(std::size_t n) { return n > 0 && ((n + 1) & n) == 0; }

}  // namespace

ProjectionFamily::ProjectionFamily(std::size_t dim, std::vector<Subspace> members,
                                   std::vector<Scalar> weights, double tol)
    : dim_(dim), members_(std::move(members)), weights_(std::move(weights)) {
  if (dim_ == 0) throw PreconditionError("projection family dimension must be positive");
  if (members_.empty()) throw PreconditionError("projection family has no members");
  if (weights_.empty()) weights_.assign(members_.size(), Scalar(1));
  if (weights_.size() != members_.size())
    throw PreconditionError("projection family needs one weight per member");
  for (const Scalar& w : weights_)
    if (w.sign() <= 0) throw PreconditionError("projection family weights must be positive");
  projections_.reserve(members_.size());
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (members_[i].ambient_dim() != dim_)
      throw DimensionError("member " + std::to_string(i) + " lives in the wrong space");
    Matrix p = members_[i].projection();
    if (!p.is_symmetric(tol) || !approx_equal(p * p, p, tol))
      throw Error("member " + std::to_string(i) + " projection is not symmetric idempotent");
    projections_.push_back(std::move(p));
  }
}

ProjectionFamily ProjectionFamily::rank_one(const Frame& f) {
  std::vector<Subspace> lines;
  for (const Vector& x : f.vectors()) lines.emplace_back(f.dim(), std::vector<Vector>{x});
  return ProjectionFamily(f.dim(), std::move(lines));
}

bool ProjectionFamily::is_exact() const {
  return std::all_of(projections_.begin(), projections_.end(),
                     [](const Matrix& p) { return p.is_exact(); });
}

std::vector<Scalar> proj_measurements(const ProjectionFamily& pf, const Vector& x) {
  check_dim(pf, x);
  std::vector<Scalar> out;
  out.reserve(pf.size());
  for (const Matrix& p : pf.projections()) out.push_back(norm_squared(p * x));
  return out;
}

std::optional<SpanWitness> span_criterion_at(const ProjectionFamily& pf, const Vector& x,
                                             const NumericConfig& cfg) {
  check_dim(pf, x);
  if (x.is_zero(cfg.tolerance)) throw PreconditionError("span_criterion_at: x is zero");
  std::vector<Vector> images;
  for (const Matrix& p : pf.projections()) images.push_back(p * x);
  const Subspace span = Subspace::span_of(pf.dim(), images, cfg.tolerance);
  if (span.dim() == pf.dim()) return std::nullopt;
  return SpanWitness{x, span.dim(), span.basis()};
}

ProjectionPairReport weak_phase_by_projections_check(const ProjectionFamily& pf, const Vector& x,
                                                     const Vector& y, const NumericConfig& cfg) {
  check_dim(pf, x);
  check_dim(pf, y);
  const std::vector<Scalar> nx = proj_measurements(pf, x);
  const std::vector<Scalar> ny = proj_measurements(pf, y);
  ProjectionPairReport r;
  r.norms_equal = true;
  for (std::size_t i = 0; i < nx.size(); ++i)
    r.norms_equal = r.norms_equal && approx_equal_rel(nx[i], ny[i], cfg.tolerance);
  if (r.norms_equal) {
    r.relation = phase_relation(x, y, cfg.tolerance);
    r.refutes_wpr = *r.relation == PhaseRelation::Incomparable;
  }
  return r;
}

ProjectionFamily perp_family(const Frame& f, double tol) {
  std::vector<Subspace> hyperplanes;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i].is_zero(tol)) throw PreconditionError("perp_family: vector " + std::to_string(i) + " is zero");
    hyperplanes.push_back(orthocomplement(std::span(&f[i], 1), f.dim(), tol));
  }
  return ProjectionFamily(f.dim(), std::move(hyperplanes), {}, tol);
}

Rank1Report rank1_equivalence(const Frame& f, const NumericConfig& cfg) {
  Rank1Report r{ProjectionFamily::rank_one(f), false, 0, false, std::nullopt};
  const std::size_t n = f.dim();
  std::vector<Vector> probes;
  for (std::size_t i = 0; i < n; ++i) probes.push_back(Vector::unit(n, i));
  for (const Vector& x : f.vectors()) probes.push_back(x);
  Vector ramp(n);
  for (std::size_t i = 0; i < n; ++i) ramp[i] = Scalar(static_cast<long>(i) + 1) * Scalar(i % 2 == 0 ? 1 : -1);
  probes.push_back(ramp);

  r.identity_holds = true;
  for (const Vector& x : probes) {
    const std::vector<Scalar> norms = proj_measurements(r.family, x);
    for (std::size_t i = 0; i < f.size(); ++i) {
      const Scalar ip = inner(x, f[i]);
      r.identity_holds = r.identity_holds &&
                         approx_equal_rel(norms[i] * norm_squared(f[i]), ip * ip, cfg.tolerance);
    }
  }
  r.probes = probes.size();
  r.phase_retrieval = does_phase_retrieval(f, cfg).holds;
  if (r.phase_retrieval) {
    r.weak_phase_retrieval = true;
  } else if (n == 2 && f.size() == 2) {
    r.weak_phase_retrieval = classify_wpr_r2(f[0], f[1], cfg).does_wpr;
  } else if (!spans(f, cfg)) {
    r.weak_phase_retrieval = false;
  }
  return r;
}

FusionNormResult fusion_norm_retrieval(const std::vector<Subspace>& members,
                                       const NumericConfig& cfg) {
  if (members.empty()) throw PreconditionError("fusion_norm_retrieval: no subspaces");
  const std::size_t n = members.front().ambient_dim();
  for (const Subspace& s : members)
    if (s.ambient_dim() != n) throw DimensionError("fusion_norm_retrieval: mixed ambient spaces");
  FusionNormResult r;
  r.expansion = expand(n, members);
  NormRetrievalResult nr = does_norm_retrieval(*r.expansion, cfg);
  r.holds = nr.holds;
  r.witness = std::move(nr.witness);
  r.conclusive = !r.holds || std::all_of(members.begin(), members.end(),
                                         [](const Subspace& s) { return s.dim() <= 1; });
  return r;
}

FusionNormResult fusion_norm_retrieval(const FusionFrame& ff, const NumericConfig& cfg) {
  return fusion_norm_retrieval(ff.subspaces(), cfg);
}

FusionNormResult fusion_norm_retrieval(const ProjectionFamily& pf, const NumericConfig& cfg) {
  return fusion_norm_retrieval(pf.members(), cfg);
}

IpTransferReport ip_transfer_check(const ProjectionFamily& pf, bool given_wpr,
                                   const NumericConfig& cfg, std::uint64_t seed) {
  IpTransferReport r;
  for (const Subspace& w : pf.members()) r.complements.push_back(orthocomplement(w, cfg.tolerance));
  const FusionNormResult nr = fusion_norm_retrieval(r.complements, cfg);
  r.complement_norm_retrieval = nr.holds;
  if (nr.witness) r.norm_witness = nr.witness;
  r.transfer_applies = given_wpr && nr.holds;
  if (r.transfer_applies) {
    // Equal vector measurements on the expansion imply equal projected norms,
    // so any witness found here refutes weak phase retrieval for {I - P_i}.
    SearchBudget budget;
    budget.seed = seed;
    const WprSearchResult s = wpr_falsify(*nr.expansion, budget, cfg);
    if (s.witness) r.contradiction = s.witness;
  }
  return r;
}

TwoSubspaceResult two_subspace_operator(const Subspace& w1, const Subspace& w2,
                                        const std::optional<Matrix>& t_in,
                                        const NumericConfig& cfg) {
  const double tol = cfg.tolerance;
  const std::size_t n = w1.ambient_dim();
  if (w2.ambient_dim() != n) throw DimensionError("two_subspace_operator: mixed ambient spaces");
  std::vector<Vector> all = w1.basis();
  all.insert(all.end(), w2.basis().begin(), w2.basis().end());
  if (rank(all, n, tol) != n)
    throw PreconditionError("two_subspace_operator: the subspaces do not span R^n");

  TwoSubspaceResult r;
  const Subspace w3 = intersection(w1, w2, tol);
  r.disjoint = w3.dim() == 0;

  if (r.disjoint) {
    const Matrix b = Matrix::from_columns(all, n);
    r.t = inverse(b, tol);
    r.tw1 = image(*r.t, w1, tol);
    r.tw2 = image(*r.t, w2, tol);
    const bool invertible = !det(*r.t).is_zero(tol);
    r.verified = invertible && fusion_norm_retrieval(std::vector<Subspace>{*r.tw1, *r.tw2}, cfg).holds;
    return r;
  }

  if (n < 3) throw PreconditionError("two_subspace_operator: intersecting case needs n >= 3");
  if (w1.dim() == n || w2.dim() == n)
    throw PreconditionError("two_subspace_operator: a subspace equal to R^n always does norm retrieval");
  const Matrix t = t_in ? *t_in : Matrix::identity(n);
  if (t.rows() != n || t.cols() != n) throw DimensionError("two_subspace_operator: T must be n x n");
  if (det(t).is_zero(tol)) throw PreconditionError("two_subspace_operator: T is not invertible");
  r.t = t;
  r.tw1 = image(t, w1, tol);
  r.tw2 = image(t, w2, tol);
  const Subspace tw3 = intersection(*r.tw1, *r.tw2, tol);
  const Subspace w1p = relative_complement(*r.tw1, tw3, tol);
  const Subspace w2p = relative_complement(*r.tw2, tw3, tol);
  const Matrix p1 = r.tw1->projection();
  const Matrix p2 = r.tw2->projection();

  if (w1p.dim() > 0 && w2p.dim() > 0 &&
      mutually_orthogonal(w1p.basis(), w2p.basis(), tol)) {
    const Vector x1 = unit_or_float(w1p.ortho_basis().front());
    const Vector x2 = unit_or_float(tw3.ortho_basis().front());
    const Vector x3 = unit_or_float(w2p.ortho_basis().front());
    r.construction = "orthogonal-remainders";
    r.y1 = x1 + x2 * Scalar(2) + x3;
    r.y2 = x1 * Scalar(2) + x2 + x3 * Scalar(2);
  } else {
    const FusionNormResult fr = fusion_norm_retrieval(std::vector<Subspace>{*r.tw1, *r.tw2}, cfg);
    if (!fr.witness) {
      r.construction = "no-witness";
      return r;
    }
    r.construction = "basis-expansion";
    r.y1 = fr.witness->x;
    r.y2 = fr.witness->y;
  }
  r.norm1 = norm_squared(*r.y1);
  r.norm2 = norm_squared(*r.y2);
  r.verified = approx_equal_rel(norm_squared(p1 * *r.y1), norm_squared(p1 * *r.y2), tol) &&
               approx_equal_rel(norm_squared(p2 * *r.y1), norm_squared(p2 * *r.y2), tol) &&
               !approx_equal_rel(*r.norm1, *r.norm2, tol);
  return r;
}

BoundAdvisory bound_advisories(std::size_t n, const ProjectionFamily& pf) {
  if (n != pf.dim()) throw DimensionError("bound_advisories: n does not match the family");
  BoundAdvisory a;
  const std::size_t m = pf.size();
  if (is_power_of_two_minus_one(n) && m < 2 * n - 1) {
    a.dimension_rule = true;
    a.reasons.push_back("n = " + std::to_string(n) + " is of the form 2^k-1 and " +
                        std::to_string(m) + " < 2n-1 = " + std::to_string(2 * n - 1) + " subspaces");
  }
  bool all_hyperplanes = true;
  for (std::size_t i = 0; i < m; ++i) all_hyperplanes = all_hyperplanes && pf.is_hyperplane(i);
  if (all_hyperplanes && m + 2 < 2 * n) {
    a.hyperplane_rule = true;
    a.reasons.push_back(std::to_string(m) + " hyperplanes < 2n-2 = " + std::to_string(2 * n - 2));
  }
  a.phase_retrieval_impossible = a.dimension_rule || a.hyperplane_rule;
  return a;
}

}  // namespace phaseret
