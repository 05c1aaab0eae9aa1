#include "phaseret/weak_phase.hpp"

#include <algorithm>
#include <cmath>

#include "phaseret/error.hpp"

namespace phaseret {

namespace {

Vector vec2(const Scalar& a, const Scalar& b) { return Vector{a, b}; }

Matrix swap2() {
  Matrix t(2, 2);
  t(0, 1) = Scalar(1);
  t(1, 0) = Scalar(1);
  return t;
}

Matrix flip_second() {
  Matrix t = Matrix::identity(2);
  t(1, 1) = Scalar(-1);
  return t;
}

// Pulls a witness for the normalized frame {T f_i} back to the original one.
WeakWitness pull_back(const Matrix& t, WeakWitness w) {
  const Matrix tt = t.transpose();
  w.x = tt * w.x;
  w.y = tt * w.y;
  return w;
}

// Σ t^j b_j with t increased until the support is the union of the supports.
Vector generic_combination(const std::vector<Vector>& basis, double tol) {
  const std::size_t n = basis.front().dim();
  std::vector<bool> in_union(n, false);
  for (const Vector& b : basis)
    for (std::size_t i : b.support(tol)) in_union[i] = true;
  const auto wanted = static_cast<std::size_t>(std::count(in_union.begin(), in_union.end(), true));
  for (long t = 2;; ++t) {
    Vector v(n);
    Scalar power(1);
    for (const Vector& b : basis) {
      v += b * power;
      power *= Scalar(t);
    }
    if (v.support(tol).size() == wanted) return v;
  }
}

bool is_orthogonal(const Vector& a, const Vector& b, double tol) {
  const Scalar ip = inner(a, b);
  if (ip.is_exact()) return ip.is_zero();
  const double scale = std::sqrt(norm_squared(a).to_double() * norm_squared(b).to_double());
  return std::abs(ip.to_double()) <= tol * std::max(1.0, scale);
}

}  // namespace

std::string_view to_string(PhaseRelation r) {
  switch (r) {
    case PhaseRelation::SameSigns: return "same-signs";
    case PhaseRelation::OppositeSigns: return "opposite-signs";
    case PhaseRelation::TriviallySame: return "trivially-same";
    case PhaseRelation::Incomparable: return "incomparable";
  }
  return "unknown";
}

PhaseRelation phase_relation(const Vector& x, const Vector& y, double tol) {
  if (x.dim() != y.dim()) throw DimensionError("phase_relation: dimension mismatch");
  int theta = 0;
  for (std::size_t i = 0; i < x.dim(); ++i) {
    const int sx = x[i].sign(tol);
    const int sy = y[i].sign(tol);
    if (sx == 0 || sy == 0) continue;
    if (theta == 0) {
      theta = sx * sy;
    } else if (sx * sy != theta) {
      return PhaseRelation::Incomparable;
    }
  }
  if (theta == 0) return PhaseRelation::TriviallySame;
  return theta > 0 ? PhaseRelation::SameSigns : PhaseRelation::OppositeSigns;
}

bool sign_products_consistent(const Vector& x, const Vector& y, double tol) {
  if (x.dim() != y.dim()) throw DimensionError("sign_products_consistent: dimension mismatch");
  for (std::size_t i = 0; i < x.dim(); ++i) {
    for (std::size_t j = i + 1; j < x.dim(); ++j) {
      const int px = x[i].sign(tol) * x[j].sign(tol);
      const int py = y[i].sign(tol) * y[j].sign(tol);
      if (px == 0 || py == 0) continue;
      if (px != py) return false;
    }
  }
  return true;
}

bool verify_weak_witness(const Frame& f, WeakWitness& w, const NumericConfig& cfg) {
  if (w.x.dim() != f.dim() || w.y.dim() != f.dim())
    throw DimensionError("witness dimension does not match the frame");
  w.verified = measurements_equal(f, w.x, w.y, cfg.tolerance) &&
               phase_relation(w.x, w.y, cfg.tolerance) == PhaseRelation::Incomparable;
  return w.verified;
}

WeakWitness axis_slope_witness(const Scalar& a) {
  if (a.is_zero()) throw PreconditionError("axis_slope_witness: slope must be nonzero");
  const Scalar two(2);
  if (a.sign() > 0)
    return {vec2(1, 1), vec2(1, -two / a - Scalar(1)), "axis-vector/positive-slope"};
  return {vec2(1, -1), vec2(1, -two / a + Scalar(1)), "axis-vector/negative-slope"};
}

WeakWitness same_sign_slopes_witness(const Scalar& a, const Scalar& b) {
  if (!(b.sign() > 0 && a > b)) throw PreconditionError("same_sign_slopes_witness needs a > b > 0");
  const Scalar d = a - b;
  const Scalar y1 = Scalar(1) + a - (Scalar(2) * a + a * a + a * b) / d;
  const Scalar y2 = (Scalar(2) + a + b) / d;
  return {vec2(1, 1), vec2(y1, y2), "same-sign-slopes"};
}

WeakWitness opposite_sign_slopes_witness(const Scalar& a, const Scalar& b) {
  if (!(b.sign() > 0 && a > b))
    throw PreconditionError("opposite_sign_slopes_witness needs a > b > 0");
  const Scalar a2 = (a - b) / (Scalar(4) * a * b);
  const Scalar s = Scalar(2) + a * a2 - a2 * b;
  const Scalar b1 = Scalar(1) + a * a2 - (a / (a + b)) * s;
  const Scalar b2 = s / (a + b);
  return {vec2(1, a2), vec2(b1, b2), "opposite-sign-slopes"};
}

R2Classification classify_wpr_r2(const Vector& x1, const Vector& x2, const NumericConfig& cfg) {
  if (x1.dim() != 2 || x2.dim() != 2) throw DimensionError("classify_wpr_r2 needs vectors in R^2");
  const double tol = cfg.tolerance;
  if (x1.is_zero(tol) || x2.is_zero(tol)) throw PreconditionError("classify_wpr_r2: zero vector");
  const Frame frame(2, {x1, x2});
  R2Classification out;

  const Scalar d = x1[0] * x2[1] - x1[1] * x2[0];
  if (d.is_zero(tol * std::max(1.0, std::sqrt(norm_squared(x1).to_double() *
                                               norm_squared(x2).to_double())))) {
    out.route = "proportional";
    out.normal_first = x1;
    out.normal_second = x2;
    out.witness = nonspanning_counterexample(frame, cfg);
    return out;
  }

  const bool zero1 = x1[0].is_zero(tol) || x1[1].is_zero(tol);
  const bool zero2 = x2[0].is_zero(tol) || x2[1].is_zero(tol);
  WeakWitness w;
  Matrix t = Matrix::identity(2);

  if (zero1 || zero2) {
    // g has a zero coordinate; rotate it onto the first axis.
    const Vector& g = zero1 ? x1 : x2;
    const Vector& h = zero1 ? x2 : x1;
    if (!g[0].is_zero(tol) && g[1].is_zero(tol)) {
      t = Matrix::identity(2);
    } else {
      t = swap2();
    }
    const Vector hp = t * h;
    out.normal_first = vec2(1, 0);
    if (hp[0].is_zero(tol)) {
      out.normal_second = vec2(0, 1);
      out.route = "axis-pair";
      w = {vec2(1, 1), vec2(1, -1), "axis-pair"};
    } else {
      const Scalar a = hp[1] / hp[0];
      out.normal_second = vec2(1, a);
      out.route = "axis-vector";
      w = axis_slope_witness(a);
    }
  } else {
    const Scalar p = x1[1] / x1[0];
    const Scalar q = x2[1] / x2[0];
    if (p.sign(tol) * q.sign(tol) < 0) {
      if (approx_equal_rel(p, -q, tol)) {
        out.does_wpr = true;
        out.route = "mirror-pair";
        out.mirror_slope = p.abs();
        out.normal_first = vec2(1, p.abs());
        out.normal_second = vec2(1, -p.abs());
        return out;
      }
      Scalar a = p.sign() > 0 ? p : q;
      Scalar b = p.sign() > 0 ? -q : -p;
      if (a < b) {
        t = swap2();
        a = a.reciprocal();
        b = b.reciprocal();
      }
      out.route = "opposite-sign-slopes";
      out.normal_first = vec2(1, a);
      out.normal_second = vec2(1, -b);
      w = opposite_sign_slopes_witness(a, b);
    } else {
      if (p.sign() < 0) t = flip_second();
      Scalar a = std::max(p.abs(), q.abs());
      Scalar b = std::min(p.abs(), q.abs());
      if (a < Scalar(1)) {
        t = swap2() * t;
        const Scalar na = b.reciprocal();
        b = a.reciprocal();
        a = na;
      }
      out.route = "same-sign-slopes";
      out.normal_first = vec2(1, a);
      out.normal_second = vec2(1, b);
      w = same_sign_slopes_witness(a, b);
    }
  }
  w = pull_back(t, std::move(w));
  verify_weak_witness(frame, w, cfg);
  out.witness = std::move(w);
  return out;
}

WeakWitness nonspanning_counterexample(const Frame& f, const NumericConfig& cfg) {
  const Subspace span = Subspace::span_of(f.dim(), f.vectors(), cfg.tolerance);
  const Subspace comp = orthocomplement(f.vectors(), f.dim(), cfg.tolerance);
  if (comp.dim() == 0) throw PreconditionError("nonspanning_counterexample: frame spans R^n");
  const Vector x = generic_combination(span.basis(), cfg.tolerance);
  const Vector z = generic_combination(comp.basis(), cfg.tolerance);
  return nonspanning_counterexample(f, x, z, cfg);
}

WeakWitness nonspanning_counterexample(const Frame& f, const Vector& x, const Vector& z,
                                       const NumericConfig& cfg) {
  const double tol = cfg.tolerance;
  if (x.dim() != f.dim() || z.dim() != f.dim())
    throw DimensionError("nonspanning_counterexample: x and z must live in R^n");
  if (x.is_zero(tol) || z.is_zero(tol))
    throw PreconditionError("nonspanning_counterexample: x and z must be nonzero");
  for (std::size_t i = 0; i < f.size(); ++i)
    if (!is_orthogonal(z, f[i], tol))
      throw PreconditionError("nonspanning_counterexample: z is not orthogonal to frame vector " +
                              std::to_string(i));
  std::vector<Vector> with_x = f.vectors();
  with_x.push_back(x);
  if (rank(with_x, f.dim(), tol) != rank(f.vectors(), f.dim(), tol))
    throw PreconditionError("nonspanning_counterexample: x is not in the span of the frame");

  std::vector<std::size_t> shared;
  for (std::size_t i = 0; i < x.dim(); ++i)
    if (!x[i].is_zero(tol) && !z[i].is_zero(tol)) shared.push_back(i);

  WeakWitness w;
  if (shared.size() >= 2) {
    bool found = false;
    for (std::size_t a = 0; a < shared.size() && !found; ++a) {
      for (std::size_t b = a + 1; b < shared.size() && !found; ++b) {
        const std::size_t i = shared[a];
        const std::size_t j = shared[b];
        if ((x[i] * x[j]).sign(tol) == (z[i] * z[j]).sign(tol)) continue;
        const Scalar scale = Scalar(2) * std::max((x[i] / z[i]).abs(), (x[j] / z[j]).abs());
        w = {z * scale + x, x, "non-spanning/shared-support"};
        found = true;
      }
    }
    if (!found) throw Error("nonspanning_counterexample: no sign-changing pair on the shared support");
  } else if (shared.size() == 1) {
    throw PreconditionError("nonspanning_counterexample: x and z are not orthogonal");
  } else {
    w = {x + z, x - z, "non-spanning/disjoint-support"};
  }
  verify_weak_witness(f, w, cfg);
  return w;
}

NecessaryConditionsReport wpr_necessary_conditions(const Frame& f, const NumericConfig& cfg) {
  NecessaryConditionsReport r;
  r.m = f.size();
  r.n = f.dim();
  r.count_ok = r.m + 2 >= 2 * r.n;
  if (!r.count_ok) r.failed.push_back("fewer than 2n-2 vectors");
  if (r.m + 2 == 2 * r.n) {
    r.full_spark_ok = is_full_spark(f, cfg);
    if (!*r.full_spark_ok) r.failed.push_back("m = 2n-2 but the frame is not full spark");
  }
  r.spanning_ok = spans(f, cfg);
  if (!r.spanning_ok) {
    r.failed.push_back("frame does not span R^n");
    r.witness = nonspanning_counterexample(f, cfg);
  }
  return r;
}

bool check_decomposition(const ScaledDecomposition& d, const Vector& x, const Vector& y,
                         double tol) {
  if (x.dim() != y.dim()) return false;
  if (d.a.is_zero(tol)) return false;
  std::vector<bool> in_i(x.dim(), false);
  for (std::size_t i : d.coords) {
    if (i >= x.dim()) return false;
    in_i[i] = true;
  }
  for (std::size_t i = 0; i < x.dim(); ++i) {
    const Scalar target = in_i[i] ? d.a * y[i] : y[i] / d.a;
    if (!approx_equal_rel(x[i], target, tol)) return false;
  }
  return true;
}

std::optional<ScaledDecomposition> decompose_scaled(const Frame& f, const Vector& x,
                                                    const Vector& y, const NumericConfig& cfg) {
  const double tol = cfg.tolerance;
  const std::size_t n = f.dim();
  if (x.dim() != n || y.dim() != n) throw DimensionError("decompose_scaled: dimension mismatch");
  if (f.size() + 2 != 2 * n) throw PreconditionError("decompose_scaled needs m = 2n-2");
  if (!is_full_spark(f, cfg)) throw PreconditionError("decompose_scaled needs a full spark frame");
  if (!measurements_equal(f, x, y, tol))
    throw PreconditionError("decompose_scaled: x and y do not have equal measurements");

  std::vector<std::size_t> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = i;
  if (approx_equal(x, y, tol)) return ScaledDecomposition{Scalar(1), all};
  if (approx_equal(x, -y, tol)) return ScaledDecomposition{Scalar(-1), all};

  const double s = std::sqrt(norm_squared(x + y).to_double());
  const double dd = std::sqrt(norm_squared(x - y).to_double());
  const double a_float = (1.0 / dd - 1.0 / s) / (1.0 / s + 1.0 / dd);

  // Candidates: the float estimate and, to stay exact, the first coordinate
  // ratio and its reciprocal.
  std::vector<Scalar> candidates;
  for (std::size_t i = 0; i < n; ++i) {
    if (y[i].is_zero(tol)) {
      if (!x[i].is_zero(tol)) return std::nullopt;
      continue;
    }
    if (candidates.empty()) {
      const Scalar r = x[i] / y[i];
      if (r.is_zero(tol)) return std::nullopt;
      candidates = {r, r.reciprocal()};
    }
  }
  if (candidates.empty()) return std::nullopt;
  std::sort(candidates.begin(), candidates.end(), [&](const Scalar& p, const Scalar& q) {
    return std::abs(p.to_double() - a_float) < std::abs(q.to_double() - a_float);
  });
  if (!x.is_exact() || !y.is_exact()) candidates.emplace_back(a_float);

  for (const Scalar& a : candidates) {
    ScaledDecomposition d{a, {}};
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      if (approx_equal_rel(x[i], a * y[i], tol)) {
        d.coords.push_back(i);
      } else if (!approx_equal_rel(x[i], y[i] / a, tol)) {
        ok = false;
      }
    }
    if (ok) return d;
  }
  return std::nullopt;
}

DisjointSupportReport disjoint_support_check(const Frame& f, const Partition& partition,
                                             const NumericConfig& cfg) {
  if (partition.size != f.size()) throw PreconditionError("partition does not match frame size");
  const double tol = cfg.tolerance;
  const std::size_t n = f.dim();
  const Subspace u_space = orthocomplement(f.select(partition.mask), n, tol);
  const Subspace v_space = orthocomplement(f.select(partition.complement_mask()), n, tol);
  DisjointSupportReport r;
  r.hypotheses_met = f.size() + 2 == 2 * n && partition.indices().size() + 1 == n &&
                     u_space.dim() == 1 && v_space.dim() == 1;
  if (u_space.dim() == 0 || v_space.dim() == 0) {
    r.vacuous = true;
    return r;
  }
  for (std::size_t j = 0; j < u_space.dim(); ++j) {
    for (std::size_t k = 0; k < v_space.dim(); ++k) {
      const Vector& u = u_space.basis()[j];
      const Vector& v = v_space.basis()[k];
      const Scalar nu = norm_squared(u);
      const Scalar nv = norm_squared(v);
      bool disjoint = true;
      for (std::size_t i = 0; i < n && disjoint; ++i)
        disjoint = approx_equal_rel(u[i] * u[i] * nv, v[i] * v[i] * nu, tol);
      r.pairs.push_back({j, k, disjoint});
      r.holds = r.holds && disjoint;
    }
  }
  return r;
}

bool orthogonal_incomparability(const Vector& x, const Vector& y, const NumericConfig& cfg) {
  if (x.dim() != y.dim()) throw DimensionError("orthogonal_incomparability: dimension mismatch");
  if (!is_orthogonal(x, y, cfg.tolerance))
    throw PreconditionError("orthogonal_incomparability: x and y are not orthogonal");
  bool shared = false;
  for (std::size_t i = 0; i < x.dim(); ++i)
    shared = shared || (!x[i].is_zero(cfg.tolerance) && !y[i].is_zero(cfg.tolerance));
  if (!shared)
    throw PreconditionError("orthogonal_incomparability: x and y share no nonzero coordinate");
  return phase_relation(x, y, cfg.tolerance) == PhaseRelation::Incomparable;
}

}  // namespace phaseret
