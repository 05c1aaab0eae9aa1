#include <algorithm>

#include "phaseret/error.hpp"
#include "phaseret/report.hpp"

namespace phaseret {

namespace {

Vector v(std::initializer_list<Scalar> xs) { return Vector(xs); }

Vector e(std::size_t n, std::size_t i) { return Vector::unit(n, i); }

// Collects named boolean checks into {"pass": ..., "checks": {...}}.
class Checks {
 public:
  void add(const std::string& name, bool ok) {
    j_["checks"][name] = ok;
    pass_ = pass_ && ok;
  }
  void note(const std::string& key, json value) { j_[key] = std::move(value); }
  json finish() {
    json out;
    out["pass"] = pass_;
    for (auto& [k, val] : j_.items()) out[k] = val;
    return out;
  }

 private:
  json j_ = json::object();
  bool pass_ = true;
};

Frame hyperplane_normals() {
  return Frame(3, {v({1, 1, 1}), v({-1, 1, 1}), v({1, -1, 1}), v({1, 1, -1})});
}

Frame surd_frame() {
  const Scalar r2 = sqrt(Scalar(2));
  return Frame(3, {v({0.0, 0.0, 1.0}), v({1.0, 0.0, 1.0}), v({0.0, 1.0, 1.0}),
                   v({1.0, Scalar(1.0) - r2, 2.0}), v({1.0, 1.0, 1.0})});
}

Subspace span(std::size_t n, std::vector<Vector> basis) { return Subspace(n, std::move(basis)); }

std::vector<ExampleCase> build() {
  std::vector<ExampleCase> r;

  r.push_back({"full-spark-not-wpr", "full spark frame in R^3 that fails weak phase retrieval",
               [](const NumericConfig& cfg) {
                 Checks c;
                 const Frame f(3, {e(3, 0), e(3, 1), e(3, 2), v({1, 1, -3})});
                 const Vector x = v({4, 3, 1});
                 const Vector y = v({4, -3, -1});
                 c.add("spark is 4", spark(f, cfg) == 4);
                 c.add("full spark", is_full_spark(f, cfg));
                 c.add("equal measurements", measurements_equal(f, x, y, 0.0));
                 c.add("incomparable", phase_relation(x, y) == PhaseRelation::Incomparable);
                 const WprSearchResult s = wpr_falsify(f, {}, cfg);
                 c.add("falsifier finds a witness", s.witness.has_value() && s.witness->verified);
                 return c.finish();
               }});

  r.push_back({"mirror-pair-wpr", "{(1,1),(1,-1)} does weak phase retrieval",
               [](const NumericConfig& cfg) {
                 Checks c;
                 const R2Classification k = classify_wpr_r2(v({1, 1}), v({1, -1}), cfg);
                 c.add("classifier says yes", k.does_wpr);
                 const WprSearchResult s = wpr_falsify(Frame(2, {v({1, 1}), v({1, -1})}), {}, cfg);
                 c.add("exact scan finds nothing", s.complete());
                 return c.finish();
               }});

  r.push_back({"axis-vector-witness", "witnesses for {(1,0),(1,a)}", [](const NumericConfig& cfg) {
                 Checks c;
                 for (const Scalar& a : {Scalar(2), Scalar(-3), Scalar::ratio(1, 5)}) {
                   const Frame f(2, {v({1, 0}), v({1, a})});
                   WeakWitness w = axis_slope_witness(a);
                   c.add("a = " + a.str(), verify_weak_witness(f, w, cfg));
                 }
                 return c.finish();
               }});

  r.push_back({"same-sign-slopes-witness", "closed-form witness for {(1,a),(1,b)}, a = 2, b = 1/2",
               [](const NumericConfig& cfg) {
                 Checks c;
                 const Scalar a(2);
                 const Scalar b = Scalar::ratio(1, 2);
                 const WeakWitness w = same_sign_slopes_witness(a, b);
                 c.add("<y,x1> = 1 + a", inner(w.y, v({1, a})) == Scalar(1) + a);
                 c.add("<y,x2> = -(1 + b)", inner(w.y, v({1, b})) == -(Scalar(1) + b));
                 WeakWitness copy = w;
                 c.add("verifies", verify_weak_witness(Frame(2, {v({1, a}), v({1, b})}), copy, cfg));
                 return c.finish();
               }});

  r.push_back({"opposite-sign-slopes-witness", "closed-form witness for {(1,a),(1,-b)}, a = 3, b = 1",
               [](const NumericConfig& cfg) {
                 Checks c;
                 const Scalar a(3);
                 const Scalar b(1);
                 WeakWitness w = opposite_sign_slopes_witness(a, b);
                 c.add("y_1 < 0", w.y[0].sign() < 0);
                 c.add("y_2 > 0", w.y[1].sign() > 0);
                 c.add("verifies", verify_weak_witness(Frame(2, {v({1, a}), v({1, -b})}), w, cfg));
                 return c.finish();
               }});

  r.push_back({"hyperplanes-span-deficient",
               "hyperplanes orthogonal to a weak phase retrievable frame in R^3",
               [](const NumericConfig& cfg) {
                 Checks c;
                 const ProjectionFamily pf = perp_family(hyperplane_normals());
                 const Vector ones = v({1, 1, 1});
                 c.add("P1 kills (1,1,1)", proj_measurements(pf, ones)[0].is_zero());
                 const Vector abc = v({5, -2, 7});
                 const Scalar mean = (Scalar(5) - Scalar(2) + Scalar(7)) / Scalar(3);
                 c.add("P1 closed form",
                       pf.projection(0) * abc == v({Scalar(5) - mean, Scalar(-2) - mean, Scalar(7) - mean}));
                 // The printed formulas for P2..P4 negate one coordinate; the true
                 // projections map (1,1,1) onto a spanning set.
                 c.add("P2(1,1,1) = (4/3,2/3,2/3)",
                       pf.projection(1) * ones ==
                           v({Scalar::ratio(4, 3), Scalar::ratio(2, 3), Scalar::ratio(2, 3)}));
                 c.add("span{P_i(1,1,1)} = R^3", !span_criterion_at(pf, ones, cfg).has_value());
                 c.note("discrepancy",
                        "the stated closed forms for P2..P4 are not orthogonal projections; with "
                        "them span{P_i(1,1,1)} would have rank 2");
                 const ProjectionSearchResult ps = projection_pr_falsify(pf, {}, cfg);
                 c.add("falsifier finds a rank-deficient x", ps.witness && ps.exact &&
                                                                 ps.witness->achieved_rank < 3);
                 if (ps.witness) c.note("span_witness", span_witness_json(*ps.witness));
                 c.add("bound: dimension rule", bound_advisories(3, pf).dimension_rule);
                 const FusionNormResult nr = fusion_norm_retrieval(pf, cfg);
                 const WprSearchResult s = wpr_falsify(*nr.expansion, {}, cfg);
                 c.note("weak_phase_falsifier", s.witness ? "witness found" : "no counterexample found");
                 return c.finish();
               }});

  r.push_back({"dependent-four-vectors",
               "non-full-spark frame in R^3 and its hyperplanes (measurement-equality only, "
               "definitional discrepancy flagged)",
               [](const NumericConfig& cfg) {
                 Checks c;
                 const Frame f(3, {v({1, 1, 0}), v({-1, 0, 1}), v({1, -1, 0}), v({0, 1, -1})});
                 c.add("not full spark", !is_full_spark(f, cfg));
                 c.add("x4 = -x2 - x3", f[3] == -f[1] - f[2]);
                 const Vector x = v({-2, -1, 0});
                 const Vector y = v({1, 2, 3});
                 c.add("equal measurements", measurements_equal(f, x, y, 0.0));
                 const PhaseRelation rel = phase_relation(x, y);
                 c.note("phase_relation", std::string(to_string(rel)));
                 c.note("discrepancy",
                        "the stated pair is weakly of the same phase (opposite signs on the shared "
                        "support), so it does not refute weak phase retrieval");
                 const ProjectionFamily pf = perp_family(f);
                 const Vector abc = v({5, -2, 7});
                 c.add("P1 closed form",
                       pf.projection(0) * abc ==
                           v({Scalar::ratio(7, 2), Scalar::ratio(-7, 2), Scalar(7)}));
                 const WprSearchResult s = wpr_falsify(f, {}, cfg);
                 c.note("frame_falsifier", s.witness ? "witness found" : "no counterexample found");
                 if (s.witness) c.note("frame_witness", weak_witness_json(*s.witness));
                 return c.finish();
               }});

  r.push_back({"hyperplanes-transfer-failure",
               "hyperplanes orthogonal to a full spark frame fail weak phase retrieval",
               [](const NumericConfig& base) {
                 NumericConfig cfg = base;
                 cfg.tolerance = 1e-9;
                 Checks c;
                 const Frame f = surd_frame();
                 c.add("full spark", is_full_spark(f, cfg));
                 const ProjectionFamily pf = perp_family(f, cfg.tolerance);
                 const Vector x5 = v({1.0, 1.0, 1.0});
                 const auto w = span_criterion_at(pf, x5, cfg);
                 c.add("span{P_i x5} has rank 2", w && w->achieved_rank == 2);
                 if (w) {
                   const Subspace s = Subspace(3, w->spanned, cfg.tolerance);
                   c.add("span is span{e1,e2}", s.contains(e(3, 0), cfg.tolerance) &&
                                                    s.contains(e(3, 1), cfg.tolerance));
                 }
                 const ProjectionPairReport pr =
                     weak_phase_by_projections_check(pf, v({1.0, 1.0, 3.0}), v({1.0, 1.0, -1.0}), cfg);
                 c.add("equal projected norms", pr.norms_equal);
                 c.add("refutes weak phase retrieval", pr.refutes_wpr);
                 return c.finish();
               }});

  r.push_back({"mirror-pair-not-norm", "{(1,3),(1,-3)}: weak phase retrieval without norm retrieval",
               [](const NumericConfig& cfg) {
                 Checks c;
                 const Frame f(2, {v({1, 3}), v({1, -3})});
                 const Vector x = v({1, 1});
                 const Vector y = v({3, Scalar::ratio(1, 3)});
                 c.add("equal measurements", measurements_equal(f, x, y, 0.0));
                 c.add("|x|^2 = 2", norm_squared(x) == Scalar(2));
                 c.add("|y|^2 = 82/9", norm_squared(y) == Scalar::ratio(82, 9));
                 c.add("classifier says yes", classify_wpr_r2(f[0], f[1], cfg).does_wpr);
                 c.add("norm retrieval fails", !does_norm_retrieval(f, cfg).holds);
                 const Rank1Report r1 = rank1_equivalence(f, cfg);
                 c.add("rank-one transfer", r1.identity_holds && r1.weak_phase_retrieval.value_or(false));
                 return c.finish();
               }});

  r.push_back({"riesz-norm-retrieval", "non-orthogonal expansion of a fusion frame fails norm retrieval",
               [](const NumericConfig& cfg) {
                 Checks c;
                 const Frame f(3, {v({1, 1, 0}), v({0, 1, 0}), v({0, 0, 1}), v({0, 1, 1}), v({1, 0, 1})});
                 c.add("norm retrieval fails", !does_norm_retrieval(f, cfg).holds);
                 const Partition p{0b01110, 5};  // I = {1,2,3}, I^c = {0,4}
                 const PartitionWitness w = measurement_pair(f, p, e(3, 0), v({1, -1, -1}), cfg);
                 c.add("<e1, e1-e2-e3> = 1", inner(w.u, w.v) == Scalar(1));
                 c.add("equal measurements", measurements_equal(f, w.x, w.y, 0.0));
                 c.add("different norms", norm_squared(w.x) != norm_squared(w.y));
                 c.note("inner_uv", to_json(inner(w.u, w.v)));
                 return c.finish();
               }});

  r.push_back({"fusion-six-subspaces", "six subspaces of R^3 doing norm retrieval",
               [](const NumericConfig& cfg) {
                 Checks c;
                 const std::vector<Subspace> ws{
                     span(3, {e(3, 0), e(3, 1)}),
                     span(3, {e(3, 1)}),
                     span(3, {e(3, 2)}),
                     span(3, {v({Scalar::ratio(1, 2), Scalar::ratio(1, 2), 0})}),
                     span(3, {v({0, Scalar::ratio(1, 2), Scalar::ratio(1, 2)})}),
                     span(3, {v({Scalar::ratio(1, 2), 0, Scalar::ratio(1, 2)})})};
                 c.add("norm retrieval", fusion_norm_retrieval(ws, cfg).holds);
                 return c.finish();
               }});

  r.push_back({"two-planes-not-perpendicular", "{[e1-e2], [e2,e3]} fails norm retrieval",
               [](const NumericConfig& cfg) {
                 Checks c;
                 const std::vector<Subspace> ws{span(3, {v({1, -1, 0})}), span(3, {e(3, 1), e(3, 2)})};
                 const FusionNormResult r = fusion_norm_retrieval(ws, cfg);
                 c.add("norm retrieval fails", !r.holds && r.witness.has_value());
                 return c.finish();
               }});

  r.push_back({"two-subspace-disjoint", "W1 = [e1], W2 = [e2,e3]: T = I works",
               [](const NumericConfig& cfg) {
                 Checks c;
                 const TwoSubspaceResult t =
                     two_subspace_operator(span(3, {e(3, 0)}), span(3, {e(3, 1), e(3, 2)}), std::nullopt, cfg);
                 c.add("disjoint", t.disjoint);
                 c.add("T is the identity", t.t && *t.t == Matrix::identity(3));
                 c.add("verified", t.verified);
                 return c.finish();
               }});

  r.push_back({"two-subspace-case1", "W1 = [e1,e2], W2 = [e2,e3]: no operator gives norm retrieval",
               [](const NumericConfig& cfg) {
                 Checks c;
                 const TwoSubspaceResult t = two_subspace_operator(
                     span(3, {e(3, 0), e(3, 1)}), span(3, {e(3, 1), e(3, 2)}), std::nullopt, cfg);
                 c.add("intersecting", !t.disjoint);
                 c.add("orthogonal remainders", t.construction == "orthogonal-remainders");
                 c.add("|y1|^2 = 6", t.norm1 && *t.norm1 == Scalar(6));
                 c.add("|y2|^2 = 9", t.norm2 && *t.norm2 == Scalar(9));
                 c.add("equal projected norms", t.verified);
                 if (t.y1) c.note("y1", to_json(*t.y1));
                 if (t.y2) c.note("y2", to_json(*t.y2));
                 return c.finish();
               }});

  r.push_back({"bound-dimension-rule", "n = 3 with 4 subspaces cannot do phase retrieval",
               [](const NumericConfig&) {
                 Checks c;
                 const ProjectionFamily pf = perp_family(hyperplane_normals());
                 const BoundAdvisory a = bound_advisories(3, pf);
                 c.add("impossible", a.phase_retrieval_impossible && a.dimension_rule);
                 return c.finish();
               }});

  r.push_back({"bound-hyperplane-rule", "n = 4 with 5 hyperplanes cannot do phase retrieval",
               [](const NumericConfig&) {
                 Checks c;
                 const Frame normals(4, {e(4, 0), e(4, 1), e(4, 2), e(4, 3), v({1, 1, 1, 1})});
                 const BoundAdvisory a = bound_advisories(4, perp_family(normals));
                 c.add("impossible", a.phase_retrieval_impossible && a.hyperplane_rule);
                 c.add("dimension rule silent", !a.dimension_rule);
                 return c.finish();
               }});

  r.push_back({"wpr-frame-r3", "{(1,1,1),(-1,1,1),(1,-1,1),(1,1,-1)} does weak phase retrieval",
               [](const NumericConfig& cfg) {
                 Checks c;
                 const Frame f = hyperplane_normals();
                 c.add("full spark", is_full_spark(f, cfg));
                 c.add("phase retrieval fails", !does_phase_retrieval(f, cfg).holds);
                 const WprSearchResult s = wpr_falsify(f, {}, cfg);
                 c.add("complete exact scan, no witness", s.complete());
                 return c.finish();
               }});

  r.push_back({"orthonormal-basis", "an orthonormal basis does norm retrieval but not phase retrieval",
               [](const NumericConfig& cfg) {
                 Checks c;
                 const Frame f(3, {e(3, 0), e(3, 1), e(3, 2)});
                 c.add("norm retrieval", does_norm_retrieval(f, cfg).holds);
                 c.add("no phase retrieval", !does_phase_retrieval(f, cfg).holds);
                 c.add("orthogonality consistent", orthogonality_necessity(f, cfg).consistent);
                 return c.finish();
               }});

  return r;
}

}  // namespace

const std::vector<ExampleCase>& example_registry() {
  static const std::vector<ExampleCase> registry = build();
  return registry;
}

json run_examples(const std::string& id, const NumericConfig& cfg) {
  json results = json::array();
  bool all = true;
  bool matched = false;
  for (const ExampleCase& ex : example_registry()) {
    if (!id.empty() && ex.id != id) continue;
    matched = true;
    json r;
    r["id"] = ex.id;
    r["description"] = ex.description;
    json body = ex.run(cfg);
    for (auto& [k, val] : body.items()) r[k] = val;
    all = all && r["pass"].get<bool>();
    results.push_back(std::move(r));
  }
  if (!matched) throw PreconditionError("unknown example id '" + id + "'");
  return json{{"pass", all}, {"examples", results}};
}

}  // namespace phaseret
