// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "phaseret/error.hpp"
#include "phaseret/report.hpp"
#include "test_util.hpp"

using namespace phaseret;
using testutil::q;
using testutil::vec;

namespace {

constexpr double kFloatTol = 1e-9;     // criterion 7
constexpr int kR2Pairs = 1000;         // criterion 2
constexpr int kWitnessParams = 50;     // criterion 3
constexpr int kNonspanning = 100;      // criterion 4
constexpr int kFullSparkFrames = 200;  // criterion 5
constexpr int kNormCorpus = 200;       // criterion 6
constexpr std::uint64_t kOracleTrials = 10000;
constexpr int kDisjointPairs = 50;     // criterion 9
constexpr int kRoundTrips = 100;       // criterion 10
constexpr int kDensePairs = 10000;     // criterion 11

struct Outcome {
  bool pass = true;
  std::string detail;
};

Vector e(std::size_t n, std::size_t i) { return Vector::unit(n, i); }

// Random rational strictly inside (lo, hi), denominator up to 12.
Scalar rational_in(std::mt19937_64& rng, long lo, long hi) {
  std::uniform_int_distribution<long> den(2, 12);
  const long d = den(rng);
  std::uniform_int_distribution<long> num(lo * d + 1, hi * d - 1);
  return Scalar::ratio(num(rng), d);
}

Outcome criterion1() {
  const NumericConfig cfg{0.0, 22};
  const Frame f(3, {e(3, 0), e(3, 1), e(3, 2), vec({1, 1, -3})});
  const Vector x = vec({4, 3, 1});
  const Vector y = vec({4, -3, -1});
  Outcome o;
  o.pass = spark(f, cfg) == 4 && is_full_spark(f, cfg) && measurements_equal(f, x, y, 0.0) &&
           phase_relation(x, y) == PhaseRelation::Incomparable;
  o.detail = "spark " + std::to_string(spark(f, cfg));
  return o;
}

Outcome criterion2() {
  std::mt19937_64 rng(2002);
  int disagreements = 0, bad_witnesses = 0, yes = 0;
  for (int t = 0; t < kR2Pairs; ++t) {
    const Vector a = testutil::random_nonzero_vector(rng, 2, 5, 4);
    const Vector b = testutil::random_nonzero_vector(rng, 2, 5, 4);
    const R2Classification k = classify_wpr_r2(a, b);
    const WprSearchResult s = wpr_falsify(Frame(2, {a, b}));
    const bool scan_says_wpr = !s.witness.has_value() && s.complete();
    if (k.does_wpr != scan_says_wpr) ++disagreements;
    if (k.does_wpr) {
      ++yes;
      continue;
    }
    if (!k.witness) {
      ++bad_witnesses;
      continue;
    }
    WeakWitness w = *k.witness;
    w.verified = false;
    const Frame f(2, {a, b});
    if (!verify_weak_witness(f, w) || !measurements_equal(f, w.x, w.y, 0.0) ||
        phase_relation(w.x, w.y) != PhaseRelation::Incomparable)
      ++bad_witnesses;
  }
  return {disagreements == 0 && bad_witnesses == 0,
          std::to_string(disagreements) + " disagreements, " + std::to_string(bad_witnesses) +
              " bad witnesses, " + std::to_string(yes) + " mirror pairs"};
}

Outcome criterion3() {
  std::mt19937_64 rng(3003);
  int failures = 0;
  for (int t = 0; t < kWitnessParams; ++t) {
    // a >= 1 > b > 0
    const Scalar a = t % 5 == 0 ? q(1) : rational_in(rng, 1, 6);
    const Scalar b = rational_in(rng, 0, 1);
    const WeakWitness w = same_sign_slopes_witness(a, b);
    if (inner(w.y, vec({1, a})) != q(1) + a || inner(w.y, vec({1, b})) != -(q(1) + b)) ++failures;
  }
  for (int t = 0; t < kWitnessParams; ++t) {
    // a > b > 0
    const Scalar b = rational_in(rng, 0, 4);
    const Scalar a = b + rational_in(rng, 0, 4);
    const WeakWitness w = opposite_sign_slopes_witness(a, b);
    const Frame f(2, {vec({1, a}), vec({1, -b})});
    if (!(w.y[0].sign() < 0 && w.y[1].sign() > 0) || !measurements_equal(f, w.x, w.y, 0.0)) ++failures;
  }
  return {failures == 0, std::to_string(failures) + " failures over " + std::to_string(2 * kWitnessParams)};
}

Outcome criterion4() {
  std::mt19937_64 rng(4004);
  int failures = 0;
  for (int t = 0; t < kNonspanning; ++t) {
    const std::size_t n = 2 + t % 4;
    const std::size_t r = 1 + t % (n - 1);
    std::vector<Vector> basis;
    for (std::size_t i = 0; i < r; ++i) basis.push_back(testutil::random_nonzero_vector(rng, n, 4, 3));
    std::vector<Vector> vs;
    for (std::size_t i = 0; i < r + 1 + t % 3; ++i) {
      Vector c(n);
      for (const Vector& b : basis) c = c + b * testutil::random_rational(rng, 3, 2);
      vs.push_back(c.is_zero() ? basis[0] : c);
    }
    const Frame f(n, vs);
    const WeakWitness w = nonspanning_counterexample(f);
    if (!measurements_equal(f, w.x, w.y, 0.0) || phase_relation(w.x, w.y) != PhaseRelation::Incomparable)
      ++failures;
  }
  return {failures == 0, std::to_string(failures) + " failures over " + std::to_string(kNonspanning)};
}

Outcome criterion5() {
  std::mt19937_64 rng(5005);
  int mismatches = 0, corpus = 0;
  std::vector<Frame> frames{
      Frame(3, {e(3, 0), e(3, 1), e(3, 2), vec({1, 1, -3})}),
      Frame(3, {vec({1, 1, 1}), vec({-1, 1, 1}), vec({1, -1, 1}), vec({1, 1, -1})}),
      Frame(2, {vec({1, 0}), vec({0, 1}), vec({1, 1})}),
      Frame(3, {vec({1, 1, 0}), vec({-1, 0, 1}), vec({1, -1, 0}), vec({0, 1, -1})}),
  };
  for (int t = 0; t < 120; ++t) {
    const std::size_t n = 2 + t % 3;
    const std::size_t m = std::min<std::size_t>(10, n + t % 7);
    frames.push_back(testutil::random_frame(rng, n, m, 2, 1));
  }
  for (const Frame& f : frames) {
    ++corpus;
    const bool naive = testutil::naive_complement_property(f);
    if (does_phase_retrieval(f).holds != naive || has_complement_property(f).holds != naive) ++mismatches;
  }
  int spark_mismatches = 0;
  for (int t = 0; t < kFullSparkFrames; ++t) {
    const std::size_t n = 2 + t % 3;
    const Frame f = testutil::random_frame(rng, n, 2 * n - 1, 2, 2);
    const PhaseRetrievalCertificate c = does_phase_retrieval(f);
    if (c.holds != is_full_spark(f) || c.full_spark != std::optional<bool>(c.holds)) ++spark_mismatches;
  }
  return {mismatches == 0 && spark_mismatches == 0,
          std::to_string(mismatches) + "/" + std::to_string(corpus) + " corpus mismatches, " +
              std::to_string(spark_mismatches) + "/" + std::to_string(kFullSparkFrames) +
              " full-spark mismatches"};
}

Outcome criterion6() {
  const Frame f(3, {vec({1, 1, 0}), vec({0, 1, 0}), vec({0, 0, 1}), vec({0, 1, 1}), vec({1, 0, 1})});
  bool ok = !does_norm_retrieval(f).holds;
  const PartitionWitness w = measurement_pair(f, Partition{0b01110, 5}, e(3, 0), vec({1, -1, -1}));
  ok = ok && inner(w.u, w.v) == q(1) && measurements_equal(f, w.x, w.y, 0.0);

  std::mt19937_64 rng(6006);
  int contradictions = 0, holds = 0;
  for (int t = 0; t < kNormCorpus; ++t) {
    const std::size_t n = 2 + t % 2;
    Frame fr = t % 4 == 0 ? Frame(n, [&] {
      std::vector<Vector> vs;  // orthogonal bases, possibly repeated, do norm retrieval
      for (std::size_t i = 0; i < n; ++i) vs.push_back(e(n, i) * testutil::random_nonzero_rational(rng));
      return vs;
    }())
                          : testutil::random_frame(rng, n, n + t % 3, 2, 2);
    const bool exact = does_norm_retrieval(fr).holds;
    holds += exact ? 1 : 0;
    const NormOracleResult s =
        norm_retrieval_sampling_oracle(fr, SearchBudget{kOracleTrials, static_cast<std::uint64_t>(t), 64});
    if (exact && s.witness) ++contradictions;
    if (s.witness && !measurements_equal(fr, s.witness->x, s.witness->y, 1e-9)) ++contradictions;
  }
  return {ok && contradictions == 0, std::string("riesz witness ") + (ok ? "ok" : "bad") + ", " +
                                         std::to_string(contradictions) + " oracle contradictions, " +
                                         std::to_string(holds) + " frames doing norm retrieval"};
}

Outcome criterion7() {
  const NumericConfig cfg{kFloatTol, 22};
  const Scalar r2 = sqrt(Scalar(2.0));
  const Frame f(3, {vec({0.0, 0.0, 1.0}), vec({1.0, 0.0, 1.0}), vec({0.0, 1.0, 1.0}),
                    vec({1.0, Scalar(1.0) - r2, 2.0}), vec({1.0, 1.0, 1.0})});
  bool ok = is_full_spark(f, cfg);
  const ProjectionFamily pf = perp_family(f, kFloatTol);
  const auto w = span_criterion_at(pf, f[4], cfg);
  ok = ok && w && w->achieved_rank == 2;
  if (w) {
    const Subspace s(3, w->spanned, kFloatTol);
    ok = ok && s.contains(e(3, 0), kFloatTol) && s.contains(e(3, 1), kFloatTol);
  }
  const Vector x = vec({1.0, 1.0, 3.0});
  const Vector y = vec({1.0, 1.0, -1.0});
  const std::vector<Scalar> mx = proj_measurements(pf, x);
  const std::vector<Scalar> my = proj_measurements(pf, y);
  double worst = 0;
  for (std::size_t i = 0; i < mx.size(); ++i)
    worst = std::max(worst, std::abs(std::sqrt(mx[i].to_double()) - std::sqrt(my[i].to_double())));
  ok = ok && worst <= kFloatTol && phase_relation(x, y) == PhaseRelation::Incomparable;
  char buf[64];
  std::snprintf(buf, sizeof buf, "max norm gap %.2e", worst);
  return {ok, buf};
}

Outcome criterion8() {
  const Frame f(2, {vec({1, 3}), vec({1, -3})});
  const Vector x = vec({1, 1});
  const Vector y = vec({3, q(1, 3)});
  const bool ok = measurements_equal(f, x, y, 0.0) && norm_squared(x) == q(2) &&
                  norm_squared(y) == q(9) + q(1, 9) && classify_wpr_r2(f[0], f[1]).does_wpr;
  return {ok, "|y|^2 = " + norm_squared(y).str()};
}

Outcome criterion9() {
  std::mt19937_64 rng(9009);
  int failures = 0;
  for (int t = 0; t < kDisjointPairs; ++t) {
    const std::size_t n = 2 + t % 4;
    const std::size_t k = 1 + t % (n - 1);
    std::vector<Vector> all;
    while (all.size() < n || testutil::naive_rank(all, n) < n) {
      all.clear();
      for (std::size_t i = 0; i < n; ++i) all.push_back(testutil::random_vector(rng, n, 4, 3));
    }
    const Subspace w1(n, std::vector<Vector>(all.begin(), all.begin() + static_cast<long>(k)));
    const Subspace w2(n, std::vector<Vector>(all.begin() + static_cast<long>(k), all.end()));
    const TwoSubspaceResult r = two_subspace_operator(w1, w2);
    if (!r.disjoint || !r.t || det(*r.t).is_zero() || !r.tw1 || !r.tw2 ||
        !fusion_norm_retrieval(std::vector<Subspace>{*r.tw1, *r.tw2}).holds)
      ++failures;
  }
  const TwoSubspaceResult c1 =
      two_subspace_operator(Subspace(3, {e(3, 0), e(3, 1)}), Subspace(3, {e(3, 1), e(3, 2)}));
  bool case1 = c1.verified && c1.norm1 == std::optional<Scalar>(q(6)) && c1.norm2 == std::optional<Scalar>(q(9));
  if (case1) {
    const ProjectionFamily pf(3, {Subspace(3, {e(3, 0), e(3, 1)}), Subspace(3, {e(3, 1), e(3, 2)})});
    case1 = proj_measurements(pf, *c1.y1) == proj_measurements(pf, *c1.y2);
  }
  return {failures == 0 && case1,
          std::to_string(failures) + " disjoint failures, case 1 " + (case1 ? "ok" : "bad")};
}

Outcome criterion10() {
  std::mt19937_64 rng(10010);
  int attempted = 0, recovered = 0, incomparable = 0;
  while (attempted < kRoundTrips) {
    const std::size_t n = 3 + attempted % 2;
    const std::size_t m = 2 * n - 2;
    const Frame f = testutil::random_frame(rng, n, m, 4, 3);
    if (!is_full_spark(f)) continue;
    std::uniform_int_distribution<std::uint64_t> pick(1, partition_count(m) - 1);
    const Partition p{pick(rng), m};
    std::vector<Vector> in, out;
    for (std::size_t i = 0; i < m; ++i) (p.contains(i) ? in : out).push_back(f[i]);
    const Subspace cu = orthocomplement(in, n);
    const Subspace cv = orthocomplement(out, n);
    if (cu.dim() == 0 || cv.dim() == 0) continue;
    Vector u(n), v(n);
    for (const Vector& b : cu.basis()) u = u + b * testutil::random_nonzero_rational(rng);
    for (const Vector& b : cv.basis()) v = v + b * testutil::random_nonzero_rational(rng);
    if (u.is_zero() || v.is_zero()) continue;
    const PartitionWitness w = measurement_pair(f, p, u, v);
    ++attempted;
    if (phase_relation(w.x, w.y) == PhaseRelation::Incomparable) ++incomparable;
    const auto d = decompose_scaled(f, w.x, w.y);
    if (d && check_decomposition(*d, w.x, w.y)) ++recovered;
  }
  return {recovered == attempted,
          std::to_string(recovered) + "/" + std::to_string(attempted) + " recovered; " +
              std::to_string(incomparable) + " pairs were incomparable (frame fails weak phase retrieval)"};
}

Outcome criterion11() {
  std::mt19937_64 rng(11011);
  long checked = 0, violations = 0;
  auto check = [&](const Vector& x, const Vector& y) {
    ++checked;
    const bool consistent = sign_products_consistent(x, y);
    const PhaseRelation r = phase_relation(x, y);
    const bool same = r == PhaseRelation::SameSigns || r == PhaseRelation::OppositeSigns;
    if (consistent != same) ++violations;
  };
  for (std::size_t n : {3u, 4u}) {
    for (std::uint64_t sx = 0; sx < (1u << n); ++sx)
      for (std::uint64_t sy = 0; sy < (1u << n); ++sy) {
        Vector x(n), y(n);
        for (std::size_t i = 0; i < n; ++i) {
          x[i] = testutil::random_rational(rng, 5, 3).abs() + q(1, 7);
          y[i] = testutil::random_rational(rng, 5, 3).abs() + q(1, 7);
          if ((sx >> i) & 1U) x[i] = -x[i];
          if ((sy >> i) & 1U) y[i] = -y[i];
        }
        check(x, y);
      }
  }
  for (int t = 0; t < kDensePairs; ++t) {
    const std::size_t n = 2 + t % 5;
    check(testutil::random_dense_vector(rng, n), testutil::random_dense_vector(rng, n));
  }
  return {violations == 0, std::to_string(violations) + " violations over " + std::to_string(checked)};
}

Outcome criterion12() {
  AnalysisOptions opts;
  opts.budget.trials = 200;
  opts.budget.samples = 4;
  auto lines = [](std::initializer_list<std::vector<int>> bases) {
    json subs = json::array();
    for (const auto& b : bases) subs.push_back(json{{"basis", json::array({b})}});
    return subs;
  };
  const json three{{"dim", 3}, {"subspaces", lines({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 1}})}};
  const json r3 = analyze(parse_input(three), opts);
  const bool ok3 = r3["bound_advisories"]["phase_retrieval_impossible"].get<bool>() &&
                   r3["bound_advisories"]["dimension_rule"].get<bool>();

  json hyper = json::array();
  const std::vector<Vector> normals{e(4, 0), e(4, 1), e(4, 2), e(4, 3), vec({1, 1, 1, 1})};
  for (const Vector& nv : normals) {
    json basis = json::array();
    const Subspace plane = orthocomplement(std::vector<Vector>{nv}, 4);
    for (const Vector& b : plane.basis()) basis.push_back(to_json(b));
    hyper.push_back(json{{"basis", basis}});
  }
  const json r4 = analyze(parse_input(json{{"dim", 4}, {"subspaces", hyper}}), opts);
  const bool ok4 = r4["all_hyperplanes"].get<bool>() &&
                   r4["bound_advisories"]["phase_retrieval_impossible"].get<bool>() &&
                   r4["bound_advisories"]["hyperplane_rule"].get<bool>();
  return {ok3 && ok4, std::string("n=3: ") + (ok3 ? "impossible" : "missed") +
                          ", n=4: " + (ok4 ? "impossible" : "missed")};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"full spark frame with an incomparable measurement-equal pair", criterion1},
      {"R^2 classifier agrees with the exact partition scan", criterion2},
      {"closed-form slope witnesses", criterion3},
      {"non-spanning counterexamples", criterion4},
      {"phase retrieval equals the complement property", criterion5},
      {"norm retrieval decider and sampling oracle", criterion6},
      {"hyperplane family of a full spark frame (float)", criterion7},
      {"mirror pair without norm retrieval", criterion8},
      {"two-subspace operator", criterion9},
      {"scaled-decomposition round trip", criterion10},
      {"sign products versus phase relation", criterion11},
      {"bound advisories in analyze output", criterion12},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& ex) {
      o = {false, std::string("exception: ") + ex.what()};
    }
    failed += o.pass ? 0 : 1;
    std::printf("%s  %2zu  %s  (%s)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
