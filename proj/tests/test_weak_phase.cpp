#include <gtest/gtest.h>

#include <random>

#include "phaseret/error.hpp"
#include "phaseret/weak_phase.hpp"
#include "test_util.hpp"

using namespace phaseret;
using testutil::q;
using testutil::vec;

namespace {

// Independent oracle: brute force over θ ∈ {+1, -1} on the shared support.
PhaseRelation oracle_relation(const Vector& x, const Vector& y) {
  bool shared = false, plus = true, minus = true;
  for (std::size_t i = 0; i < x.dim(); ++i) {
    const int sx = x[i].sign(), sy = y[i].sign();
    if (sx == 0 || sy == 0) continue;
    shared = true;
    plus = plus && sx == sy;
    minus = minus && sx == -sy;
  }
  if (!shared) return PhaseRelation::TriviallySame;
  if (plus) return PhaseRelation::SameSigns;
  if (minus) return PhaseRelation::OppositeSigns;
  return PhaseRelation::Incomparable;
}

}  // namespace

TEST(PhaseRelation, Examples) {
  EXPECT_EQ(phase_relation(vec({1, 2, 3}), vec({2, 5, 1})), PhaseRelation::SameSigns);
  EXPECT_EQ(phase_relation(vec({1, -2, 3}), vec({-1, 2, -3})), PhaseRelation::OppositeSigns);
  EXPECT_EQ(phase_relation(vec({1, 0}), vec({0, 1})), PhaseRelation::TriviallySame);
  EXPECT_EQ(phase_relation(vec({4, 3, 1}), vec({4, -3, -1})), PhaseRelation::Incomparable);
  EXPECT_EQ(to_string(PhaseRelation::Incomparable), "incomparable");
  EXPECT_THROW(phase_relation(vec({1, 2}), vec({1})), DimensionError);
}

TEST(PhaseRelation, FloatToleranceTreatsTinyAsZero) {
  EXPECT_EQ(phase_relation(vec({1.0, 1e-12}), vec({1.0, -1.0}), 1e-9), PhaseRelation::SameSigns);
  EXPECT_EQ(phase_relation(vec({1.0, 1e-12}), vec({1.0, -1.0}), 0.0), PhaseRelation::Incomparable);
}

TEST(ClosedFormWitnesses, AxisSlope) {
  for (const Scalar& a : {q(1), q(-1), q(5, 2), q(-7, 3)}) {
    WeakWitness w = axis_slope_witness(a);
    EXPECT_TRUE(verify_weak_witness(Frame(2, {vec({1, 0}), vec({1, a})}), w)) << a.str();
  }
}

TEST(ClosedFormWitnesses, RejectBadParameters) {
  EXPECT_THROW(axis_slope_witness(q(0)), PreconditionError);
  EXPECT_THROW(same_sign_slopes_witness(q(1), q(2)), PreconditionError);
  EXPECT_THROW(opposite_sign_slopes_witness(q(1), q(0)), PreconditionError);
}

TEST(ClassifyR2, Examples) {
  const R2Classification mirror = classify_wpr_r2(vec({1, 3}), vec({1, -3}));
  EXPECT_TRUE(mirror.does_wpr);
  ASSERT_TRUE(mirror.mirror_slope.has_value());
  EXPECT_EQ(*mirror.mirror_slope, q(3));
  const R2Classification onb = classify_wpr_r2(vec({1, 0}), vec({0, 1}));
  EXPECT_FALSE(onb.does_wpr);
  ASSERT_TRUE(onb.witness.has_value());
  EXPECT_TRUE(onb.witness->verified);
  EXPECT_TRUE(classify_wpr_r2(vec({2, 2}), vec({-3, 3})).does_wpr);
  EXPECT_FALSE(classify_wpr_r2(vec({1, 2}), vec({2, 4})).does_wpr);
  EXPECT_THROW(classify_wpr_r2(vec({0, 0}), vec({1, 1})), PreconditionError);
}

TEST(NecessaryConditions, Examples) {
  const Frame few(3, {vec({1, 0, 0}), vec({0, 1, 0}), vec({0, 0, 1})});
  const NecessaryConditionsReport r = wpr_necessary_conditions(few);
  EXPECT_FALSE(r.count_ok);
  EXPECT_TRUE(r.refuted());
  const Frame flat(3, {vec({1, 0, 0}), vec({0, 1, 0}), vec({1, 1, 0}), vec({1, -1, 0})});
  const NecessaryConditionsReport s = wpr_necessary_conditions(flat);
  EXPECT_FALSE(s.spanning_ok);
  ASSERT_TRUE(s.witness.has_value());
  EXPECT_TRUE(s.witness->verified);
  const Frame dep(3, {vec({1, 1, 0}), vec({-1, 0, 1}), vec({1, -1, 0}), vec({0, 1, -1})});
  EXPECT_EQ(wpr_necessary_conditions(dep).full_spark_ok, std::optional<bool>(false));
}

TEST(DisjointSupport, HoldsForWeakPhaseRetrievableFrame) {
  const Frame f(3, {vec({1, 1, 1}), vec({-1, 1, 1}), vec({1, -1, 1}), vec({1, 1, -1})});
  for (std::uint64_t mask = 0; mask < partition_count(4); ++mask) {
    const DisjointSupportReport r = disjoint_support_check(f, Partition{mask, 4});
    if (r.hypotheses_met) EXPECT_TRUE(r.holds) << mask;
  }
}

TEST(OrthogonalIncomparability, Examples) {
  EXPECT_TRUE(orthogonal_incomparability(vec({1, 1}), vec({1, -1})));
  EXPECT_THROW(orthogonal_incomparability(vec({1, 1}), vec({1, 0})), PreconditionError);
  EXPECT_THROW(orthogonal_incomparability(vec({1, 0}), vec({0, 1})), PreconditionError);
}

TEST(DecomposeScaled, TrivialPairs) {
  const Frame f(3, {Vector::unit(3, 0), Vector::unit(3, 1), Vector::unit(3, 2), vec({1, 2, 3})});
  const Vector x = vec({1, 2, -1});
  auto same = decompose_scaled(f, x, x);
  ASSERT_TRUE(same.has_value());
  EXPECT_EQ(same->a, q(1));
  auto neg = decompose_scaled(f, x, -x);
  ASSERT_TRUE(neg.has_value());
  EXPECT_TRUE(check_decomposition(*neg, x, -x));
  EXPECT_THROW(decompose_scaled(f, x, vec({1, 2, 1})), PreconditionError);
}

TEST(DecomposeScaled, CheckDecomposition) {
  const ScaledDecomposition d{q(2), {0}};
  EXPECT_TRUE(check_decomposition(d, vec({4, 1}), vec({2, 2})));
  EXPECT_FALSE(check_decomposition(d, vec({4, 2}), vec({2, 2})));
}

// Property suites.

TEST(WeakPhaseProperties, PhaseRelationMatchesOracle) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 5000; ++trial) {
    const std::size_t n = 1 + trial % 5;
    const Vector x = testutil::random_vector(rng, n, 2, 1);
    const Vector y = testutil::random_vector(rng, n, 2, 1);
    EXPECT_EQ(phase_relation(x, y), oracle_relation(x, y));
  }
}

TEST(WeakPhaseProperties, RelationInvariantUnderGlobalSignAndPositiveScaling) {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 2000; ++trial) {
    const Vector x = testutil::random_vector(rng, 4, 3, 2);
    const Vector y = testutil::random_vector(rng, 4, 3, 2);
    const PhaseRelation r = phase_relation(x, y);
    Vector scaled = x;
    for (std::size_t i = 0; i < 4; ++i) scaled[i] = scaled[i] * q(1 + trial % 7, 1 + trial % 3);
    EXPECT_EQ(phase_relation(scaled, y), r);
    EXPECT_EQ(weakly_same_phase(phase_relation(-x, y)), weakly_same_phase(r));
  }
}

TEST(WeakPhaseProperties, NonspanningWitnessesVerify) {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + trial % 4;
    const std::size_t r = 1 + trial % (n - 1);
    std::vector<Vector> basis;
    for (std::size_t i = 0; i < r; ++i) basis.push_back(testutil::random_nonzero_vector(rng, n, 3, 2));
    std::vector<Vector> vs;
    for (std::size_t i = 0; i < r + 2; ++i) {
      Vector c(n);
      for (const Vector& b : basis) c = c + b * testutil::random_rational(rng, 3, 2);
      if (c.is_zero()) c = basis[0];
      vs.push_back(c);
    }
    const Frame f(n, vs);
    ASSERT_FALSE(spans(f));
    WeakWitness w = nonspanning_counterexample(f);
    EXPECT_TRUE(w.verified);
    EXPECT_TRUE(measurements_equal(f, w.x, w.y, 0.0));
    EXPECT_EQ(phase_relation(w.x, w.y), PhaseRelation::Incomparable);
  }
}

TEST(WeakPhaseProperties, ClassifierWitnessesVerify) {
  std::mt19937_64 rng(44);
  for (int trial = 0; trial < 500; ++trial) {
    const Vector a = testutil::random_nonzero_vector(rng, 2, 4, 3);
    const Vector b = testutil::random_nonzero_vector(rng, 2, 4, 3);
    const R2Classification k = classify_wpr_r2(a, b);
    if (k.does_wpr) {
      // Mirror pairs: |a1 b2| = |a2 b1| with opposite sign products, both nonzero.
      const Scalar p = a[0] * a[1];
      const Scalar s = b[0] * b[1];
      EXPECT_TRUE(p.sign() * s.sign() < 0);
      EXPECT_EQ(p * norm_squared(b), -s * norm_squared(a));
    } else {
      ASSERT_TRUE(k.witness.has_value());
      WeakWitness w = *k.witness;
      EXPECT_TRUE(verify_weak_witness(Frame(2, {a, b}), w)) << a.str() << " " << b.str();
    }
  }
}

TEST(WeakPhaseProperties, DecompositionRoundTripOnRetrievableFrame) {
  const Frame f(3, {vec({1, 1, 1}), vec({-1, 1, 1}), vec({1, -1, 1}), vec({1, 1, -1})});
  std::mt19937_64 rng(45);
  const std::uint64_t masks[] = {0b0011, 0b0101, 0b0110};  // |I| = 2, both complements lines
  int recovered = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const Partition p{masks[trial % 3], 4};
    std::vector<Vector> in, out;
    for (std::size_t i = 0; i < 4; ++i) (p.contains(i) ? in : out).push_back(f[i]);
    const Subspace cu = orthocomplement(in, 3);
    const Subspace cv = orthocomplement(out, 3);
    ASSERT_EQ(cu.dim(), 1u);
    ASSERT_EQ(cv.dim(), 1u);
    const Vector u = cu.basis()[0] * testutil::random_nonzero_rational(rng);
    const Vector v = cv.basis()[0] * testutil::random_nonzero_rational(rng);
    const PartitionWitness w = measurement_pair(f, p, u, v);
    const auto d = decompose_scaled(f, w.x, w.y);
    if (norm_squared(u) == norm_squared(v)) {
      // x and y then have disjoint supports and the scale factor would be 0.
      EXPECT_FALSE(d.has_value());
      ++recovered;
      continue;
    }
    ASSERT_TRUE(d.has_value()) << w.x.str() << " " << w.y.str();
    EXPECT_TRUE(check_decomposition(*d, w.x, w.y));
    ++recovered;
  }
  EXPECT_EQ(recovered, 60);
}

TEST(WeakPhaseProperties, ClassifierSymmetries) {
  std::mt19937_64 rng(46);
  const auto rot90 = [](const Vector& v) { return vec({-v[1], v[0]}); };
  for (int trial = 0; trial < 1000; ++trial) {
    const Vector a = testutil::random_nonzero_vector(rng, 2, 4, 3);
    const Vector b = testutil::random_nonzero_vector(rng, 2, 4, 3);
    const bool k = classify_wpr_r2(a, b).does_wpr;
    const Scalar s = testutil::random_nonzero_rational(rng).abs();
    EXPECT_EQ(classify_wpr_r2(a * s, b).does_wpr, k);
    EXPECT_EQ(classify_wpr_r2(a, b * s).does_wpr, k);
    EXPECT_EQ(classify_wpr_r2(b, a).does_wpr, k);
    EXPECT_EQ(classify_wpr_r2(rot90(a), rot90(b)).does_wpr, k) << a.str() << " " << b.str();
  }
}
