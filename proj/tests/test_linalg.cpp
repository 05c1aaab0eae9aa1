#include <gtest/gtest.h>

#include <random>

#include "phaseret/error.hpp"
#include "phaseret/linalg.hpp"
#include "test_util.hpp"

using namespace phaseret;
using testutil::q;
using testutil::vec;

TEST(Scalar, RationalsAreCanonical) {
  const Scalar s = Scalar::ratio(6, -4);
  ASSERT_TRUE(s.is_exact());
  EXPECT_EQ(s.rational().get_num(), -3);
  EXPECT_EQ(s.rational().get_den(), 2);
  EXPECT_EQ(s.str(), "-3/2");
}

TEST(Scalar, MixedArithmeticPromotesToFloat) {
  const Scalar r = q(1, 3) + Scalar(0.5);
  EXPECT_FALSE(r.is_exact());
  EXPECT_NEAR(r.to_double(), 1.0 / 3 + 0.5, 1e-15);
  EXPECT_TRUE((q(1, 3) + q(1, 6)).is_exact());
}

TEST(Scalar, ExactDivisionByZeroThrows) { EXPECT_THROW(q(1) / q(0), PreconditionError); }

TEST(Scalar, SqrtIsExactOnSquares) {
  EXPECT_EQ(sqrt(q(9, 4)), q(3, 2));
  EXPECT_TRUE(sqrt(q(9, 4)).is_exact());
  EXPECT_FALSE(sqrt(q(2)).is_exact());
}

TEST(Scalar, ParsesLiterals) {
  EXPECT_EQ(parse_scalar("3"), q(3));
  EXPECT_EQ(parse_scalar("-1/2"), q(-1, 2));
  EXPECT_FALSE(parse_scalar("0.25").is_exact());
  const Scalar s = parse_scalar("1-sqrt(2)");
  EXPECT_FALSE(s.is_exact());
  EXPECT_NEAR(s.to_double(), 1 - std::sqrt(2.0), 1e-15);
  EXPECT_EQ(parse_scalar("(1+2)*3/4"), q(9, 4));
  EXPECT_THROW(parse_scalar("1/"), ParseError);
  EXPECT_THROW(parse_scalar("abc"), ParseError);
}

TEST(Inner, Examples) {
  EXPECT_EQ(inner(vec({4, 3, 1}), vec({1, 1, -3})), q(4));
  EXPECT_EQ(inner(Vector::unit(3, 0), Vector::unit(3, 1)), q(0));
  EXPECT_EQ(inner(vec({1, 1}), vec({1, -1})), q(0));
  EXPECT_THROW(inner(vec({1, 2}), vec({1, 2, 3})), DimensionError);
}

TEST(RankDet, Examples) {
  EXPECT_EQ(det(Matrix::identity(3)), q(1));
  const std::vector<Vector> dependent{vec({1, 1, 0}), vec({-1, 0, 1}), vec({0, 1, 1})};
  EXPECT_EQ(rank(dependent, 3), 2u);
  const std::vector<Vector> ex1{Vector::unit(3, 0), Vector::unit(3, 1), Vector::unit(3, 2), vec({1, 1, -3})};
  EXPECT_EQ(rank(ex1, 3), 3u);
  EXPECT_THROW(det(Matrix(2, 3)), DimensionError);
}

TEST(RankDet, FloatRankUsesRelativeTolerance) {
  const std::vector<Vector> rows{vec({1.0, 0.0}), vec({1.0, 1e-12})};
  EXPECT_EQ(rank(rows, 2, 1e-9), 1u);
  EXPECT_EQ(rank(rows, 2, 1e-14), 2u);
}

TEST(Orthocomplement, Examples) {
  const Vector e1 = Vector::unit(3, 0), e2 = Vector::unit(3, 1), e3 = Vector::unit(3, 2);
  const Subspace a = orthocomplement(std::vector<Vector>{e2, e3, e2 + e3}, 3);
  ASSERT_EQ(a.dim(), 1u);
  EXPECT_EQ(a.basis().front(), e1);
  const Subspace b = orthocomplement(std::vector<Vector>{e2 + e3, e1 + e3}, 3);
  ASSERT_EQ(b.dim(), 1u);
  EXPECT_TRUE(b.contains(vec({1, 1, -1})));
  EXPECT_EQ(orthocomplement(std::vector<Vector>{}, 2).dim(), 2u);
}

TEST(Projection, HyperplaneClosedForm) {
  EXPECT_EQ(project_hyperplane(vec({1, 1, 1}), vec({1, 2, 3})), vec({-1, 0, 1}));
  // (a - s/3, b - s/3, c - s/3) with s = a + b + c, evaluated at (2, -5, 9).
  const Scalar s3 = q(6, 3);
  EXPECT_EQ(project_hyperplane(vec({1, 1, 1}), vec({2, -5, 9})),
            vec({q(2) - s3, q(-5) - s3, q(9) - s3}));
  EXPECT_THROW(project_hyperplane(vec({0, 0}), vec({1, 2})), PreconditionError);
  EXPECT_EQ(project_subspace(Subspace(2, {Vector::unit(2, 0)}), vec({5, 7})), vec({5, 0}));
}

TEST(Subspace, RejectsDependentBasis) {
  EXPECT_THROW(Subspace(2, {vec({1, 1}), vec({2, 2})}), PreconditionError);
  EXPECT_THROW(Subspace(2, {vec({1, 1, 1})}), DimensionError);
}

TEST(GramSchmidt, ExactOrthogonalFloatOrthonormal) {
  const std::vector<Vector> vs{vec({1, 1, 0}), vec({1, 0, 1}), vec({0, 1, 1})};
  const std::vector<Vector> ex = gram_schmidt(vs);
  ASSERT_EQ(ex.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i + 1; j < 3; ++j) EXPECT_TRUE(inner(ex[i], ex[j]).is_zero());
  std::vector<Vector> fl;
  for (const Vector& v : vs) fl.push_back(v.to_float());
  for (const Vector& v : gram_schmidt(fl)) EXPECT_NEAR(norm_squared(v).to_double(), 1.0, 1e-12);
}

// Property suites over seeded random rational inputs.

TEST(LinalgProperties, ProjectionIdempotentAndPythagorean) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + trial % 4;
    const std::size_t k = 1 + trial % n;
    std::vector<Vector> gens;
    for (std::size_t i = 0; i < k; ++i) gens.push_back(testutil::random_nonzero_vector(rng, n));
    const Subspace s = Subspace::span_of(n, gens);
    if (s.dim() == 0) continue;
    const Vector x = testutil::random_vector(rng, n);
    const Vector px = project_subspace(s, x);
    EXPECT_EQ(project_subspace(s, px), px);
    const Matrix p = s.projection();
    EXPECT_EQ(p * p, p);
    EXPECT_EQ(p.transpose(), p);
    const Vector rest = x - p * x;
    EXPECT_EQ(norm_squared(x), norm_squared(p * x) + norm_squared(rest));
  }
}

TEST(LinalgProperties, FloatProjectionIdempotentWithinTolerance) {
  std::mt19937_64 rng(12);
  std::normal_distribution<double> normal;
  const double tol = 1e-9;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 3 + trial % 3;
    std::vector<Vector> gens;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      std::vector<double> d(n);
      for (double& c : d) c = normal(rng);
      gens.push_back(Vector::from_doubles(d));
    }
    const Subspace s = Subspace::span_of(n, gens, tol);
    std::vector<double> xd(n);
    for (double& c : xd) c = normal(rng);
    const Vector x = Vector::from_doubles(xd);
    const Vector px = project_subspace(s, x);
    EXPECT_TRUE(approx_equal(project_subspace(s, px), px, 10 * tol));
  }
}

TEST(LinalgProperties, DoubleComplementSpansOriginal) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + trial % 4;
    std::vector<Vector> gens;
    for (std::size_t i = 0; i < 1 + trial % n; ++i) gens.push_back(testutil::random_nonzero_vector(rng, n));
    const Subspace s = Subspace::span_of(n, gens);
    const Subspace cc = orthocomplement(orthocomplement(s));
    EXPECT_EQ(cc.dim(), s.dim());
    std::vector<Vector> both = s.basis();
    both.insert(both.end(), cc.basis().begin(), cc.basis().end());
    EXPECT_EQ(rank(both, n), s.dim());
    EXPECT_EQ(orthocomplement(gens, n).dim(), n - rank(gens, n));
  }
}

TEST(LinalgProperties, RankInvariantUnderPermutationAndScaling) {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + trial % 4;
    const std::size_t m = 1 + trial % 6;
    std::vector<Vector> rows;
    for (std::size_t i = 0; i < m; ++i) rows.push_back(testutil::random_vector(rng, n, 3, 2));
    if (trial % 3 == 0 && m >= 2) rows[1] = rows[0] * q(-2, 3);  // force dependence
    const std::size_t r = rank(rows, n);
    EXPECT_EQ(r, testutil::naive_rank(rows, n));
    std::vector<Vector> shuffled = rows;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    for (Vector& v : shuffled) v *= testutil::random_nonzero_rational(rng);
    EXPECT_EQ(rank(shuffled, n), r);
  }
}

TEST(LinalgProperties, DeterminantMatchesRank) {
  std::mt19937_64 rng(15);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + trial % 4;
    std::vector<Vector> rows;
    for (std::size_t i = 0; i < n; ++i) rows.push_back(testutil::random_vector(rng, n, 2, 2));
    const Matrix mat = Matrix::from_rows(rows, n);
    EXPECT_EQ(det(mat).is_zero(), testutil::naive_rank(rows, n) < n);
    if (!det(mat).is_zero()) EXPECT_EQ(mat * inverse(mat), Matrix::identity(n));
  }
}
