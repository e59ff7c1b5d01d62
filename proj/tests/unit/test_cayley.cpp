#include <gtest/gtest.h>

#include "dualinv/cayley.hpp"
#include "dualinv/sampling.hpp"

using namespace dualinv;

namespace {

const std::vector<Family> kFamilies = {Family::orthogonal, Family::symplectic, Family::hermitian,
                                       Family::skew_hermitian, Family::general_linear};

// c(X) straight from the formula (1 - X/(1+alpha)) (1+X)^-1.
QMatrix formula(const ExactSpace& s, const LieElem<QuadRational>& x) {
  if (s.is_general_linear()) return x.matrix.plus_scalar(QuadRational(1));
  QuadRational shift = x.alpha + QuadRational(1);
  QMatrix left = s.identity() - x.matrix * shift.inverse();
  return left * *x.matrix.plus_scalar(QuadRational(1)).inverse();
}

}  // namespace

TEST(Cayley, SymplecticExample) {
  ExactSpace s = standard_space(Family::symplectic, 2, 3);
  auto x = require_lie(s, parse_qmatrix("[[1,1],[0,1]]", 0));
  EXPECT_EQ(x.alpha, QuadRational(2));
  ASSERT_TRUE(in_domain(s, x));
  auto g = cayley(s, x);
  EXPECT_EQ(g.matrix, parse_qmatrix("[[1/3,-1/3],[0,1/3]]", 0));
  EXPECT_EQ(g.multiplier, QuadRational(mpq_class(1, 9)));
}

TEST(Cayley, MatchesFormulaAndMultiplier) {
  Sampler rng(31);
  for (Family f : kFamilies) {
    ExactSpace s = standard_space(f, 2, 3);
    for (int i = 0; i < 100; ++i) {
      auto x = rng.domain_lie(s);
      auto g = cayley(s, x);
      EXPECT_EQ(g.matrix, formula(s, x));
      if (f != Family::general_linear) {
        QuadRational shift = x.alpha + QuadRational(1);
        EXPECT_EQ(g.multiplier, (shift * shift).inverse());
      }
    }
  }
}

TEST(Cayley, DomainBoundaries) {
  ExactSpace s = standard_space(Family::symplectic, 2, 3);
  // 1 + X singular.
  auto x = require_lie(s, parse_qmatrix("[[-1,0],[0,-1]]", 0));
  EXPECT_FALSE(in_cayley_domain(s, x));
  EXPECT_THROW(cayley(s, x), DomainError);
  // Still singular at 1 + X.
  auto y = require_lie(s, parse_qmatrix("[[-1,1],[0,-1]]", 0));
  EXPECT_FALSE(in_cayley_domain(s, y));
  auto z = require_lie(s, parse_qmatrix("[[-2,0],[0,0]]", 0));
  EXPECT_EQ(z.alpha, QuadRational(-2));
  EXPECT_TRUE(in_cayley_domain(s, z));
  EXPECT_TRUE(in_domain(s, z));  // 1 + alpha - X = diag(1,-1)
  EXPECT_EQ(cayley(s, z).matrix, s.identity());
  EXPECT_TRUE(in_identity_fiber(s, z));
}

TEST(Fiber, UniqueLambda) {
  ExactSpace s = standard_space(Family::symplectic, 2, 3);
  auto g = cayley(s, require_lie(s, parse_qmatrix("[[1,1],[0,1]]", 0)));
  auto f = fiber(s, g);
  EXPECT_EQ(f.kind, FiberCase::unique_lambda);
  ASSERT_EQ(f.preimages.size(), 1u);
  EXPECT_EQ(f.preimages[0].x.matrix, parse_qmatrix("[[1,1],[0,1]]", 0));
}

TEST(Fiber, TwoPreimages) {
  ExactSpace s = standard_space(Family::symplectic, 2, 3);
  auto g = require_group(s, parse_qmatrix("[[4,0],[0,1]]", 0));
  auto f = fiber(s, g);
  EXPECT_EQ(f.kind, FiberCase::two_preimages);
  ASSERT_EQ(f.preimages.size(), 2u);
  std::vector<QMatrix> got = {f.preimages[0].x.matrix, f.preimages[1].x.matrix};
  std::vector<QMatrix> want = {parse_qmatrix("[[-1/2,0],[0,0]]", 0),
                               parse_qmatrix("[[-3/2,0],[0,0]]", 0)};
  EXPECT_TRUE(std::is_permutation(got.begin(), got.end(), want.begin(), want.end()));
  for (const auto& p : f.preimages) EXPECT_EQ(cayley(s, p.x).matrix, g.matrix);
}

TEST(Fiber, EmptyAndIdentity) {
  ExactSpace s = standard_space(Family::symplectic, 2, 3);
  // mu = 2 is not a square in Q.
  auto g = require_group(s, parse_qmatrix("[[2,0],[0,1]]", 0));
  EXPECT_EQ(fiber(s, g).kind, FiberCase::empty);
  EXPECT_EQ(fiber(s, require_group(s, s.identity())).kind, FiberCase::infinite_identity);
}

TEST(Fiber, XLambdaFormula) {
  ExactSpace s = standard_space(Family::symplectic, 2, 3);
  auto g = require_group(s, parse_qmatrix("[[4,0],[0,1]]", 0));
  for (long l : {2L, -2L}) {
    auto x = x_lambda(s, g, QuadRational(l));
    QMatrix direct = (s.identity() - g.matrix) * *g.matrix.plus_scalar(QuadRational(l)).inverse();
    EXPECT_EQ(x.matrix, direct);
    EXPECT_EQ(x.alpha, QuadRational(mpq_class(1, l)) - QuadRational(1));
  }
}

TEST(Fiber, ResidueFibersRoundTrip) {
  ResidueSpace rs = reduce_space(standard_space(Family::symplectic, 2, 3), 2);
  auto g = require_group(rs, parse_rmatrix("[[4,0],[0,7]]", rs.ring));
  auto f = fiber(rs, g);
  EXPECT_FALSE(f.preimages.empty());
  for (const auto& p : f.preimages) EXPECT_EQ(cayley(rs, p.x).matrix, g.matrix);
  EXPECT_EQ(to_string(FiberCase::two_preimages), "two-preimages");
}
