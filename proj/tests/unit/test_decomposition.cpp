#include <gtest/gtest.h>

#include <set>

#include "dualinv/decomposition.hpp"
#include "dualinv/involution.hpp"
#include "dualinv/sampling.hpp"

using namespace dualinv;

TEST(Decomposition, CosetSizes) {
  DecompositionContext ctx(standard_space(Family::symplectic, 2, 3), 3);
  EXPECT_EQ(ctx.lie_residues(1).size(), 6561u);  // 3L mod 27: 9^4
  EXPECT_EQ(ctx.congruence_image(1).size(), 6561u);
  auto coset = make_coset(ctx, parse_rmatrix("[[2,0],[0,1]]", ctx.space().ring), 1);
  EXPECT_EQ(coset.members.size(), 6561u);
}

TEST(Decomposition, DiagonalCosetIsVerified) {
  DecompositionContext ctx(standard_space(Family::symplectic, 2, 3), 3);
  auto coset = make_coset(ctx, parse_rmatrix("[[2,0],[0,1]]", ctx.space().ring), 1);
  auto result = decompose(ctx, coset);
  EXPECT_TRUE(result.passed());
  EXPECT_TRUE(result.partition);
  EXPECT_TRUE(result.witnesses_verified);
  EXPECT_TRUE(result.nested_levels);
  EXPECT_TRUE(result.disjoint_or_nested);
  // Pieces partition the coset: independent recount.
  std::multiset<RMatrix> all;
  for (const auto& p : result.pieces) all.insert(p.members.begin(), p.members.end());
  EXPECT_EQ(all.size(), coset.members.size());
  EXPECT_EQ(std::set<RMatrix>(all.begin(), all.end()),
            std::set<RMatrix>(coset.members.begin(), coset.members.end()));
}

TEST(Decomposition, ThetaFixedShortcut) {
  DecompositionContext ctx(standard_space(Family::symplectic, 2, 3), 2);
  auto b = parse_rmatrix("[[1,1],[0,1]]", ctx.space().ring);
  auto result = decompose(ctx, make_coset(ctx, b, 1));
  EXPECT_TRUE(result.passed());
  EXPECT_TRUE(result.fixed_point_shortcut);
  ASSERT_EQ(result.pieces.size(), 1u);
  EXPECT_EQ(result.pieces[0].witness, parse_rmatrix("[[1,8],[0,1]]", ctx.space().ring));
}

TEST(Decomposition, VerifyPieceOracle) {
  // verify_piece against a direct check of theta(S) = g S g^-1.
  DecompositionContext ctx(standard_space(Family::symplectic, 2, 3), 2);
  const auto& rs = ctx.space();
  Sampler rng(51);
  for (int t = 0; t < 10; ++t) {
    auto b = rng.residue_group(rs);
    auto coset = make_coset(ctx, b.matrix, 1);
    auto result = decompose(ctx, coset);
    ASSERT_TRUE(result.passed());
    for (const auto& p : result.pieces) {
      auto g = require_group(rs, p.witness);
      std::set<RMatrix> theta_s, conj;
      auto gi = *g.matrix.inverse();
      for (const auto& m : p.members) {
        theta_s.insert(theta_group(rs, require_group(rs, m)).matrix);
        conj.insert(g.matrix * m * gi);
      }
      EXPECT_EQ(theta_s, conj);
      EXPECT_TRUE(verify_piece(rs, p.members, p.witness));
    }
  }
  // A wrong witness is rejected.
  auto coset = make_coset(ctx, parse_rmatrix("[[2,0],[0,1]]", rs.ring), 1);
  EXPECT_FALSE(verify_piece(rs, coset.members, rs.identity()));
}
