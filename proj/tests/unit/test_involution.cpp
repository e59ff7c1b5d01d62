#include <gtest/gtest.h>

#include "dualinv/involution.hpp"
#include "dualinv/lattice.hpp"
#include "dualinv/sampling.hpp"

using namespace dualinv;

namespace {

const std::vector<Family> kFamilies = {Family::orthogonal, Family::symplectic, Family::hermitian,
                                       Family::skew_hermitian, Family::general_linear};

// All g in GU mod p^N in lexicographic order of entries.
std::vector<GroupElem<QuadResidue>> all_group(const ResidueSpace& rs) {
  std::vector<RMatrix> mats;
  const std::int64_t s = rs.ring.size();
  const std::size_t k = rs.dim * rs.dim;
  std::int64_t total = 1;
  for (std::size_t i = 0; i < k; ++i) total *= s;
  std::vector<GroupElem<QuadResidue>> out;
  for (std::int64_t code = 0; code < total; ++code) {
    RMatrix g(rs.dim, rs.dim, rs.ring.zero());
    std::int64_t c = code;
    for (std::size_t i = k; i-- > 0; c /= s) g(i / rs.dim, i % rs.dim) = rs.ring.element(c % s);
    if (auto e = certify_group(rs, g)) out.push_back(*e);
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.matrix < b.matrix; });
  return out;
}

}  // namespace

TEST(Theta, FixesUnipotentExample) {
  ExactSpace s = standard_space(Family::symplectic, 2, 3);
  auto g = require_group(s, parse_qmatrix("[[1,1],[0,1]]", 0));
  EXPECT_EQ(theta_group(s, g).matrix, g.matrix);
  EXPECT_EQ(iota_group(s, g).matrix, parse_qmatrix("[[1,-1],[0,1]]", 0));
}

TEST(Theta, DefiningFormula) {
  Sampler rng(21);
  for (Family f : kFamilies) {
    ExactSpace s = standard_space(f, 2, 3);
    for (int i = 0; i < 40; ++i) {
      auto g = rng.group(s);
      QMatrix expected = f == Family::general_linear
                             ? g.matrix.transpose()
                             : s.anti_unitary * g.matrix.inverse()->tau() * s.anti_unitary_inv *
                                   g.multiplier;
      EXPECT_EQ(theta_group(s, g).matrix, expected);
      EXPECT_EQ(theta_group(s, theta_group(s, g)).matrix, g.matrix);
      auto x = rng.lie(s);
      EXPECT_EQ(theta_lie(s, theta_lie(s, x)).matrix, x.matrix);
    }
  }
}

TEST(Theta, LieFormulaAndAlpha) {
  Sampler rng(22);
  for (Family f : kFamilies) {
    ExactSpace s = standard_space(f, 2, 3);
    for (int i = 0; i < 20; ++i) {
      auto x = rng.lie(s);
      QMatrix expected = f == Family::general_linear
                             ? x.matrix.transpose()
                             : (-(s.anti_unitary * x.matrix.tau() * s.anti_unitary_inv))
                                   .plus_scalar(x.alpha);
      auto tx = theta_lie(s, x);
      EXPECT_EQ(tx.matrix, expected);
      EXPECT_EQ(certify_lie(s, tx.matrix)->alpha, x.alpha);
    }
  }
}

TEST(AntiUnitary, ValidationRejectsWrongH) {
  ExactSpace s = standard_space(Family::symplectic, 2, 3);
  EXPECT_NO_THROW(validate_anti_unitary(s, s.anti_unitary, AntiUnitaryMode::involution));
  EXPECT_THROW(validate_anti_unitary(s, s.identity(), AntiUnitaryMode::involution),
               AntiUnitaryViolation);
  auto scaled = validate_anti_unitary(s, s.anti_unitary * QuadRational(2), AntiUnitaryMode::similitude);
  EXPECT_EQ(scaled.factor, QuadRational(4));
}

TEST(Conjugator, DiagonalExample) {
  ResidueSpace rs = reduce_space(standard_space(Family::symplectic, 2, 3), 1);
  auto a = require_group(rs, parse_rmatrix("[[2,0],[0,1]]", rs.ring));
  auto found = find_symmetric_conjugator(rs, a, ConjugatorScope::similitudes);
  ASSERT_TRUE(found.conjugator);
  EXPECT_EQ(*found.conjugator, parse_rmatrix("[[0,1],[1,0]]", rs.ring));
}

TEST(Conjugator, LexMinAgainstExhaustiveScan) {
  for (Family f : {Family::symplectic, Family::orthogonal, Family::general_linear}) {
    ResidueSpace rs = reduce_space(standard_space(f, 2, 3), 1);
    auto group = all_group(rs);
    for (const auto& a : group) {
      // A theta-fixed a is answered by the identity; otherwise the least solution.
      std::optional<RMatrix> brute;
      if (theta_group(rs, a).matrix == a.matrix) brute = rs.identity();
      for (const auto& x : group) {
        if (brute) break;
        if (theta_group(rs, x).matrix != x.matrix) continue;
        if (x.matrix * a.matrix == theta_group(rs, a).matrix * x.matrix) {
          brute = x.matrix;
          break;
        }
      }
      auto fast = find_symmetric_conjugator(rs, a, ConjugatorScope::similitudes);
      ASSERT_EQ(fast.conjugator.has_value(), brute.has_value()) << to_string(a.matrix);
      if (brute) EXPECT_EQ(*fast.conjugator, *brute);
      std::vector<RMatrix> span;
      for (const auto& g : group) span.push_back(g.matrix);
      auto scanned = find_symmetric_conjugator(rs, a, span, ConjugatorScope::similitudes);
      EXPECT_EQ(scanned.conjugator, brute);
    }
  }
}

TEST(Factorization, AntiUnitaryOfUnipotent) {
  ResidueSpace rs = reduce_space(standard_space(Family::symplectic, 2, 3), 2);
  auto a = require_group(rs, parse_rmatrix("[[1,1],[0,1]]", rs.ring));
  auto fac = factor_anti_unitary(rs, a);
  ASSERT_TRUE(fac);
  // h1 is an anti-unitary involution: h1 tau(h1) = 1.
  EXPECT_EQ(compose_semilinear(fac->h1.matrix, fac->h1.matrix), rs.identity());
  // x is theta-fixed and conjugates a to theta(a).
  auto x = require_group(rs, fac->conjugator);
  EXPECT_EQ(theta_group(rs, x).matrix, x.matrix);
  EXPECT_EQ(x.matrix * a.matrix, theta_group(rs, a).matrix * x.matrix);
  // h2 = h1 a as semilinear maps.
  EXPECT_EQ(fac->h2.matrix, compose_semilinear(fac->h1.matrix, a.matrix));
}
