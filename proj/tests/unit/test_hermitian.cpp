#include <gtest/gtest.h>

#include "dualinv/hermitian.hpp"
#include "dualinv/lattice.hpp"
#include "dualinv/sampling.hpp"

using namespace dualinv;

namespace {

const std::vector<Family> kFamilies = {Family::orthogonal, Family::symplectic, Family::hermitian,
                                       Family::skew_hermitian, Family::general_linear};

// Counts g mod p with g J tau(g)^T = m J for a unit m, by direct enumeration.
std::pair<std::size_t, std::size_t> brute_group_order(const ResidueSpace& rs) {
  const std::int64_t s = rs.ring.size();
  std::size_t sim = 0, iso = 0;
  for (std::int64_t code = 0; code < s * s * s * s; ++code) {
    RMatrix g(2, 2, rs.ring.zero());
    std::int64_t c = code;
    for (std::size_t k = 0; k < 4; ++k, c /= s) g(k / 2, k % 2) = rs.ring.element(c % s);
    if (!g.determinant().is_unit()) continue;
    RMatrix lhs = g.transpose() * rs.gram * g.tau();
    bool found = false;
    for (std::int64_t m = 1; m < rs.ring.modulus && !found; ++m) {
      if (m % rs.ring.p == 0) continue;
      if (lhs == rs.gram * rs.ring.from_int(m)) {
        found = true;
        ++sim;
        iso += m == 1;
      }
    }
  }
  return {sim, iso};
}

}  // namespace

TEST(Spaces, StandardModelsValidate) {
  for (Family f : kFamilies) {
    for (std::size_t n : {1u, 2u, 3u, 4u}) {
      if (f == Family::symplectic && n % 2) {
        EXPECT_THROW(standard_space(f, n, 3), DomainError);
        continue;
      }
      ExactSpace s = standard_space(f, n, 3);
      EXPECT_EQ(s.dim, n);
      EXPECT_EQ(s.ring.is_inert(), family_is_inert(f));
      EXPECT_EQ(s.anti_unitary * s.anti_unitary_inv, s.identity());
      EXPECT_EQ(parse_family(to_string(f)), f);
    }
  }
  EXPECT_THROW(parse_family("unitary-ish"), ConfigError);
}

TEST(Spaces, SymplecticGram) {
  ExactSpace s = standard_space(Family::symplectic, 2, 3);
  EXPECT_EQ(s.gram, parse_qmatrix("[[0,1],[-1,0]]", 0));
  EXPECT_EQ(s.epsilon, -1);
  EXPECT_EQ(s.anti_unitary, parse_qmatrix("[[1,0],[0,-1]]", 0));
}

TEST(Spaces, RejectsDegenerateForms) {
  ExactField f = ExactField::split(3);
  QMatrix bad = parse_qmatrix("[[1,1],[1,1]]", 0);
  QMatrix h = parse_qmatrix("[[1,0],[0,1]]", 0);
  EXPECT_THROW(validate_space(f, bad, 1, Family::orthogonal, h), InvalidForm);
  // Symmetric Gram with epsilon = -1 fails the symmetry condition.
  EXPECT_THROW(validate_space(f, h, -1, Family::symplectic, h), InvalidForm);
}

TEST(Spaces, StarIsTheAdjoint) {
  Sampler rng(11);
  for (Family f : kFamilies) {
    if (f == Family::general_linear) continue;
    ExactSpace s = standard_space(f, 2, 3);
    for (int i = 0; i < 50; ++i) {
      QMatrix a = rng.matrix(s), u = rng.vector(s), v = rng.vector(s);
      EXPECT_EQ(inner(s, a * u, v), inner(s, u, star(s, a) * v)) << to_string(f);
      EXPECT_EQ(inner(s, u, v), QuadRational(s.epsilon) * inner(s, v, u).tau());
    }
  }
}

TEST(Spaces, CertificationAgreesWithDefinition) {
  ExactSpace s = standard_space(Family::symplectic, 2, 3);
  auto g = certify_group(s, parse_qmatrix("[[2,0],[0,1]]", 0));
  ASSERT_TRUE(g);
  EXPECT_EQ(g->multiplier, QuadRational(2));
  EXPECT_FALSE(certify_group(s, parse_qmatrix("[[1,1],[1,1]]", 0)));
  auto x = certify_lie(s, parse_qmatrix("[[1,1],[0,1]]", 0));
  ASSERT_TRUE(x);
  EXPECT_EQ(x->alpha, QuadRational(2));
  // gsp_2 is all of gl_2, so use n = 4 for a non-member.
  ExactSpace s4 = standard_space(Family::symplectic, 4, 3);
  QMatrix e11(4, 4, QuadRational());
  e11(0, 0) = QuadRational(1);
  EXPECT_FALSE(certify_lie(s4, e11));
  EXPECT_THROW(require_lie(s4, e11), DomainError);
}

TEST(Spaces, ResidueGroupOrdersMatchBruteForce) {
  // GSp_2(F_3) = GL_2(F_3) has 48 elements and Sp_2(F_3) has 24.
  ResidueSpace rs = reduce_space(standard_space(Family::symplectic, 2, 3), 1);
  auto [sim, iso] = brute_group_order(rs);
  EXPECT_EQ(sim, 48u);
  EXPECT_EQ(iso, 24u);
  std::size_t certified = 0, isometries = 0;
  const std::int64_t s = rs.ring.size();
  for (std::int64_t code = 0; code < s * s * s * s; ++code) {
    RMatrix g(2, 2, rs.ring.zero());
    std::int64_t c = code;
    for (std::size_t k = 0; k < 4; ++k, c /= s) g(k / 2, k % 2) = rs.ring.element(c % s);
    if (auto e = certify_group(rs, g)) {
      ++certified;
      isometries += e->multiplier == rs.ring.one();
    }
  }
  EXPECT_EQ(certified, sim);
  EXPECT_EQ(isometries, iso);
}

TEST(Lattices, StandardRanks) {
  auto sp = standard_lattices(standard_space(Family::symplectic, 2, 3));
  EXPECT_EQ(sp.similitude.rank(), 4u);
  EXPECT_EQ(sp.isometry.rank(), 3u);
  EXPECT_TRUE(sp.h_stable);
  auto herm = standard_lattices(standard_space(Family::hermitian, 1, 3));
  EXPECT_EQ(herm.similitude.rank(), 2u);  // gu_1 = E over F
  EXPECT_EQ(herm.isometry.rank(), 1u);    // u_1 = s F
  auto gl = standard_lattices(standard_space(Family::general_linear, 2, 3));
  EXPECT_EQ(gl.similitude.rank(), 4u);
}
