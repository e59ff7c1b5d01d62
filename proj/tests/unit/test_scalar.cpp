#include <gtest/gtest.h>

#include <random>

#include "dualinv/errors.hpp"
#include "dualinv/scalar.hpp"

using namespace dualinv;

namespace {

QuadRational random_quad(std::mt19937_64& rng, long u) {
  std::uniform_int_distribution<long> num(-9, 9), den(1, 9);
  return {mpq_class(num(rng), den(rng)), mpq_class(num(rng), den(rng)), u};
}

}  // namespace

TEST(QuadRational, FieldAxiomsInert) {
  std::mt19937_64 rng(7);
  const long u = 2;
  for (int i = 0; i < 300; ++i) {
    QuadRational a = random_quad(rng, u), b = random_quad(rng, u), c = random_quad(rng, u);
    EXPECT_EQ((a + b) * c, a * c + b * c);
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ((a * b).tau(), a.tau() * b.tau());
    EXPECT_EQ(a.tau().tau(), a);
    EXPECT_EQ(a * a.tau(), QuadRational(a.norm()));
    if (!a.is_zero()) EXPECT_EQ(a * a.inverse(), QuadRational(1));
  }
}

TEST(QuadRational, GeneratorSquaresToU) {
  for (long u : {2L, 3L}) {
    auto s = QuadRational::generator(u);
    EXPECT_EQ(s * s, QuadRational(u));
    EXPECT_EQ(s.tau(), -s);
  }
}

TEST(QuadRational, TextRoundTrip) {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 100; ++i) {
    QuadRational a = random_quad(rng, 2);
    EXPECT_EQ(parse_quad_rational(to_string(a), 2), a) << to_string(a);
  }
  EXPECT_EQ(parse_quad_rational("3/4", 0), QuadRational(mpq_class(3, 4)));
  EXPECT_ANY_THROW(parse_quad_rational("abc", 0));
}

TEST(QuadResidue, InertRingUnitsMatchBruteForce) {
  // Units of (Z/9)[s]/(s^2-2) are exactly the elements with a unit norm.
  ResidueRing ring = ResidueRing::make_ring(3, 2, 2);
  EXPECT_EQ(ring.size(), 81);
  std::size_t units = 0;
  for (std::int64_t i = 0; i < ring.size(); ++i) {
    QuadResidue x = ring.element(i);
    EXPECT_EQ(ring.index_of(x), i);
    bool brute = false;
    for (std::int64_t j = 0; j < ring.size() && !brute; ++j) brute = x * ring.element(j) == ring.one();
    EXPECT_EQ(x.is_unit(), brute);
    if (brute) {
      ++units;
      EXPECT_EQ(x * x.inverse(), ring.one());
    } else {
      EXPECT_THROW(x.inverse(), DomainError);
    }
  }
  EXPECT_EQ(units, 72u);  // |(o_E/9)^x| = 81 - 9
}

TEST(QuadResidue, ReductionIsAHomomorphism) {
  std::mt19937_64 rng(3);
  ResidueRing ring = ResidueRing::make_ring(3, 3, 2);
  std::uniform_int_distribution<long> num(-20, 20);
  for (int i = 0; i < 200; ++i) {
    QuadRational a(mpq_class(num(rng), 2), mpq_class(num(rng)), 2);
    QuadRational b(mpq_class(num(rng)), mpq_class(num(rng), 5), 2);
    EXPECT_EQ(reduce_mod(a * b, ring), reduce_mod(a, ring) * reduce_mod(b, ring));
    EXPECT_EQ(reduce_mod(a + b, ring), reduce_mod(a, ring) + reduce_mod(b, ring));
    EXPECT_EQ(reduce_mod(a.tau(), ring), reduce_mod(a, ring).tau());
  }
  EXPECT_THROW(reduce_mod(QuadRational(mpq_class(1, 3)), ring), DomainError);
}

TEST(QuadResidue, LiftIsCanonical) {
  ResidueRing ring = ResidueRing::make_ring(5, 1, 0);
  for (std::int64_t i = 0; i < ring.size(); ++i) {
    auto x = ring.element(i);
    EXPECT_EQ(reduce_mod(to_exact_lift(x), ring), x);
    EXPECT_EQ(parse_quad_residue(to_string(x), ring), x);
  }
}

TEST(ExactField, Models) {
  EXPECT_FALSE(ExactField::split(5).is_inert());
  EXPECT_EQ(ExactField::inert(5).u, 2);
  EXPECT_EQ(ExactField::inert(7).u, 3);
  EXPECT_EQ(ExactField::inert(7).degree(), 2);
}
