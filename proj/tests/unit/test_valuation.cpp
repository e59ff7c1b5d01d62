#include <gtest/gtest.h>

#include "dualinv/errors.hpp"
#include "dualinv/valuation.hpp"

using namespace dualinv;

namespace {

// Trial-division oracles.
bool slow_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

long slow_valuation(long n, long p) {
  long v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

}  // namespace

TEST(Valuation, Examples) {
  EXPECT_EQ(valuation(mpq_class(18, 5), 3).value(), 2);
  EXPECT_EQ(valuation(mpq_class(5, 27), 3).value(), -3);
  EXPECT_TRUE(valuation(mpq_class(0), 3).is_infinite());
  EXPECT_EQ(valuation(mpz_class(250), 5).value(), 3);
}

TEST(Valuation, MatchesRepeatedDivision) {
  for (long p : {3L, 5L, 7L}) {
    for (long n = 1; n < 2000; ++n) {
      EXPECT_EQ(valuation(mpz_class(n), p).value(), slow_valuation(n, p));
      EXPECT_EQ(valuation(mpq_class(7, n), p).value(), (p == 7) - slow_valuation(n, p));
    }
  }
}

TEST(Valuation, Ordering) {
  EXPECT_LT(Valuation(2), Valuation::infinity());
  EXPECT_LT(Valuation(-1), Valuation(0));
  EXPECT_TRUE((Valuation(1) + Valuation::infinity()).is_infinite());
  EXPECT_EQ((Valuation(1) + Valuation(2)).value(), 3);
}

TEST(Primes, MatchTrialDivision) {
  for (long n = -3; n < 500; ++n) EXPECT_EQ(is_prime(n), slow_prime(n)) << n;
  EXPECT_THROW(require_odd_prime(2), std::invalid_argument);
  EXPECT_THROW(require_odd_prime(9), std::invalid_argument);
  EXPECT_NO_THROW(require_odd_prime(11));
}

TEST(Primes, SmallestNonresidue) {
  for (long p : {3L, 5L, 7L, 11L, 13L, 17L, 23L}) {
    long expected = 0;
    for (long a = 2; a < p && !expected; ++a) {
      bool square = false;
      for (long x = 1; x < p; ++x) square = square || (x * x) % p == a;
      if (!square) expected = a;
    }
    EXPECT_EQ(smallest_nonresidue(p), expected) << p;
  }
}

TEST(ValuatedRational, IntegralityAndArithmetic) {
  ValuatedRational a(mpq_class(3, 2), 3), b(mpq_class(1, 3), 3);
  EXPECT_TRUE(a.is_integral());
  EXPECT_FALSE(a.is_unit());
  EXPECT_FALSE(b.is_integral());
  EXPECT_TRUE((a * b).is_unit());
  EXPECT_EQ((a + b).value(), mpq_class(11, 6));
  EXPECT_THROW(a + ValuatedRational(mpq_class(1), 5), std::invalid_argument);
}

TEST(Residues, ReduceRationals) {
  EXPECT_EQ(reduce_mod(mpq_class(1, 2), 3, 9), 5);
  EXPECT_EQ(reduce_mod(mpq_class(-1), 3, 27), 26);
  EXPECT_EQ(reduce_mod(ValuatedRational(mpq_class(7, 4), 3), 2).value(), 4);  // 4*4=16=7 mod 9
  EXPECT_THROW(reduce_mod(ValuatedRational(mpq_class(1, 3), 3), 2), DomainError);
}

TEST(Residues, InverseOfEveryUnit) {
  for (int n = 1; n <= 3; ++n) {
    const std::int64_t m = checked_pow(3, n);
    for (std::int64_t v = 0; v < m; ++v) {
      Residue r(v, 3, n);
      if (v % 3 == 0) {
        EXPECT_THROW(r.inverse(), DomainError);
      } else {
        EXPECT_EQ((r * r.inverse()).value(), 1);
      }
    }
  }
}

TEST(Residues, SquareRootsAgainstBruteForce) {
  for (long p : {3L, 5L}) {
    for (int n = 1; n <= 3; ++n) {
      const std::int64_t m = checked_pow(p, n);
      for (std::int64_t v = 1; v < m; ++v) {
        if (v % p == 0) continue;
        std::int64_t least = -1;
        for (std::int64_t x = 0; x < m && least < 0; ++x)
          if ((x * x) % m == v) least = x;
        auto root = sqrt_unit(Residue(v, p, n));
        if (least < 0) {
          EXPECT_FALSE(root.has_value()) << v << " mod " << m;
        } else {
          ASSERT_TRUE(root.has_value()) << v << " mod " << m;
          EXPECT_EQ(root->value(), least);
        }
      }
    }
  }
}

TEST(Residues, HenselRootOfOnePlus) {
  // mu = 1 mod 3 has a root congruent to 1 mod 3.
  for (std::int64_t v = 1; v < 27; v += 3) {
    Residue r = hensel_sqrt_one_plus(Residue(v, 3, 3), 1);
    EXPECT_EQ((r * r).value(), v);
    EXPECT_EQ(r.value() % 3, 1);
  }
}

TEST(Residues, RationalSqrt) {
  EXPECT_EQ(rational_sqrt(mpq_class(4, 9)), std::optional(mpq_class(2, 3)));
  EXPECT_FALSE(rational_sqrt(mpq_class(2)).has_value());
  EXPECT_FALSE(rational_sqrt(mpq_class(-4)).has_value());
}

TEST(Residues, CheckedPowOverflow) {
  EXPECT_EQ(checked_pow(3, 4), 81);
  EXPECT_ANY_THROW(checked_pow(3, 60));
}
