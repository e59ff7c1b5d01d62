#include <gtest/gtest.h>

#include <random>

#include "dualinv/matrix.hpp"

using namespace dualinv;

namespace {

QMatrix random_matrix(std::mt19937_64& rng, std::size_t n, long u) {
  std::uniform_int_distribution<long> num(-5, 5), den(1, 4);
  QMatrix m(n, n, QuadRational());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      m(i, j) = u ? QuadRational(mpq_class(num(rng), den(rng)), mpq_class(num(rng)), u)
                  : QuadRational(mpq_class(num(rng), den(rng)));
  return m;
}

// Cofactor expansion, independent of the elimination code.
QuadRational cofactor_det(const QMatrix& m) {
  if (m.rows() == 1) return m(0, 0);
  QuadRational d;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    QuadRational term = m(0, j) * cofactor_det(m.minor(0, j));
    d = j % 2 ? d - term : d + term;
  }
  return d;
}

}  // namespace

TEST(Matrix, DeterminantMatchesCofactors) {
  std::mt19937_64 rng(1);
  for (std::size_t n = 1; n <= 4; ++n) {
    for (int i = 0; i < 40; ++i) {
      QMatrix a = random_matrix(rng, n, i % 2 ? 2 : 0);
      EXPECT_EQ(a.determinant(), cofactor_det(a));
    }
  }
}

TEST(Matrix, InverseAndMultiplicativity) {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 100; ++i) {
    QMatrix a = random_matrix(rng, 3, 0), b = random_matrix(rng, 3, 0);
    EXPECT_EQ((a * b).determinant(), a.determinant() * b.determinant());
    auto inv = a.inverse();
    EXPECT_EQ(inv.has_value(), !a.determinant().is_zero());
    if (inv) EXPECT_EQ(a * *inv, QMatrix::identity(3, QuadRational(), QuadRational(1)));
    EXPECT_EQ((a * b).transpose(), b.transpose() * a.transpose());
  }
}

TEST(Matrix, ResidueInvertibilityMatchesDeterminant) {
  // All 2x2 matrices mod 9: invertible iff the determinant is a unit.
  ResidueRing ring = ResidueRing::make_ring(3, 2, 0);
  std::size_t count = 0;
  for (std::int64_t code = 0; code < 9 * 9 * 9 * 9; ++code) {
    RMatrix m(2, 2, ring.zero());
    std::int64_t c = code;
    for (std::size_t k = 0; k < 4; ++k, c /= 9) m(k / 2, k % 2) = ring.from_int(static_cast<long>(c % 9));
    const bool unit = m.determinant().is_unit();
    EXPECT_EQ(m.is_invertible(), unit);
    count += unit;
  }
  EXPECT_EQ(count, 3888u);  // |GL_2(Z/9)| = 81 * 48
}

TEST(Matrix, TextAndCoordinatesRoundTrip) {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 50; ++i) {
    QMatrix a = random_matrix(rng, 2, 2);
    EXPECT_EQ(parse_qmatrix(to_string(a), 2), a);
    EXPECT_EQ(unflatten(flatten(a, true), 2, 2), a);
    EXPECT_EQ(flatten(a, true).size(), 8u);
  }
  ResidueRing ring = ResidueRing::make_ring(3, 2, 2);
  RMatrix r = reduce_mod(QMatrix::identity(2, QuadRational(), QuadRational::generator(2)), ring);
  EXPECT_EQ(parse_rmatrix(to_string(r), ring), r);
  EXPECT_EQ(unflatten(flatten(r, true), 2, ring), r);
}

TEST(Matrix, TauAndScalars) {
  QMatrix a = parse_qmatrix("[[1+2*s,3],[0,-s]]", 2);
  EXPECT_EQ(a.tau(), parse_qmatrix("[[1-2*s,3],[0,s]]", 2));
  EXPECT_FALSE(a.scalar_value().has_value());
  EXPECT_EQ(QMatrix::scalar(2, QuadRational(), QuadRational(5)).scalar_value(),
            std::optional(QuadRational(5)));
}
