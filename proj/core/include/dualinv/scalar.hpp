#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <string>

#include "dualinv/valuation.hpp"

namespace dualinv {

// Element a + b*s of E = F(s), s^2 = u, over the rationals.  u == 0 marks an
// element of the split extension E = F (then b is always zero).  Constants
// built from integers carry u == 0 and combine with any extension.
class QuadRational {
 public:
  QuadRational() = default;
  QuadRational(long n) : a_(n) {}  // NOLINT(google-explicit-constructor)
  explicit QuadRational(mpq_class a) : a_(std::move(a)) { a_.canonicalize(); }
  QuadRational(mpq_class a, mpq_class b, long u);

  // The generator s of an inert extension with s^2 = u.
  static QuadRational generator(long u) { return {0, 1, u}; }

  const mpq_class& re() const { return a_; }
  const mpq_class& im() const { return b_; }
  long u() const { return u_; }

  bool is_zero() const { return a_ == 0 && b_ == 0; }
  bool is_unit() const { return !is_zero(); }
  bool in_base_field() const { return b_ == 0; }

  QuadRational tau() const;
  mpq_class norm() const;  // x * tau(x), an element of F
  QuadRational inverse() const;

  QuadRational operator+(const QuadRational& o) const;
  QuadRational operator-(const QuadRational& o) const;
  QuadRational operator*(const QuadRational& o) const;
  QuadRational operator/(const QuadRational& o) const { return *this * o.inverse(); }
  QuadRational operator-() const;
  QuadRational& operator+=(const QuadRational& o) { return *this = *this + o; }
  QuadRational& operator-=(const QuadRational& o) { return *this = *this - o; }
  QuadRational& operator*=(const QuadRational& o) { return *this = *this * o; }
  bool operator==(const QuadRational& o) const { return a_ == o.a_ && b_ == o.b_; }

 private:
  long merged_u(const QuadRational& o) const;
  mpq_class a_ = 0;
  mpq_class b_ = 0;
  long u_ = 0;
};

// Element a + b*s of o_E / p^N o_E; u == 0 for the split case.  The ring is
// local: an element is a unit iff its reduction mod p is nonzero.
class QuadResidue {
 public:
  QuadResidue() = default;
  QuadResidue(std::int64_t a, std::int64_t b, long p, std::int64_t modulus, long u);

  std::int64_t re() const { return a_; }
  std::int64_t im() const { return b_; }
  long prime() const { return p_; }
  std::int64_t modulus() const { return m_; }
  long u() const { return u_; }

  bool is_zero() const { return a_ == 0 && b_ == 0; }
  bool is_unit() const;
  bool in_base_field() const { return b_ == 0; }

  QuadResidue tau() const;
  std::int64_t norm() const;
  QuadResidue inverse() const;  // throws DomainError for non-units

  QuadResidue operator+(const QuadResidue& o) const;
  QuadResidue operator-(const QuadResidue& o) const;
  QuadResidue operator*(const QuadResidue& o) const;
  QuadResidue operator/(const QuadResidue& o) const { return *this * o.inverse(); }
  QuadResidue operator-() const;
  QuadResidue& operator+=(const QuadResidue& o) { return *this = *this + o; }
  QuadResidue& operator-=(const QuadResidue& o) { return *this = *this - o; }
  QuadResidue& operator*=(const QuadResidue& o) { return *this = *this * o; }
  bool operator==(const QuadResidue& o) const { return a_ == o.a_ && b_ == o.b_; }
  // Canonical residue order: real part first, then the s-coefficient.
  std::strong_ordering operator<=>(const QuadResidue& o) const {
    if (auto c = a_ <=> o.a_; c != 0) return c;
    return b_ <=> o.b_;
  }

 private:
  std::int64_t a_ = 0;
  std::int64_t b_ = 0;
  long p_ = 3;
  std::int64_t m_ = 1;
  long u_ = 0;
};

// Exact model of E over F = (Q, v_p).
struct ExactField {
  using Elem = QuadRational;

  long p = 3;
  long u = 0;  // 0: split (E = F); otherwise a non-square unit mod p

  static ExactField split(long p);
  static ExactField inert(long p);  // u = smallest non-residue mod p

  bool is_inert() const { return u != 0; }
  int degree() const { return is_inert() ? 2 : 1; }
  Elem zero() const { return {}; }
  Elem one() const { return {1}; }
  Elem from_int(long n) const { return {n}; }
  Elem from_base(const mpq_class& a) const { return Elem(a); }
  Elem make(const mpq_class& a, const mpq_class& b) const { return {a, b, u}; }
  Elem generator() const;
  bool operator==(const ExactField&) const = default;
};

// Truncated model o_E / p^N o_E.
struct ResidueRing {
  using Elem = QuadResidue;

  long p = 3;
  int precision = 1;
  std::int64_t modulus = 3;
  long u = 0;

  static ResidueRing make_ring(long p, int precision, long u);

  bool is_inert() const { return u != 0; }
  int degree() const { return is_inert() ? 2 : 1; }
  Elem zero() const { return {0, 0, p, modulus, u}; }
  Elem one() const { return {1, 0, p, modulus, u}; }
  Elem from_int(long n) const { return {n, 0, p, modulus, u}; }
  Elem make(std::int64_t a, std::int64_t b) const { return {a, b, p, modulus, u}; }
  Elem generator() const;
  // Number of residues of o_E / p^N.
  std::int64_t size() const { return is_inert() ? modulus * modulus : modulus; }
  // i-th residue in canonical order, 0 <= i < size().
  Elem element(std::int64_t index) const;
  std::int64_t index_of(const Elem& x) const;
  bool operator==(const ResidueRing&) const = default;
};

ExactField::Elem to_exact_lift(const QuadResidue& x);  // canonical representative in [0, p^N)
QuadResidue reduce_mod(const QuadRational& x, const ResidueRing& ring);

// Canonical text "a", "b*s" or "a+b*s" (b may carry a sign: "1-2*s").
std::string to_string(const QuadRational& x);
std::string to_string(const QuadResidue& x);
QuadRational parse_quad_rational(const std::string& text, long u);
QuadResidue parse_quad_residue(const std::string& text, const ResidueRing& ring);

}  // namespace dualinv
