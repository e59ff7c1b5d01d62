#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <optional>
#include <string>

namespace dualinv {

// Value of a discrete valuation; infinity is the valuation of zero.
class Valuation {
 public:
  static Valuation infinity() { return Valuation(); }
  explicit Valuation(long v) : finite_(true), value_(v) {}

  bool is_infinite() const { return !finite_; }
  long value() const;

  Valuation operator+(Valuation other) const;
  friend bool operator==(const Valuation&, const Valuation&) = default;
  friend std::strong_ordering operator<=>(const Valuation& a, const Valuation& b);

  std::string to_string() const;

 private:
  Valuation() = default;
  bool finite_ = false;
  long value_ = 0;
};

bool is_prime(long n);
// Throws std::invalid_argument unless p is an odd prime.
void require_odd_prime(long p);
// p^exponent, throwing std::overflow_error if it does not fit in 62 bits.
std::int64_t checked_pow(long p, int exponent);
// Smallest positive integer that is a quadratic non-residue modulo p.
long smallest_nonresidue(long p);

Valuation valuation(const mpz_class& x, long p);
Valuation valuation(const mpq_class& x, long p);

// A rational number together with the prime defining its valuation.  Models
// an element of F, with o_F the rationals of non-negative valuation.
class ValuatedRational {
 public:
  ValuatedRational(mpq_class value, long p);

  const mpq_class& value() const { return value_; }
  long prime() const { return p_; }
  Valuation val() const { return valuation(value_, p_); }
  bool is_integral() const;
  bool is_unit() const;

  ValuatedRational operator+(const ValuatedRational& o) const;
  ValuatedRational operator-(const ValuatedRational& o) const;
  ValuatedRational operator*(const ValuatedRational& o) const;
  ValuatedRational operator/(const ValuatedRational& o) const;
  ValuatedRational operator-() const;
  bool operator==(const ValuatedRational& o) const;

 private:
  void require_same_prime(const ValuatedRational& o) const;
  mpq_class value_;
  long p_;
};

// Element of the truncated ring Z/p^N, a finite model of o_F / p^N o_F.
class Residue {
 public:
  Residue(std::int64_t value, long p, int precision);

  std::int64_t value() const { return value_; }
  long prime() const { return p_; }
  int precision() const { return precision_; }
  std::int64_t modulus() const { return modulus_; }

  bool is_zero() const { return value_ == 0; }
  bool is_unit() const { return value_ % p_ != 0; }
  // Valuation capped by the precision: zero has infinite valuation.
  Valuation val() const;
  // Throws DomainError for non-units.
  Residue inverse() const;

  Residue operator+(const Residue& o) const;
  Residue operator-(const Residue& o) const;
  Residue operator*(const Residue& o) const;
  Residue operator-() const;
  bool operator==(const Residue& o) const;

 private:
  void require_same_ring(const Residue& o) const;
  std::int64_t value_;
  long p_;
  int precision_;
  std::int64_t modulus_;
};

// Reduction o_F -> o_F / p^N.  Throws DomainError on negative valuation.
Residue reduce_mod(const ValuatedRational& x, int precision);
std::int64_t reduce_mod(const mpq_class& x, long p, std::int64_t modulus);

// The unique lambda = 1 mod p^level with lambda^2 = mu (mod p^N), N being the
// precision of mu.  Requires mu = 1 mod p^level, level >= 1 and p odd.
Residue hensel_sqrt_one_plus(const Residue& mu, int level);

// Square roots of a unit residue mu in Z/p^N: empty when mu is not a square,
// otherwise {r, -r} with r the root whose value is smaller.
std::optional<Residue> sqrt_unit(const Residue& mu);

// Non-negative rational square root, if the argument is a square in Q.
std::optional<mpq_class> rational_sqrt(const mpq_class& x);

}  // namespace dualinv
