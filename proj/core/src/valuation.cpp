#include "dualinv/valuation.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "dualinv/errors.hpp"

namespace dualinv {

long Valuation::value() const {
  if (!finite_) throw std::logic_error("value() of infinite valuation");
  return value_;
}

Valuation Valuation::operator+(Valuation other) const {
  if (!finite_ || !other.finite_) return infinity();
  return Valuation(value_ + other.value_);
}

std::strong_ordering operator<=>(const Valuation& a, const Valuation& b) {
  if (!a.finite_ || !b.finite_) return b.finite_ <=> a.finite_;
  return a.value_ <=> b.value_;
}

std::string Valuation::to_string() const {
  return finite_ ? std::to_string(value_) : std::string("inf");
}

bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

void require_odd_prime(long p) {
  if (p == 2) throw std::invalid_argument("even residual characteristic is not supported");
  if (!is_prime(p)) throw std::invalid_argument("not a prime: " + std::to_string(p));
}

std::int64_t checked_pow(long p, int exponent) {
  if (exponent < 0) throw std::invalid_argument("negative exponent");
  std::int64_t r = 1;
  for (int i = 0; i < exponent; ++i) {
    if (r > (std::numeric_limits<std::int64_t>::max() >> 2) / p) {
      throw std::overflow_error("p^N too large for residue arithmetic");
    }
    r *= p;
  }
  return r;
}

long smallest_nonresidue(long p) {
  require_odd_prime(p);
  for (long u = 2; u < p; ++u) {
    bool square = false;
    for (long x = 1; x < p && !square; ++x) square = (x * x) % p == u;
    if (!square) return u;
  }
  throw std::logic_error("no quadratic non-residue found");
}

Valuation valuation(const mpz_class& x, long p) {
  if (x == 0) return Valuation::infinity();
  mpz_class rest = abs(x);
  long v = 0;
  while (mpz_divisible_ui_p(rest.get_mpz_t(), static_cast<unsigned long>(p))) {
    mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), static_cast<unsigned long>(p));
    ++v;
  }
  return Valuation(v);
}

Valuation valuation(const mpq_class& x, long p) {
  if (x == 0) return Valuation::infinity();
  return Valuation(valuation(x.get_num(), p).value() - valuation(x.get_den(), p).value());
}

ValuatedRational::ValuatedRational(mpq_class value, long p) : value_(std::move(value)), p_(p) {
  require_odd_prime(p);
  value_.canonicalize();
}

bool ValuatedRational::is_integral() const { return val() >= Valuation(0); }
bool ValuatedRational::is_unit() const { return val() == Valuation(0); }

void ValuatedRational::require_same_prime(const ValuatedRational& o) const {
  if (o.p_ != p_) throw std::invalid_argument("mixed primes in ValuatedRational arithmetic");
}

ValuatedRational ValuatedRational::operator+(const ValuatedRational& o) const {
  require_same_prime(o);
  return {value_ + o.value_, p_};
}
ValuatedRational ValuatedRational::operator-(const ValuatedRational& o) const {
  require_same_prime(o);
  return {value_ - o.value_, p_};
}
ValuatedRational ValuatedRational::operator*(const ValuatedRational& o) const {
  require_same_prime(o);
  return {value_ * o.value_, p_};
}
ValuatedRational ValuatedRational::operator/(const ValuatedRational& o) const {
  require_same_prime(o);
  if (o.value_ == 0) throw DomainError("division by zero");
  return {value_ / o.value_, p_};
}
ValuatedRational ValuatedRational::operator-() const { return {-value_, p_}; }
bool ValuatedRational::operator==(const ValuatedRational& o) const {
  return p_ == o.p_ && value_ == o.value_;
}

namespace {

std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t m) {
  return static_cast<std::int64_t>((static_cast<__int128>(a) * b) % m);
}

std::int64_t normalize(std::int64_t v, std::int64_t m) {
  v %= m;
  return v < 0 ? v + m : v;
}

// Inverse of a unit modulo m by the extended Euclidean algorithm.
std::int64_t invmod(std::int64_t a, std::int64_t m) {
  std::int64_t g = m, x = 0, x1 = 1, a1 = normalize(a, m);
  while (a1 != 0) {
    std::int64_t q = g / a1;
    std::int64_t t = g - q * a1;
    g = a1;
    a1 = t;
    t = x - q * x1;
    x = x1;
    x1 = t;
  }
  if (g != 1) throw DomainError("not invertible modulo " + std::to_string(m));
  return normalize(x, m);
}

}  // namespace

Residue::Residue(std::int64_t value, long p, int precision)
    : p_(p), precision_(precision), modulus_(checked_pow(p, precision)) {
  if (precision < 1) throw std::invalid_argument("precision must be >= 1");
  value_ = normalize(value, modulus_);
}

Valuation Residue::val() const {
  if (value_ == 0) return Valuation::infinity();
  long v = 0;
  for (std::int64_t r = value_; r % p_ == 0; r /= p_) ++v;
  return Valuation(v);
}

Residue Residue::inverse() const {
  if (!is_unit()) throw DomainError("residue " + std::to_string(value_) + " is not a unit");
  return {invmod(value_, modulus_), p_, precision_};
}

void Residue::require_same_ring(const Residue& o) const {
  if (o.p_ != p_ || o.precision_ != precision_) {
    throw std::invalid_argument("mixed truncated rings");
  }
}

Residue Residue::operator+(const Residue& o) const {
  require_same_ring(o);
  return {(value_ + o.value_) % modulus_, p_, precision_};
}
Residue Residue::operator-(const Residue& o) const {
  require_same_ring(o);
  return {value_ - o.value_, p_, precision_};
}
Residue Residue::operator*(const Residue& o) const {
  require_same_ring(o);
  return {mulmod(value_, o.value_, modulus_), p_, precision_};
}
Residue Residue::operator-() const { return {-value_, p_, precision_}; }
bool Residue::operator==(const Residue& o) const {
  return p_ == o.p_ && precision_ == o.precision_ && value_ == o.value_;
}

std::int64_t reduce_mod(const mpq_class& x, long p, std::int64_t modulus) {
  if (valuation(x.get_den(), p) != Valuation(0)) {
    throw DomainError("cannot reduce non-integral value " + x.get_str());
  }
  mpz_class m(static_cast<long>(modulus));
  mpz_class num = x.get_num() % m;
  mpz_class den = x.get_den() % m;
  mpz_class inv;
  mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t());
  mpz_class r = (num * inv) % m;
  if (r < 0) r += m;
  return r.get_si();
}

Residue reduce_mod(const ValuatedRational& x, int precision) {
  std::int64_t m = checked_pow(x.prime(), precision);
  return {reduce_mod(x.value(), x.prime(), m), x.prime(), precision};
}

Residue hensel_sqrt_one_plus(const Residue& mu, int level) {
  require_odd_prime(mu.prime());
  if (level < 1) throw std::invalid_argument("level must be >= 1");
  Residue one(1, mu.prime(), mu.precision());
  std::int64_t pk = checked_pow(mu.prime(), std::min(level, mu.precision()));
  if ((mu - one).value() % pk != 0) {
    throw DomainError("mu is not congruent to 1 modulo p^" + std::to_string(level));
  }
  // Newton iteration x -> x - (x^2 - mu)/(2x) doubles the correct digits.
  Residue two(2, mu.prime(), mu.precision());
  Residue x = one;
  for (int correct = 1; correct < 2 * mu.precision(); correct *= 2) {
    x = x - (x * x - mu) * (two * x).inverse();
  }
  return x;
}

std::optional<Residue> sqrt_unit(const Residue& mu) {
  require_odd_prime(mu.prime());
  if (!mu.is_unit()) throw DomainError("sqrt_unit requires a unit");
  long p = mu.prime();
  std::int64_t target = mu.value() % p;
  std::optional<std::int64_t> base;
  for (std::int64_t r = 1; r < p; ++r) {
    if ((r * r) % p == target) {
      base = r;
      break;
    }
  }
  if (!base) return std::nullopt;
  Residue x(*base, p, mu.precision());
  Residue two(2, p, mu.precision());
  for (int correct = 1; correct < 2 * mu.precision(); correct *= 2) {
    x = x - (x * x - mu) * (two * x).inverse();
  }
  Residue neg = -x;
  return neg.value() < x.value() ? neg : x;
}

std::optional<mpq_class> rational_sqrt(const mpq_class& x) {
  if (x < 0) return std::nullopt;
  if (x == 0) return mpq_class(0);
  if (!mpz_perfect_square_p(x.get_num_mpz_t()) || !mpz_perfect_square_p(x.get_den_mpz_t())) {
    return std::nullopt;
  }
  mpz_class n, d;
  mpz_sqrt(n.get_mpz_t(), x.get_num_mpz_t());
  mpz_sqrt(d.get_mpz_t(), x.get_den_mpz_t());
  mpq_class r(n, d);
  r.canonicalize();
  return r;
}

}  // namespace dualinv
