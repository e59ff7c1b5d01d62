#include "dualinv/scalar.hpp"

#include <cctype>
#include <stdexcept>

#include "dualinv/errors.hpp"

namespace dualinv {

QuadRational::QuadRational(mpq_class a, mpq_class b, long u)
    : a_(std::move(a)), b_(std::move(b)), u_(u) {
  a_.canonicalize();
  b_.canonicalize();
  if (u_ == 0 && b_ != 0) throw std::invalid_argument("split element with nonzero s-part");
}

long QuadRational::merged_u(const QuadRational& o) const {
  if (u_ == 0) return o.u_;
  if (o.u_ != 0 && o.u_ != u_) throw std::logic_error("mixing different quadratic extensions");
  return u_;
}

QuadRational QuadRational::tau() const {
  QuadRational r = *this;
  r.b_ = -b_;
  return r;
}

mpq_class QuadRational::norm() const { return a_ * a_ - u_ * b_ * b_; }

QuadRational QuadRational::inverse() const {
  if (is_zero()) throw DomainError("inverse of zero");
  mpq_class n = norm();
  QuadRational r;
  r.a_ = a_ / n;
  r.b_ = -b_ / n;
  r.u_ = u_;
  return r;
}

QuadRational QuadRational::operator+(const QuadRational& o) const {
  QuadRational r;
  r.u_ = merged_u(o);
  r.a_ = a_ + o.a_;
  r.b_ = b_ + o.b_;
  return r;
}

QuadRational QuadRational::operator-(const QuadRational& o) const {
  QuadRational r;
  r.u_ = merged_u(o);
  r.a_ = a_ - o.a_;
  r.b_ = b_ - o.b_;
  return r;
}

QuadRational QuadRational::operator*(const QuadRational& o) const {
  QuadRational r;
  r.u_ = merged_u(o);
  if (b_ == 0 && o.b_ == 0) {
    r.a_ = a_ * o.a_;
  } else {
    r.a_ = a_ * o.a_ + r.u_ * b_ * o.b_;
    r.b_ = a_ * o.b_ + b_ * o.a_;
  }
  return r;
}

QuadRational QuadRational::operator-() const {
  QuadRational r = *this;
  r.a_ = -a_;
  r.b_ = -b_;
  return r;
}

namespace {

std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t m) {
  return static_cast<std::int64_t>((static_cast<__int128>(a) * b) % m);
}

std::int64_t norm_mod(std::int64_t v, std::int64_t m) {
  v %= m;
  return v < 0 ? v + m : v;
}

std::int64_t invmod(std::int64_t a, std::int64_t m) {
  std::int64_t g = m, x = 0, x1 = 1, a1 = norm_mod(a, m);
  while (a1 != 0) {
    std::int64_t q = g / a1;
    std::int64_t t = g - q * a1;
    g = a1;
    a1 = t;
    t = x - q * x1;
    x = x1;
    x1 = t;
  }
  if (g != 1) throw DomainError("norm is not invertible");
  return norm_mod(x, m);
}

}  // namespace

QuadResidue::QuadResidue(std::int64_t a, std::int64_t b, long p, std::int64_t modulus, long u)
    : a_(norm_mod(a, modulus)), b_(norm_mod(b, modulus)), p_(p), m_(modulus), u_(u) {
  if (u_ == 0 && b_ != 0) throw std::invalid_argument("split residue with nonzero s-part");
}

bool QuadResidue::is_unit() const {
  // In the inert case the residue field is F_{p^2}: a+bs is a unit unless
  // both coordinates vanish mod p.
  return a_ % p_ != 0 || b_ % p_ != 0;
}

QuadResidue QuadResidue::tau() const { return {a_, -b_, p_, m_, u_}; }

std::int64_t QuadResidue::norm() const {
  return norm_mod(mulmod(a_, a_, m_) - mulmod(norm_mod(u_, m_), mulmod(b_, b_, m_), m_), m_);
}

QuadResidue QuadResidue::inverse() const {
  if (!is_unit()) {
    throw DomainError("residue " + to_string(*this) + " is not a unit");
  }
  std::int64_t ninv = invmod(norm(), m_);
  return {mulmod(a_, ninv, m_), -mulmod(b_, ninv, m_), p_, m_, u_};
}

QuadResidue QuadResidue::operator+(const QuadResidue& o) const {
  return {(a_ + o.a_) % m_, (b_ + o.b_) % m_, p_, m_, u_ ? u_ : o.u_};
}

QuadResidue QuadResidue::operator-(const QuadResidue& o) const {
  return {a_ - o.a_, b_ - o.b_, p_, m_, u_ ? u_ : o.u_};
}

QuadResidue QuadResidue::operator*(const QuadResidue& o) const {
  long u = u_ ? u_ : o.u_;
  if (b_ == 0 && o.b_ == 0) return {mulmod(a_, o.a_, m_), 0, p_, m_, u};
  std::int64_t re = (mulmod(a_, o.a_, m_) + mulmod(norm_mod(u, m_), mulmod(b_, o.b_, m_), m_)) % m_;
  std::int64_t im = (mulmod(a_, o.b_, m_) + mulmod(b_, o.a_, m_)) % m_;
  return {re, im, p_, m_, u};
}

QuadResidue QuadResidue::operator-() const { return {-a_, -b_, p_, m_, u_}; }

ExactField ExactField::split(long p) {
  require_odd_prime(p);
  return {p, 0};
}

ExactField ExactField::inert(long p) {
  require_odd_prime(p);
  return {p, smallest_nonresidue(p)};
}

ExactField::Elem ExactField::generator() const {
  if (!is_inert()) throw std::logic_error("split extension has no generator");
  return QuadRational::generator(u);
}

ResidueRing ResidueRing::make_ring(long p, int precision, long u) {
  require_odd_prime(p);
  if (precision < 1) throw std::invalid_argument("precision must be >= 1");
  return {p, precision, checked_pow(p, precision), u};
}

ResidueRing::Elem ResidueRing::generator() const {
  if (!is_inert()) throw std::logic_error("split extension has no generator");
  return make(0, 1);
}

ResidueRing::Elem ResidueRing::element(std::int64_t index) const {
  if (is_inert()) return make(index / modulus, index % modulus);
  return make(index, 0);
}

std::int64_t ResidueRing::index_of(const Elem& x) const {
  return is_inert() ? x.re() * modulus + x.im() : x.re();
}

QuadRational to_exact_lift(const QuadResidue& x) {
  if (x.u() == 0) return QuadRational(mpq_class(static_cast<long>(x.re())));
  return {mpq_class(static_cast<long>(x.re())), mpq_class(static_cast<long>(x.im())), x.u()};
}

QuadResidue reduce_mod(const QuadRational& x, const ResidueRing& ring) {
  if (x.u() != 0 && x.u() != ring.u) throw std::logic_error("extension mismatch in reduction");
  return ring.make(reduce_mod(x.re(), ring.p, ring.modulus), reduce_mod(x.im(), ring.p, ring.modulus));
}

namespace {

std::string format_pair(const std::string& a, const std::string& b_abs, bool a_zero,
                        bool b_zero, bool b_negative) {
  if (b_zero) return a;
  std::string tail = b_abs + "*s";
  if (a_zero) return (b_negative ? "-" : "") + tail;
  return a + (b_negative ? "-" : "+") + tail;
}

// Splits "a+b*s" / "a-b*s" / "b*s" / "a" into its two numeral strings.
std::pair<std::string, std::string> split_text(const std::string& raw) {
  std::string text;
  for (char c : raw) {
    if (!std::isspace(static_cast<unsigned char>(c))) text += c;
  }
  if (text.empty()) throw std::invalid_argument("empty scalar text");
  // A bare "s", "+s" or "-s" carries the coefficient 1.
  if (text.back() == 's' && (text.size() == 1 || text[text.size() - 2] == '+' ||
                             text[text.size() - 2] == '-')) {
    text.insert(text.size() - 1, "1*");
  }
  auto star = text.find("*s");
  if (star == std::string::npos) {
    if (text.find('s') != std::string::npos) throw std::invalid_argument("bad scalar: " + raw);
    return {text, "0"};
  }
  if (star + 2 != text.size()) throw std::invalid_argument("bad scalar: " + raw);
  std::string body = text.substr(0, star);
  // The s-coefficient starts at the last sign that is not the leading one
  // and not part of a fraction's denominator (denominators are unsigned).
  std::size_t cut = std::string::npos;
  for (std::size_t i = body.size(); i-- > 1;) {
    if (body[i] == '+' || body[i] == '-') {
      cut = i;
      break;
    }
  }
  if (cut == std::string::npos) return {"0", body};
  std::string a = body.substr(0, cut);
  std::string b = body.substr(cut);
  if (b[0] == '+') b = b.substr(1);
  return {a, b};
}

}  // namespace

std::string to_string(const QuadRational& x) {
  mpq_class babs = abs(x.im());
  return format_pair(x.re().get_str(), babs.get_str(), x.re() == 0, x.im() == 0, x.im() < 0);
}

std::string to_string(const QuadResidue& x) {
  return format_pair(std::to_string(x.re()), std::to_string(x.im()), x.re() == 0, x.im() == 0,
                     false);
}

QuadRational parse_quad_rational(const std::string& text, long u) {
  auto [a, b] = split_text(text);
  mpq_class qa(a), qb(b);
  qa.canonicalize();
  qb.canonicalize();
  if (qb != 0 && u == 0) throw std::invalid_argument("s-part in split extension: " + text);
  return {qa, qb, qb == 0 ? 0 : u};
}

QuadResidue parse_quad_residue(const std::string& text, const ResidueRing& ring) {
  auto [a, b] = split_text(text);
  mpq_class qa(a), qb(b);
  qa.canonicalize();
  qb.canonicalize();
  if (qb != 0 && !ring.is_inert()) throw std::invalid_argument("s-part in split extension: " + text);
  return ring.make(reduce_mod(qa, ring.p, ring.modulus), reduce_mod(qb, ring.p, ring.modulus));
}

}  // namespace dualinv
