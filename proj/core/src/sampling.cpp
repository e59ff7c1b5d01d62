#include "dualinv/sampling.hpp"

#include "dualinv/involution.hpp"

namespace dualinv {

std::int64_t Sampler::uniform(std::int64_t lo, std::int64_t hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % span;
  std::uint64_t draw;
  do {
    draw = engine_();
  } while (draw >= limit);
  return lo + static_cast<std::int64_t>(draw % span);
}

mpq_class Sampler::rational() {
  mpq_class r(static_cast<long>(uniform(-9, 9)), static_cast<unsigned long>(uniform(1, 9)));
  r.canonicalize();
  return r;
}

QuadRational Sampler::scalar(const ExactField& field) {
  if (!field.is_inert()) return QuadRational(rational());
  return field.make(rational(), rational());
}

QuadRational Sampler::nonzero_scalar(const ExactField& field) {
  QuadRational s;
  do {
    s = scalar(field);
  } while (s.is_zero());
  return s;
}

QMatrix Sampler::matrix(const ExactSpace& space) {
  QMatrix m = space.zero_matrix();
  for (std::size_t i = 0; i < space.dim; ++i)
    for (std::size_t j = 0; j < space.dim; ++j) m(i, j) = scalar(space.ring);
  return m;
}

QMatrix Sampler::vector(const ExactSpace& space) {
  QMatrix v(space.dim, 1, space.ring.zero());
  for (std::size_t i = 0; i < space.dim; ++i) v(i, 0) = scalar(space.ring);
  return v;
}

LieElem<QuadRational> Sampler::lie(const ExactSpace& space) {
  QMatrix x = space.zero_matrix();
  for (const auto& b : space.similitude_lattice) x += b * QuadRational(rational());
  return require_lie(space, x);
}

LieElem<QuadRational> Sampler::small_lie(const ExactSpace& space) {
  QMatrix x = space.zero_matrix();
  for (const auto& b : space.similitude_lattice) {
    x += b * QuadRational(mpq_class(static_cast<long>(uniform(-2, 2))));
  }
  return require_lie(space, x);
}

LieElem<QuadRational> Sampler::domain_lie(const ExactSpace& space) {
  while (true) {
    auto x = coin() ? lie(space) : small_lie(space);
    if (in_domain(space, x)) return x;
  }
}

LieElem<QuadRational> Sampler::lattice_lie(const ExactSpace& space, int level) {
  mpz_class pk;
  mpz_ui_pow_ui(pk.get_mpz_t(), static_cast<unsigned long>(space.ring.p),
                static_cast<unsigned long>(level));
  QMatrix x = space.zero_matrix();
  for (const auto& b : space.similitude_lattice) {
    x += b * QuadRational(integer() * mpq_class(pk));
  }
  return require_lie(space, x);
}

GroupElem<QuadRational> Sampler::group(const ExactSpace& space) {
  auto g = cayley(space, domain_lie(space)) * cayley(space, domain_lie(space));
  if (space.is_general_linear()) return g;
  auto s = nonzero_scalar(space.ring);
  g = require_group(space, g.matrix * s);
  if (space.family == Family::symplectic && coin()) {
    // diag(1, beta) blocks carry a non-square multiplier.
    QMatrix t = space.identity();
    const QuadRational beta(mpq_class(static_cast<long>(uniform(2, 7))));
    for (std::size_t i = space.dim / 2; i < space.dim; ++i) t(i, i) = beta;
    g = g * require_group(space, t);
  }
  return g;
}

GroupElem<QuadRational> Sampler::theta_fixed(const ExactSpace& space) {
  auto y = group(space);
  return y * theta_group(space, y);
}

GroupElem<QuadRational> Sampler::stabilizer(const ExactSpace& space) {
  auto k = cayley(space, lattice_lie(space, 1));
  if (space.is_general_linear()) return k;
  // A unit of o_E times k still normalises curly-L.
  QuadRational unit(mpq_class(static_cast<long>(uniform(1, space.ring.p - 1))));
  return require_group(space, k.matrix * unit);
}

GroupElem<QuadResidue> Sampler::residue_group(const ResidueSpace& space) {
  const std::int64_t s = space.ring.size();
  while (true) {
    RMatrix m = space.zero_matrix();
    for (std::size_t i = 0; i < space.dim; ++i)
      for (std::size_t j = 0; j < space.dim; ++j) m(i, j) = space.ring.element(uniform(0, s - 1));
    if (auto g = certify_group(space, m)) return *g;
  }
}

}  // namespace dualinv
