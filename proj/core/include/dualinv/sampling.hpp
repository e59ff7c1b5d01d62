#pragma once

#include <cstdint>
#include <random>

#include "dualinv/cayley.hpp"
#include "dualinv/hermitian.hpp"

namespace dualinv {

// Seeded sampler.  mt19937_64 output is fixed by the standard; bounded
// integers use plain rejection so draws are identical on every platform.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : engine_(seed) {}

  std::int64_t uniform(std::int64_t lo, std::int64_t hi);  // inclusive
  bool coin() { return uniform(0, 1) == 1; }

  // n / d with |n| <= 9 and 1 <= d <= 9, so p may divide the denominator.
  mpq_class rational();
  // Integer in [-9, 9].
  mpq_class integer() { return mpq_class(static_cast<long>(uniform(-9, 9))); }
  QuadRational scalar(const ExactField& field);
  QuadRational nonzero_scalar(const ExactField& field);
  QMatrix matrix(const ExactSpace& space);
  QMatrix vector(const ExactSpace& space);

  // sum c_i B_i over the basis of gu(V) with rational c_i.
  LieElem<QuadRational> lie(const ExactSpace& space);
  // Same with small integer entries, which hits degenerate loci more often.
  LieElem<QuadRational> small_lie(const ExactSpace& space);
  // Rejection-sampled into g_1.
  LieElem<QuadRational> domain_lie(const ExactSpace& space);
  // varpi^k times an integral combination of the lattice basis.
  LieElem<QuadRational> lattice_lie(const ExactSpace& space, int level);
  // s c(X) c(Y) t with s a scalar of E and t a fixed similitude twist.
  GroupElem<QuadRational> group(const ExactSpace& space);
  // y theta(y), which is theta-fixed.
  GroupElem<QuadRational> theta_fixed(const ExactSpace& space);
  // Element of GU(o_F) normalising curly-L: c(varpi Y) times a unit scalar.
  GroupElem<QuadRational> stabilizer(const ExactSpace& space);
  // Uniform element of GU mod p^N by rejection.
  GroupElem<QuadResidue> residue_group(const ResidueSpace& space);

 private:
  std::mt19937_64 engine_;
};

}  // namespace dualinv
