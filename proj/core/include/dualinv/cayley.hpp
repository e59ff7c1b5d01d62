#pragma once

#include <string>
#include <vector>

#include "dualinv/hermitian.hpp"

namespace dualinv {

// X in gu(V)^1: 1 + alpha(X) and 1 + X invertible.  This is where the
// similitude Cayley formula is defined.
template <class Ring>
bool in_cayley_domain(const HermitianSpace<Ring>& space, const LieElem<typename Ring::Elem>& x) {
  if (space.is_general_linear()) return x.matrix.plus_scalar(space.ring.one()).is_invertible();
  return (space.ring.one() + x.alpha).is_unit() &&
         x.matrix.plus_scalar(space.ring.one()).is_invertible();
}

// X in g_1: additionally 1 + alpha(X) - X invertible.  g_1 is stable under
// theta and Ad; for gl_n only 1 + X invertible is required.
template <class Ring>
bool in_domain(const HermitianSpace<Ring>& space, const LieElem<typename Ring::Elem>& x) {
  if (!in_cayley_domain(space, x)) return false;
  if (space.is_general_linear()) return true;
  return (-x.matrix).plus_scalar(space.ring.one() + x.alpha).is_invertible();
}

// c(X) = (1 - X/(1+alpha)) (1+X)^-1 with multiplier (1+alpha)^-2; c(X) = 1+X
// for gl_n.  Throws DomainError outside gu(V)^1.
template <class Ring>
GroupElem<typename Ring::Elem> cayley(const HermitianSpace<Ring>& space,
                                      const LieElem<typename Ring::Elem>& x) {
  const auto one = space.ring.one();
  if (space.is_general_linear()) {
    auto g = x.matrix.plus_scalar(one);
    if (!g.is_invertible()) throw DomainError("1 + X is not invertible");
    return {g, one};
  }
  auto shift = one + x.alpha;
  if (!shift.is_unit()) throw DomainError("1 + alpha(X) is not invertible");
  auto inv = x.matrix.plus_scalar(one).inverse();
  if (!inv) throw DomainError("1 + X is not invertible");
  auto lambda = shift.inverse();
  return {(-(x.matrix * lambda)).plus_scalar(one) * *inv, lambda * lambda};
}

// X_lambda = (1 - g)(lambda + g)^-1, with alpha(X_lambda) = lambda^-1 - 1.
// Requires lambda^2 = mu(g) and lambda + g invertible.  For gl_n the only
// admissible lambda is 1 and X = g - 1.
template <class Ring>
LieElem<typename Ring::Elem> x_lambda(const HermitianSpace<Ring>& space,
                                      const GroupElem<typename Ring::Elem>& g,
                                      const typename Ring::Elem& lambda) {
  const auto one = space.ring.one();
  if (!(lambda * lambda == g.multiplier)) throw DomainError("lambda^2 differs from mu(g)");
  if (space.is_general_linear()) {
    if (!(lambda == one)) throw DomainError("general-linear Cayley preimages use lambda = 1");
    return {g.matrix.plus_scalar(-one), space.ring.zero()};
  }
  auto inv = g.matrix.plus_scalar(lambda).inverse();
  if (!inv) throw DomainError("lambda + g is not invertible");
  return {(-g.matrix).plus_scalar(one) * *inv, lambda.inverse() - one};
}

// Membership in the fiber over 1: X = 0, or alpha(X) = -2 with X in gu(V)^1.
template <class Ring>
bool in_identity_fiber(const HermitianSpace<Ring>& space, const LieElem<typename Ring::Elem>& x) {
  if (x.matrix.is_zero()) return true;
  if (space.is_general_linear()) return false;
  return x.alpha == space.ring.from_int(-2) && in_cayley_domain(space, x);
}

enum class FiberCase { unique_lambda, two_preimages, unique_mu_one, infinite_identity, empty };

std::string to_string(FiberCase kind);

template <class T>
struct Preimage {
  LieElem<T> x;
  T lambda;                   // (1 + alpha(X))^-1
  bool in_restricted_domain;  // X in g_1, not only gu(V)^1
  // Truncated rings only: lambda = -1 mod p, where lambda + g is never
  // invertible and preimages come in congruence families.
  bool degenerate = false;
};

template <class T>
struct FiberResult {
  FiberCase kind = FiberCase::empty;
  std::vector<Preimage<T>> preimages;
  std::vector<T> lambdas;  // square roots of mu(g) that were tried
};

// Exact fiber over F.  For g = 1 the representative 0 is returned; use
// in_identity_fiber for the full set.
FiberResult<QuadRational> fiber(const ExactSpace& space, const GroupElem<QuadRational>& g);

// Fiber of c restricted to integral X (the residues of L-dot mod p^N).  The
// case tag follows the non-degenerate preimages; degenerate ones and the
// whole fiber over 1 are enumerated exactly.  Preimages are sorted.
FiberResult<QuadResidue> fiber(const ResidueSpace& space, const GroupElem<QuadResidue>& g,
                               double budget = 1e6);

}  // namespace dualinv
