#include "dualinv/cayley.hpp"

#include <algorithm>

#include "dualinv/local_linalg.hpp"

namespace dualinv {

std::string to_string(FiberCase kind) {
  switch (kind) {
    case FiberCase::unique_lambda:
      return "unique-lambda";
    case FiberCase::two_preimages:
      return "two-preimages";
    case FiberCase::unique_mu_one:
      return "unique-mu1";
    case FiberCase::infinite_identity:
      return "infinite-identity";
    case FiberCase::empty:
      return "empty";
  }
  return "unknown";
}

namespace {

template <class T>
FiberCase classify(std::size_t regular, bool mu_is_one) {
  if (regular == 2) return FiberCase::two_preimages;
  if (regular == 1) return mu_is_one ? FiberCase::unique_mu_one : FiberCase::unique_lambda;
  return FiberCase::empty;
}

// All X in L-dot mod p^N with (lambda + g) X = 1 - g and alpha(X) = 1/lambda - 1
// whose 1 + X is invertible.
std::vector<LieElem<QuadResidue>> degenerate_preimages(const ResidueSpace& space,
                                                       const RMatrix& g,
                                                       const QuadResidue& lambda, double budget) {
  const bool inert = space.ring.is_inert();
  const auto& basis = space.similitude_lattice;
  const RMatrix lhs = g.plus_scalar(lambda);
  const QuadResidue target_alpha = lambda.inverse() - space.ring.one();

  std::vector<ZVec> columns;
  for (const auto& b : basis) {
    ZVec col = flatten(lhs * b, inert);
    col.push_back(lie_alpha(space, b)->re());
    columns.push_back(std::move(col));
  }
  ZVec rhs = flatten((-g).plus_scalar(space.ring.one()), inert);
  rhs.push_back(target_alpha.re());
  std::vector<ZVec> rows(rhs.size(), ZVec(basis.size(), 0));
  for (std::size_t c = 0; c < basis.size(); ++c)
    for (std::size_t r = 0; r < rhs.size(); ++r) rows[r][c] = columns[c][r];

  std::vector<LieElem<QuadResidue>> out;
  ModularSystem system(rows, basis.size(), rhs, space.ring.p, space.ring.precision);
  system.enumerate(
      [&](const ZVec& coeffs) {
        RMatrix x = space.zero_matrix();
        for (std::size_t i = 0; i < basis.size(); ++i) {
          if (coeffs[i] != 0) x += basis[i] * space.ring.from_int(coeffs[i]);
        }
        if (x.plus_scalar(space.ring.one()).is_invertible()) out.push_back({x, target_alpha});
        return true;
      },
      budget);
  return out;
}

}  // namespace

FiberResult<QuadRational> fiber(const ExactSpace& space, const GroupElem<QuadRational>& g) {
  using T = QuadRational;
  FiberResult<T> result;
  const T one = space.ring.one();
  if (space.is_general_linear()) {
    result.kind = FiberCase::unique_mu_one;
    result.lambdas = {one};
    auto x = x_lambda(space, g, one);
    result.preimages.push_back({x, one, in_domain(space, x)});
    return result;
  }
  auto root = rational_sqrt(g.multiplier.re());
  if (!g.multiplier.in_base_field() || !root) return result;
  const T lambda(*root);
  result.lambdas = {lambda, -lambda};
  if (g.matrix == space.identity()) {
    result.kind = FiberCase::infinite_identity;
    LieElem<T> zero{space.zero_matrix(), space.ring.zero()};
    result.preimages.push_back({zero, one, true});
    return result;
  }
  for (const T& l : result.lambdas) {
    if (l == -one || !g.matrix.plus_scalar(l).is_invertible()) continue;
    auto x = x_lambda(space, g, l);
    result.preimages.push_back({x, l, in_domain(space, x)});
  }
  result.kind = classify<T>(result.preimages.size(), g.multiplier == one);
  return result;
}

FiberResult<QuadResidue> fiber(const ResidueSpace& space, const GroupElem<QuadResidue>& g,
                               double budget) {
  using T = QuadResidue;
  FiberResult<T> result;
  const T one = space.ring.one();
  if (space.is_general_linear()) {
    result.kind = FiberCase::unique_mu_one;
    result.lambdas = {one};
    auto x = x_lambda(space, g, one);
    result.preimages.push_back({x, one, in_domain(space, x)});
    return result;
  }
  if (!g.multiplier.in_base_field()) return result;
  auto root = sqrt_unit(Residue(g.multiplier.re(), space.ring.p, space.ring.precision));
  if (!root) return result;
  const T lambda = space.ring.from_int(root->value());
  result.lambdas = {lambda, -lambda};

  std::size_t regular = 0;
  for (const T& l : result.lambdas) {
    if ((l + one).is_unit()) {
      if (!g.matrix.plus_scalar(l).is_invertible()) continue;
      auto x = x_lambda(space, g, l);
      result.preimages.push_back({x, l, in_domain(space, x)});
      ++regular;
    } else {
      for (auto& x : degenerate_preimages(space, g.matrix, l, budget)) {
        bool restricted = in_domain(space, x);
        result.preimages.push_back({std::move(x), l, restricted, true});
      }
    }
  }
  std::sort(result.preimages.begin(), result.preimages.end(),
            [](const auto& a, const auto& b) { return a.x.matrix < b.x.matrix; });
  result.kind = g.matrix == space.identity() ? FiberCase::infinite_identity
                                             : classify<T>(regular, g.multiplier == one);
  return result;
}

}  // namespace dualinv
