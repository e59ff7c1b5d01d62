#include "dualinv/involution.hpp"

#include <vector>

#include "dualinv/local_linalg.hpp"

namespace dualinv {

namespace {

bool in_scope(const ResidueSpace& space, const RMatrix& x, ConjugatorScope scope) {
  auto g = certify_group(space, x);
  if (!g) return false;
  return scope == ConjugatorScope::similitudes || is_isometry(space, *g);
}

bool is_symmetric_conjugator(const ResidueSpace& space, const RMatrix& x, const RMatrix& a,
                             const RMatrix& theta_a) {
  return theta_matrix(space, x) == x && x * a == theta_a * x;
}

}  // namespace

ConjugatorSearch find_symmetric_conjugator(const ResidueSpace& space,
                                           const GroupElem<QuadResidue>& a, ConjugatorScope scope,
                                           double budget) {
  const RMatrix theta_a = theta_matrix(space, a.matrix);
  ConjugatorSearch result;
  if (theta_a == a.matrix) {
    result.conjugator = space.identity();
    result.examined = 1;
    return result;
  }
  const std::size_t n = space.dim;
  const bool inert = space.ring.is_inert();
  const std::size_t k = n * n * static_cast<std::size_t>(space.ring.degree());

  // Column c of the system is the image of the c-th coordinate matrix under
  // x -> (x a - theta(a) x, theta(x) - x); both maps are linear on GU.
  std::vector<ZVec> columns;
  for (std::size_t c = 0; c < k; ++c) {
    ZVec coords(k, 0);
    coords[c] = 1;
    RMatrix x = unflatten(coords, n, space.ring);
    ZVec col = flatten(x * a.matrix - theta_a * x, inert);
    ZVec sym = flatten(theta_matrix(space, x) - x, inert);
    col.insert(col.end(), sym.begin(), sym.end());
    columns.push_back(std::move(col));
  }
  std::vector<ZVec> rows(columns.front().size(), ZVec(k, 0));
  for (std::size_t c = 0; c < k; ++c)
    for (std::size_t r = 0; r < rows.size(); ++r) rows[r][c] = columns[c][r];

  ModularSystem system(rows, k, ZVec(rows.size(), 0), space.ring.p, space.ring.precision);
  system.enumerate(
      [&](const ZVec& y) {
        result.examined += 1;
        RMatrix x = unflatten(y, n, space.ring);
        if (result.conjugator && !(x < *result.conjugator)) return true;
        if (in_scope(space, x, scope)) result.conjugator = x;
        return true;
      },
      budget);
  return result;
}

ConjugatorSearch find_symmetric_conjugator(const ResidueSpace& space,
                                           const GroupElem<QuadResidue>& a,
                                           std::span<const RMatrix> candidates,
                                           ConjugatorScope scope) {
  const RMatrix theta_a = theta_matrix(space, a.matrix);
  ConjugatorSearch result;
  if (theta_a == a.matrix) {
    result.conjugator = space.identity();
    result.examined = 1;
    return result;
  }
  for (const auto& x : candidates) {
    result.examined += 1;
    if (is_symmetric_conjugator(space, x, a.matrix, theta_a) && in_scope(space, x, scope)) {
      result.conjugator = x;
      break;
    }
  }
  return result;
}

std::optional<AntiUnitaryFactorization> factor_anti_unitary(const ResidueSpace& space,
                                                            const GroupElem<QuadResidue>& a,
                                                            double budget) {
  if (space.is_general_linear()) {
    throw DomainError("anti-unitary factorization needs a form");
  }
  auto search = find_symmetric_conjugator(space, a, ConjugatorScope::isometries, budget);
  if (!search.conjugator) return std::nullopt;
  const RMatrix& x = *search.conjugator;
  // h1 = h o x and h2 = h1 o a as semilinear maps.
  RMatrix h1 = space.anti_unitary * x.tau();
  RMatrix h2 = h1 * a.matrix.tau();
  AntiUnitaryFactorization f{validate_anti_unitary(space, h1, AntiUnitaryMode::involution),
                             validate_anti_unitary(space, h2, AntiUnitaryMode::similitude), x};
  if (!(f.h2.factor == a.multiplier) ||
      !(compose_semilinear(h2, h2) == space.scalar(a.multiplier)) ||
      !(compose_semilinear(h1, h2) == a.matrix)) {
    throw std::logic_error("anti-unitary factorization failed its own check");
  }
  return f;
}

}  // namespace dualinv
