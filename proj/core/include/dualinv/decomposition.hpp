#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "dualinv/hermitian.hpp"

namespace dualinv {

// Shared residue data for one space at a fixed precision N: the sets
// varpi^k curly-L mod p^N and their Cayley images, computed once per level.
class DecompositionContext {
 public:
  DecompositionContext(ExactSpace space, int precision, double budget = 1e6);

  const ExactSpace& exact() const { return exact_; }
  const ResidueSpace& space() const { return space_; }
  int precision() const { return space_.ring.precision; }
  double budget() const { return budget_; }

  // varpi^k curly-L mod p^N, sorted.
  const std::vector<RMatrix>& lie_residues(int level);
  // varpi^k curly-L(x) = Ad(x^-1) varpi^k curly-L n varpi^k curly-L, sorted.
  std::vector<RMatrix> lie_residues_of(const RMatrix& x, int level);
  // c(varpi^k curly-L) mod p^N, sorted.
  const std::vector<RMatrix>& congruence_image(int level);
  // Sorted Cayley images of a set of Lie residues.
  std::vector<RMatrix> cayley_image(const std::vector<RMatrix>& lie) const;

 private:
  void require_level(int level) const;
  ExactSpace exact_;
  ResidueSpace space_;
  double budget_;
  std::map<int, std::vector<RMatrix>> lie_;
  std::map<int, std::vector<RMatrix>> image_;
};

// The coset C = b c(varpi^l0 curly-L) mod p^N.
struct CosetSet {
  RMatrix base;
  int level = 1;
  int precision = 2;
  std::vector<RMatrix> members;  // sorted, distinct
};

CosetSet make_coset(DecompositionContext& ctx, const RMatrix& base, int level);

// A conjugate-theta-stable subset theta(S) = g S g^-1 with its provenance.
struct Piece {
  std::vector<RMatrix> members;  // sorted
  RMatrix witness;               // g = x a^-1
  RMatrix anchor;                // a
  RMatrix conjugator;            // x_a
  int level = 1;
  std::size_t bucket = 0;        // index of the representative d_i
};

// a c(varpi^k curly-L(x)) with witness x a^-1.  Requires theta(x) = x and
// x a x^-1 = theta(a); throws DomainError otherwise.
Piece neighborhood(DecompositionContext& ctx, const GroupElem<QuadResidue>& a, const RMatrix& x,
                   int level);

// Compares {theta(s)} with {g s g^-1} as residue sets.
bool verify_piece(const ResidueSpace& space, const std::vector<RMatrix>& members,
                  const RMatrix& witness);

struct DecompositionResult {
  std::vector<Piece> pieces;
  std::vector<RMatrix> representatives;  // theta-fixed d_i, one per bucket
  std::vector<int> levels;               // l_i per bucket
  std::size_t neighborhoods = 0;         // size of the cover before maximality
  std::size_t conjugator_searches = 0;
  bool fixed_point_shortcut = false;     // C contained a theta-fixed element
  bool partition = false;                // pieces disjoint with union C
  bool witnesses_verified = false;
  bool nested_levels = false;            // c(varpi^l_i L(d_i)) decreasing in i
  bool disjoint_or_nested = false;       // over all pairs of neighborhoods
  bool coset_invariant = false;          // curly-L(x_a) = curly-L(d_i)
  std::vector<std::string> failures;

  bool passed() const {
    return partition && witnesses_verified && nested_levels && disjoint_or_nested &&
           coset_invariant;
  }
};

// Partitions C into conjugate-theta-stable pieces.  Throws DomainError when
// a conjugator search fails or the required level reaches the precision.
DecompositionResult decompose(DecompositionContext& ctx, const CosetSet& coset);

}  // namespace dualinv
