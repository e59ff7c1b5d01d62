#include "dualinv/decomposition.hpp"

#include <algorithm>
#include <iterator>

#include "dualinv/cayley.hpp"
#include "dualinv/involution.hpp"
#include "dualinv/lattice.hpp"
#include "dualinv/local_linalg.hpp"

namespace dualinv {

namespace {

bool sorted_subset(const std::vector<RMatrix>& small, const std::vector<RMatrix>& big) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

std::size_t overlap(const std::vector<RMatrix>& a, const std::vector<RMatrix>& b) {
  std::size_t count = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++count;
      ++i;
      ++j;
    }
  }
  return count;
}

std::vector<RMatrix> sorted_unique(std::vector<RMatrix> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

RMatrix invert(const RMatrix& m) {
  auto inv = m.inverse();
  if (!inv) throw DomainError("matrix is not invertible mod p^N: " + to_string(m));
  return *inv;
}

// Least theta-fixed y in G with y = x mod p, i.e. the representative of the
// coset K x for K the level-one congruence subgroup.
RMatrix coset_representative(const ResidueSpace& space, const RMatrix& x, double budget) {
  const int n_prec = space.ring.precision;
  const std::size_t n = space.dim;
  const bool inert = space.ring.is_inert();
  const std::size_t k = n * n * static_cast<std::size_t>(space.ring.degree());
  // y = x + p z with z mod p^(N-1); theta(y) = y becomes (T - 1) z = 0.
  ResidueRing coarse = ResidueRing::make_ring(space.ring.p, n_prec - 1, space.ring.u);
  ResidueSpace low = space;
  low.ring = coarse;
  low.gram = reduce_mod(to_exact_lift(space.gram), coarse);
  low.gram_inv = reduce_mod(to_exact_lift(space.gram_inv), coarse);
  low.anti_unitary = reduce_mod(to_exact_lift(space.anti_unitary), coarse);
  low.anti_unitary_inv = reduce_mod(to_exact_lift(space.anti_unitary_inv), coarse);
  std::vector<ZVec> columns;
  for (std::size_t c = 0; c < k; ++c) {
    ZVec coords(k, 0);
    coords[c] = 1;
    RMatrix z = unflatten(coords, n, coarse);
    columns.push_back(flatten(theta_matrix(low, z) - z, inert));
  }
  std::vector<ZVec> rows(columns.front().size(), ZVec(k, 0));
  for (std::size_t c = 0; c < k; ++c)
    for (std::size_t r = 0; r < rows.size(); ++r) rows[r][c] = columns[c][r];
  ModularSystem system(rows, k, ZVec(rows.size(), 0), space.ring.p, n_prec - 1);

  const ZVec base = flatten(x, inert);
  const std::int64_t p = space.ring.p;
  std::optional<RMatrix> best;
  system.enumerate(
      [&](const ZVec& z) {
        ZVec y(k);
        for (std::size_t i = 0; i < k; ++i) y[i] = (base[i] + p * z[i]) % space.ring.modulus;
        RMatrix cand = unflatten(y, n, space.ring);
        if (best && !(cand < *best)) return true;
        if (theta_matrix(space, cand) == cand && certify_group(space, cand)) best = cand;
        return true;
      },
      budget);
  if (!best) throw std::logic_error("coset of a theta-fixed element has no theta-fixed point");
  return *best;
}

}  // namespace

DecompositionContext::DecompositionContext(ExactSpace space, int precision, double budget)
    : exact_(std::move(space)), space_(reduce_space(exact_, precision)), budget_(budget) {
  if (precision < 2) throw ConfigError("decomposition needs precision N >= 2");
}

void DecompositionContext::require_level(int level) const {
  if (level < 1 || level >= precision()) {
    throw DomainError("level " + std::to_string(level) + " is outside 1..N-1 (N=" +
                      std::to_string(precision()) + ")");
  }
}

const std::vector<RMatrix>& DecompositionContext::lie_residues(int level) {
  require_level(level);
  auto it = lie_.find(level);
  if (it == lie_.end()) {
    it = lie_.emplace(level, lattice_residues(space_, lie_lattice(exact_), level, budget_)).first;
  }
  return it->second;
}

std::vector<RMatrix> DecompositionContext::lie_residues_of(const RMatrix& x, int level) {
  const auto& base = lie_residues(level);
  const RMatrix inv = invert(x);
  std::vector<RMatrix> moved;
  moved.reserve(base.size());
  for (const auto& y : base) moved.push_back(inv * y * x);
  moved = sorted_unique(std::move(moved));
  std::vector<RMatrix> out;
  std::set_intersection(moved.begin(), moved.end(), base.begin(), base.end(),
                        std::back_inserter(out));
  return out;
}

std::vector<RMatrix> DecompositionContext::cayley_image(const std::vector<RMatrix>& lie) const {
  std::vector<RMatrix> out;
  out.reserve(lie.size());
  for (const auto& y : lie) out.push_back(cayley(space_, require_lie(space_, y)).matrix);
  return sorted_unique(std::move(out));
}

const std::vector<RMatrix>& DecompositionContext::congruence_image(int level) {
  auto it = image_.find(level);
  if (it == image_.end()) it = image_.emplace(level, cayley_image(lie_residues(level))).first;
  return it->second;
}

CosetSet make_coset(DecompositionContext& ctx, const RMatrix& base, int level) {
  require_group(ctx.space(), base);
  CosetSet c;
  c.base = base;
  c.level = level;
  c.precision = ctx.precision();
  for (const auto& k : ctx.congruence_image(level)) c.members.push_back(base * k);
  c.members = sorted_unique(std::move(c.members));
  return c;
}

Piece neighborhood(DecompositionContext& ctx, const GroupElem<QuadResidue>& a, const RMatrix& x,
                   int level) {
  const ResidueSpace& space = ctx.space();
  if (!(theta_matrix(space, x) == x)) throw DomainError("conjugator is not theta-fixed");
  if (!(x * a.matrix == theta_matrix(space, a.matrix) * x)) {
    throw DomainError("x a x^-1 differs from theta(a)");
  }
  Piece piece;
  piece.anchor = a.matrix;
  piece.conjugator = x;
  piece.level = level;
  piece.witness = x * invert(a.matrix);
  for (const auto& k : ctx.cayley_image(ctx.lie_residues_of(x, level))) {
    piece.members.push_back(a.matrix * k);
  }
  piece.members = sorted_unique(std::move(piece.members));
  return piece;
}

bool verify_piece(const ResidueSpace& space, const std::vector<RMatrix>& members,
                  const RMatrix& witness) {
  auto inv = witness.inverse();
  if (!inv) return false;
  std::vector<RMatrix> lhs, rhs;
  lhs.reserve(members.size());
  rhs.reserve(members.size());
  for (const auto& s : members) {
    lhs.push_back(theta_matrix(space, s));
    rhs.push_back(witness * s * *inv);
  }
  return sorted_unique(std::move(lhs)) == sorted_unique(std::move(rhs));
}

DecompositionResult decompose(DecompositionContext& ctx, const CosetSet& coset) {
  const ResidueSpace& space = ctx.space();
  if (coset.precision != ctx.precision()) throw DomainError("coset precision differs from context");
  DecompositionResult result;
  const int l0 = coset.level;
  std::vector<Piece> cover;

  auto fixed = std::find_if(coset.members.begin(), coset.members.end(),
                            [&](const RMatrix& a) { return theta_matrix(space, a) == a; });
  if (fixed != coset.members.end()) {
    result.fixed_point_shortcut = true;
    result.representatives.push_back(space.identity());
    result.levels.push_back(l0);
    cover.push_back(neighborhood(ctx, require_group(space, *fixed), space.identity(), l0));
    result.coset_invariant = true;
  } else {
    std::vector<bool> covered(coset.members.size(), false);
    std::vector<RMatrix> bucket_key;                // d_i mod p
    std::vector<std::vector<RMatrix>> bucket_lie;   // varpi^l_i L(d_i)
    result.coset_invariant = true;
    for (std::size_t idx = 0; idx < coset.members.size(); ++idx) {
      if (covered[idx]) continue;
      const auto a = require_group(space, coset.members[idx]);
      auto search = find_symmetric_conjugator(space, a, ConjugatorScope::similitudes, ctx.budget());
      ++result.conjugator_searches;
      if (!search.conjugator) {
        throw DomainError("no theta-symmetric conjugator for " + to_string(a.matrix));
      }
      const RMatrix& x = *search.conjugator;
      const RMatrix key = reduce_mod(to_exact_lift(x), ResidueRing::make_ring(
                                                           space.ring.p, 1, space.ring.u));
      std::size_t bucket = static_cast<std::size_t>(
          std::find(bucket_key.begin(), bucket_key.end(), key) - bucket_key.begin());
      if (bucket == bucket_key.size()) {
        // New coset K d_i: pick the least level l_i >= l_{i-1} with
        // varpi^l_i L(d_i) inside the previous lattice.
        RMatrix d = coset_representative(space, x, ctx.budget());
        const std::vector<RMatrix>& previous =
            bucket_lie.empty() ? ctx.lie_residues(l0) : bucket_lie.back();
        int level = result.levels.empty() ? l0 : result.levels.back();
        std::vector<RMatrix> lie;
        for (;; ++level) {
          if (level >= ctx.precision()) {
            throw DomainError("precision exhausted choosing a nested level");
          }
          lie = ctx.lie_residues_of(d, level);
          if (sorted_subset(lie, previous)) break;
        }
        bucket_key.push_back(key);
        bucket_lie.push_back(std::move(lie));
        result.representatives.push_back(d);
        result.levels.push_back(level);
      }
      const int level = result.levels[bucket];
      if (ctx.lie_residues_of(x, level) != bucket_lie[bucket]) {
        result.coset_invariant = false;
        result.failures.push_back("L(x_a) differs from L(d_i) for a = " + to_string(a.matrix));
      }
      Piece piece = neighborhood(ctx, a, x, level);
      piece.bucket = bucket;
      for (const auto& m : piece.members) {
        auto it = std::lower_bound(coset.members.begin(), coset.members.end(), m);
        if (it == coset.members.end() || !(*it == m)) {
          throw std::logic_error("neighborhood leaves the coset");
        }
        covered[static_cast<std::size_t>(it - coset.members.begin())] = true;
      }
      cover.push_back(std::move(piece));
    }
  }
  result.neighborhoods = cover.size();

  // Disjoint-or-nested over all pairs, then keep the maximal neighborhoods.
  result.disjoint_or_nested = true;
  std::vector<bool> dominated(cover.size(), false);
  for (std::size_t i = 0; i < cover.size(); ++i) {
    for (std::size_t j = i + 1; j < cover.size(); ++j) {
      const auto& a = cover[i].members;
      const auto& b = cover[j].members;
      std::size_t common = overlap(a, b);
      if (common == 0) continue;
      if (common == b.size()) {
        dominated[j] = true;
      } else if (common == a.size()) {
        dominated[i] = true;
      } else {
        result.disjoint_or_nested = false;
        result.failures.push_back("neighborhoods " + std::to_string(i) + " and " +
                                  std::to_string(j) + " overlap without nesting");
      }
    }
  }
  for (std::size_t i = 0; i < cover.size(); ++i) {
    if (!dominated[i]) result.pieces.push_back(std::move(cover[i]));
  }

  std::vector<RMatrix> all;
  for (const auto& p : result.pieces) all.insert(all.end(), p.members.begin(), p.members.end());
  std::sort(all.begin(), all.end());
  result.partition = all == coset.members;
  if (!result.partition) result.failures.push_back("pieces do not partition the coset");

  result.witnesses_verified = true;
  for (std::size_t i = 0; i < result.pieces.size(); ++i) {
    if (!verify_piece(space, result.pieces[i].members, result.pieces[i].witness)) {
      result.witnesses_verified = false;
      result.failures.push_back("piece " + std::to_string(i) + " fails its witness");
    }
  }

  result.nested_levels = true;
  std::vector<RMatrix> outer = ctx.congruence_image(l0);
  for (std::size_t i = 0; i < result.representatives.size(); ++i) {
    auto inner = ctx.cayley_image(ctx.lie_residues_of(result.representatives[i], result.levels[i]));
    if (!sorted_subset(inner, outer)) {
      result.nested_levels = false;
      result.failures.push_back("level chain breaks at bucket " + std::to_string(i));
    }
    outer = std::move(inner);
  }
  return result;
}

}  // namespace dualinv
