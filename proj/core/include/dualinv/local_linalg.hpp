#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace dualinv {

using QVec = std::vector<mpq_class>;
using ZVec = std::vector<std::int64_t>;

// Canonical representative of x modulo p^v Z_(p): the rational t / p^e with
// e = max(0, -v_p(x), -v) and 0 <= t < p^(v+e).
mpq_class canonical_mod(const mpq_class& x, long p, long v);

// Column Hermite normal form over Z_(p) of the module generated by `gens`
// (each of length `dim`).  Lower-triangular column echelon form, pivots are
// powers of p, entries left of a pivot reduced by canonical_mod.  Two
// generating sets span the same lattice iff their normal forms coincide.
std::vector<QVec> hermite_columns(std::vector<QVec> gens, std::size_t dim, long p);

// Basis of {y in Z_(p)^k : A y = 0} where A is given by its k columns, each
// of length `rows`.  The result is saturated in Z_(p)^k.
std::vector<QVec> integral_kernel(const std::vector<QVec>& columns, std::size_t rows, long p);

// Exact rational solve: coordinates c with sum_i c_i basis_i = target, if the
// target lies in the span.
std::optional<QVec> solve_in_span(const std::vector<QVec>& basis, const QVec& target);

// The affine system A y = b over Z/p^N, diagonalised by unimodular row and
// column operations (Smith form over the local ring Z/p^N).
class ModularSystem {
 public:
  // `rows` is A row by row; every row has the same length k.
  ModularSystem(const std::vector<ZVec>& rows, std::size_t unknowns, const ZVec& rhs, long p,
                int precision);

  bool solvable() const { return solvable_; }
  // Number of solutions (as a double; may be huge).
  double solution_count() const;
  // Calls visit on every solution in a fixed order; stops early when visit
  // returns false.  Throws BudgetError if solution_count() > budget.
  void enumerate(const std::function<bool(const ZVec&)>& visit, double budget) const;

 private:
  long p_;
  int precision_;
  std::int64_t modulus_;
  std::size_t unknowns_;
  bool solvable_ = true;
  std::vector<int> pivot_val_;          // valuation of each diagonal pivot
  ZVec particular_;                     // z-coordinates of one solution
  std::vector<ZVec> column_transform_;  // y = Q z, stored by rows
};

}  // namespace dualinv
