#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>

#include "dualinv/hermitian.hpp"

namespace dualinv {

enum class AntiUnitaryMode { involution, similitude };

// A tau-semilinear map v -> H tau(v).  `factor` is beta for an anti-unitary
// similitude (<hv, hw> = beta <w, v>) and 1 for an anti-unitary map.
template <class T>
struct AntiUnitaryMap {
  Matrix<T> matrix;
  T factor;
};

// Raised when a proposed anti-unitary map fails one of its identities.  The
// indices name the failing pair of basis vectors (e_row, e_col).
class AntiUnitaryViolation : public DomainError {
 public:
  AntiUnitaryViolation(const std::string& identity, std::size_t row, std::size_t col)
      : DomainError(identity + " fails at basis pair (" + std::to_string(row + 1) + ", " +
                    std::to_string(col + 1) + ")"),
        identity_(identity),
        row_(row),
        col_(col) {}
  const std::string& identity() const { return identity_; }
  std::size_t row() const { return row_; }
  std::size_t col() const { return col_; }

 private:
  std::string identity_;
  std::size_t row_;
  std::size_t col_;
};

// Semilinear composition: (H1, tau) o (H2, tau) is the linear map H1 tau(H2).
template <class T>
Matrix<T> compose_semilinear(const Matrix<T>& h1, const Matrix<T>& h2) {
  return h1 * h2.tau();
}

namespace detail {
template <class T>
std::optional<std::pair<std::size_t, std::size_t>> first_mismatch(const Matrix<T>& a,
                                                                  const Matrix<T>& b) {
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (!(a(i, j) == b(i, j))) return std::make_pair(i, j);
  return std::nullopt;
}
}  // namespace detail

// Involution mode checks H tau(H) = 1 and H^T J tau(H) = J^T (that is
// <hv, hw> = <w, v>).  Similitude mode checks H^T J tau(H) = beta J^T for a
// unit beta in F and returns it.  Throws AntiUnitaryViolation.
template <class Ring>
AntiUnitaryMap<typename Ring::Elem> validate_anti_unitary(const HermitianSpace<Ring>& space,
                                                          const Matrix<typename Ring::Elem>& h,
                                                          AntiUnitaryMode mode) {
  using T = typename Ring::Elem;
  if (h.rows() != space.dim || h.cols() != space.dim) {
    throw DomainError("anti-unitary matrix has the wrong size");
  }
  const auto& j = space.gram;
  Matrix<T> pairing = h.transpose() * j * h.tau();
  Matrix<T> jt = j.transpose();
  if (mode == AntiUnitaryMode::involution) {
    if (auto bad = detail::first_mismatch(compose_semilinear(h, h), space.identity())) {
      throw AntiUnitaryViolation("involution identity h(h(v)) = v", bad->first, bad->second);
    }
    if (auto bad = detail::first_mismatch(pairing, jt)) {
      throw AntiUnitaryViolation("anti-unitary identity <hv, hw> = <w, v>", bad->first,
                                 bad->second);
    }
    return {h, space.ring.one()};
  }
  std::optional<T> beta;
  for (std::size_t i = 0; i < space.dim && !beta; ++i)
    for (std::size_t k = 0; k < space.dim && !beta; ++k)
      if (jt(i, k).is_unit()) beta = pairing(i, k) * jt(i, k).inverse();
  if (!beta || !beta->is_unit() || !beta->in_base_field()) {
    throw AntiUnitaryViolation("similitude factor is not a unit of F", 0, 0);
  }
  if (auto bad = detail::first_mismatch(pairing, jt * *beta)) {
    throw AntiUnitaryViolation("anti-unitary similitude identity <hv, hw> = beta <w, v>",
                               bad->first, bad->second);
  }
  return {h, *beta};
}

// theta(g) = mu(g) H tau(g^-1) H^-1, computed as H J^-1 g^T J H^-1 (equal on
// GU and free of inversions); the transpose for the general-linear family.
template <class Ring>
Matrix<typename Ring::Elem> theta_matrix(const HermitianSpace<Ring>& space,
                                         const Matrix<typename Ring::Elem>& g) {
  if (space.is_general_linear()) return g.transpose();
  return space.anti_unitary * space.gram_inv * g.transpose() * space.gram *
         space.anti_unitary_inv;
}

template <class Ring>
GroupElem<typename Ring::Elem> theta_group(const HermitianSpace<Ring>& space,
                                           const GroupElem<typename Ring::Elem>& g) {
  return {theta_matrix(space, g.matrix), g.multiplier};
}

// iota(g) = theta(g)^-1 = mu(g)^-1 H tau(g) H^-1; transpose-inverse for
// the general-linear family.
template <class Ring>
GroupElem<typename Ring::Elem> iota_group(const HermitianSpace<Ring>& space,
                                          const GroupElem<typename Ring::Elem>& g) {
  if (space.is_general_linear()) return inverse(theta_group(space, g));
  auto m = space.anti_unitary * g.matrix.tau() * space.anti_unitary_inv;
  return {m * g.multiplier.inverse(), g.multiplier.inverse()};
}

// theta X = alpha(X) - H tau(X) H^-1, the differential of theta_G; the
// transpose for gl_n.
template <class Ring>
LieElem<typename Ring::Elem> theta_lie(const HermitianSpace<Ring>& space,
                                       const LieElem<typename Ring::Elem>& x) {
  if (space.is_general_linear()) return {x.matrix.transpose(), x.alpha};
  auto conj = space.anti_unitary * x.matrix.tau() * space.anti_unitary_inv;
  return {(-conj).plus_scalar(x.alpha), x.alpha};
}

enum class ConjugatorScope { isometries, similitudes };

struct ConjugatorSearch {
  std::optional<RMatrix> conjugator;
  double examined = 0;  // candidates inspected
};

// Least x (canonical residue order) with theta(x) = x and x a x^-1 = theta(a)
// in GU(V) or U(V) mod p^N; x = 1 whenever theta(a) = a.  Solves the two
// linear conditions by Smith form and scans the solution set.  Throws
// BudgetError if the solution set exceeds `budget`.
ConjugatorSearch find_symmetric_conjugator(const ResidueSpace& space,
                                           const GroupElem<QuadResidue>& a, ConjugatorScope scope,
                                           double budget = 1e6);

// Same contract over an explicit candidate list, scanned in the given order.
ConjugatorSearch find_symmetric_conjugator(const ResidueSpace& space,
                                           const GroupElem<QuadResidue>& a,
                                           std::span<const RMatrix> candidates,
                                           ConjugatorScope scope);

struct AntiUnitaryFactorization {
  AntiUnitaryMap<QuadResidue> h1;  // anti-unitary involution
  AntiUnitaryMap<QuadResidue> h2;  // anti-unitary similitude, h2^2 = beta
  RMatrix conjugator;              // x = h h1, theta-fixed
};

// a = h1 h2 with h1 = h x for the least isometric symmetric conjugator x.
// Both maps are re-validated; nullopt when no conjugator exists.
std::optional<AntiUnitaryFactorization> factor_anti_unitary(const ResidueSpace& space,
                                                            const GroupElem<QuadResidue>& a,
                                                            double budget = 1e6);

}  // namespace dualinv
