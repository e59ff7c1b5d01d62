#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "dualinv/matrix.hpp"
#include "dualinv/scalar.hpp"

namespace dualinv {

enum class Family { orthogonal, symplectic, hermitian, skew_hermitian, general_linear };

std::string to_string(Family family);
Family parse_family(const std::string& name);
// hermitian and skew-hermitian forms live over the inert extension.
bool family_is_inert(Family family);

// A non-degenerate epsilon-hermitian space V = E^n with <u, v> = u^T J tau(v),
// together with the fixed anti-unitary involution h(v) = H tau(v).
//
// The general-linear family carries no form: it models GL_n with theta the
// transpose and c(X) = 1 + X.
template <class Ring>
struct HermitianSpace {
  using Elem = typename Ring::Elem;
  using Mat = Matrix<Elem>;

  Ring ring;
  Family family = Family::orthogonal;
  std::size_t dim = 0;
  int epsilon = 1;
  Mat gram;
  Mat gram_inv;
  Mat anti_unitary;      // H
  Mat anti_unitary_inv;  // H^-1 = tau(H)
  // o_F-bases of the Lie lattices L^ n gu(V) and L^ n u(V) for the standard
  // lattice L = o_E^n (empty isometry basis for general-linear).
  std::vector<Mat> similitude_lattice;
  std::vector<Mat> isometry_lattice;

  bool is_general_linear() const { return family == Family::general_linear; }
  Mat identity() const { return Mat::identity(dim, ring.zero(), ring.one()); }
  Mat zero_matrix() const { return Mat(dim, dim, ring.zero()); }
  Mat scalar(const Elem& s) const { return Mat::scalar(dim, ring.zero(), s); }
};

using ExactSpace = HermitianSpace<ExactField>;
using ResidueSpace = HermitianSpace<ResidueRing>;

// Rejection raised by validate_space.
class InvalidForm : public DomainError {
 public:
  using DomainError::DomainError;
};

// Standard models: orthogonal (J = I), symplectic (J = [[0,I],[-I,0]]),
// hermitian (J = I over E), skew-hermitian (J = s*I over E) and
// general-linear.  H = I except for symplectic where H = diag(I, -I).
ExactSpace standard_space(Family family, std::size_t n, long p);

// Accepts iff J is invertible and J = eps * tau(J)^T, and H is an
// anti-unitary involution for the form.  Computes the Lie lattice bases.
ExactSpace validate_space(const ExactField& field, const QMatrix& gram, int epsilon, Family family,
                          const QMatrix& anti_unitary);
ResidueSpace validate_space(const ResidueRing& ring, const RMatrix& gram, int epsilon,
                            Family family, const RMatrix& anti_unitary);

// The same space over o_E / p^N (requires integral J, H with unit determinant).
ResidueSpace reduce_space(const ExactSpace& space, int precision);

template <class Ring>
typename Ring::Elem inner(const HermitianSpace<Ring>& space, const Matrix<typename Ring::Elem>& u,
                          const Matrix<typename Ring::Elem>& v) {
  if (u.rows() != space.dim || v.rows() != space.dim || u.cols() != 1 || v.cols() != 1) {
    throw std::invalid_argument("inner: dimension mismatch");
  }
  return (u.transpose() * space.gram * v.tau())(0, 0);
}

// The adjoint a* = tau(J^-1 a^T J): <a u, v> = <u, a* v>.  For the
// general-linear family this is the plain transpose.
template <class Ring>
Matrix<typename Ring::Elem> star(const HermitianSpace<Ring>& space,
                                 const Matrix<typename Ring::Elem>& a) {
  if (space.is_general_linear()) return a.transpose();
  return (space.gram_inv * a.transpose() * space.gram).tau();
}

// mu with g g* = mu*1, mu a unit of F; nullopt if g is not a similitude.
template <class Ring>
std::optional<typename Ring::Elem> similitude_multiplier(const HermitianSpace<Ring>& space,
                                                         const Matrix<typename Ring::Elem>& g) {
  if (g.rows() != space.dim || g.cols() != space.dim) return std::nullopt;
  if (space.is_general_linear()) {
    if (!g.is_invertible()) return std::nullopt;
    return space.ring.one();
  }
  auto s = (g * star(space, g)).scalar_value();
  if (!s || !s->in_base_field() || !s->is_unit()) return std::nullopt;
  return s;
}

// alpha with X + X* = alpha*1, alpha in F; nullopt if X is not in gu(V).
// Every X is in gl_n with alpha = 0 for the general-linear family.
template <class Ring>
std::optional<typename Ring::Elem> lie_alpha(const HermitianSpace<Ring>& space,
                                             const Matrix<typename Ring::Elem>& x) {
  if (x.rows() != space.dim || x.cols() != space.dim) return std::nullopt;
  if (space.is_general_linear()) return space.ring.zero();
  auto s = (x + star(space, x)).scalar_value();
  if (!s || !s->in_base_field()) return std::nullopt;
  return s;
}

// Certified element of GU(V) with its multiplier.
template <class T>
struct GroupElem {
  Matrix<T> matrix;
  T multiplier;
  bool operator==(const GroupElem& o) const { return matrix == o.matrix; }
};

// Certified element of gu(V) with its alpha.
template <class T>
struct LieElem {
  Matrix<T> matrix;
  T alpha;
  bool operator==(const LieElem& o) const { return matrix == o.matrix; }
};

template <class Ring>
std::optional<GroupElem<typename Ring::Elem>> certify_group(const HermitianSpace<Ring>& space,
                                                            const Matrix<typename Ring::Elem>& g) {
  auto mu = similitude_multiplier(space, g);
  if (!mu) return std::nullopt;
  return GroupElem<typename Ring::Elem>{g, *mu};
}

template <class Ring>
std::optional<LieElem<typename Ring::Elem>> certify_lie(const HermitianSpace<Ring>& space,
                                                        const Matrix<typename Ring::Elem>& x) {
  auto a = lie_alpha(space, x);
  if (!a) return std::nullopt;
  return LieElem<typename Ring::Elem>{x, *a};
}

// Throwing variants for inputs that must be members.
template <class Ring>
GroupElem<typename Ring::Elem> require_group(const HermitianSpace<Ring>& space,
                                             const Matrix<typename Ring::Elem>& g) {
  auto r = certify_group(space, g);
  if (!r) throw DomainError("matrix is not a similitude of the form");
  return *r;
}

template <class Ring>
LieElem<typename Ring::Elem> require_lie(const HermitianSpace<Ring>& space,
                                         const Matrix<typename Ring::Elem>& x) {
  auto r = certify_lie(space, x);
  if (!r) throw DomainError("matrix is not in the similitude Lie algebra");
  return *r;
}

template <class T>
GroupElem<T> operator*(const GroupElem<T>& a, const GroupElem<T>& b) {
  return {a.matrix * b.matrix, a.multiplier * b.multiplier};
}

template <class T>
GroupElem<T> inverse(const GroupElem<T>& a) {
  auto inv = a.matrix.inverse();
  if (!inv) throw DomainError("group element is not invertible");
  return {*inv, a.multiplier.inverse()};
}

template <class Ring>
bool is_isometry(const HermitianSpace<Ring>& space, const GroupElem<typename Ring::Elem>& g) {
  return space.is_general_linear() || g.multiplier == space.ring.one();
}

}  // namespace dualinv
