#include "dualinv/hermitian.hpp"

#include <array>
#include <utility>

#include "dualinv/involution.hpp"
#include "dualinv/local_linalg.hpp"

namespace dualinv {

namespace {

constexpr std::array<std::pair<Family, const char*>, 5> kFamilyNames{{
    {Family::orthogonal, "orthogonal"},
    {Family::symplectic, "symplectic"},
    {Family::hermitian, "hermitian"},
    {Family::skew_hermitian, "skew-hermitian"},
    {Family::general_linear, "general-linear"},
}};

int family_epsilon(Family family) {
  return family == Family::symplectic || family == Family::skew_hermitian ? -1 : 1;
}

// F-coordinates of the conditions cutting gu(V) (or u(V)) out of M_n(E):
// X + X* must be a scalar of F (or zero).
std::vector<mpq_class> lie_conditions(const ExactSpace& space, const QMatrix& x, bool isometry) {
  const bool inert = space.ring.is_inert();
  QMatrix m = x + star(space, x);
  if (isometry) return flatten(m, inert);
  std::vector<mpq_class> out;
  const std::size_t n = space.dim;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      QuadRational e = i == j ? m(i, i) - m(0, 0) : m(i, j);
      if (i == 0 && j == 0) e = m(0, 0) - QuadRational(m(0, 0).re());
      out.push_back(e.re());
      if (inert) out.push_back(e.im());
    }
  }
  return out;
}

std::vector<QMatrix> integral_lie_basis(const ExactSpace& space, bool isometry) {
  const std::size_t n = space.dim;
  const std::size_t k = n * n * static_cast<std::size_t>(space.ring.degree());
  std::vector<QVec> columns;
  for (std::size_t c = 0; c < k; ++c) {
    std::vector<mpq_class> coords(k, 0);
    coords[c] = 1;
    columns.push_back(lie_conditions(space, unflatten(coords, n, space.ring.u), isometry));
  }
  std::vector<QMatrix> basis;
  for (const auto& y : integral_kernel(columns, columns.front().size(), space.ring.p)) {
    basis.push_back(unflatten(y, n, space.ring.u));
  }
  return basis;
}

template <class Ring>
void check_form(const HermitianSpace<Ring>& s) {
  if (!s.gram.is_square() || s.gram.rows() != s.dim || s.dim == 0) {
    throw InvalidForm("Gram matrix must be square and non-empty");
  }
  const bool inert_family = family_is_inert(s.family);
  if (s.family != Family::general_linear && inert_family != s.ring.is_inert()) {
    throw InvalidForm(to_string(s.family) + " forms need " +
                      (inert_family ? "an inert" : "the split") + " extension");
  }
  if (s.epsilon != 1 && s.epsilon != -1) throw InvalidForm("epsilon must be +1 or -1");
  if (s.family != Family::general_linear && s.epsilon != family_epsilon(s.family)) {
    throw InvalidForm("epsilon does not match the " + to_string(s.family) + " family");
  }
  if (!(s.gram == s.gram.tau().transpose() * s.ring.from_int(s.epsilon))) {
    throw InvalidForm("Gram matrix is not epsilon-hermitian: J != eps tau(J)^T");
  }
}

template <class Ring>
HermitianSpace<Ring> assemble(const Ring& ring, const Matrix<typename Ring::Elem>& gram,
                              int epsilon, Family family,
                              const Matrix<typename Ring::Elem>& anti_unitary) {
  HermitianSpace<Ring> s;
  s.ring = ring;
  s.family = family;
  s.dim = gram.rows();
  s.epsilon = epsilon;
  s.gram = gram;
  check_form(s);
  auto inv = gram.inverse();
  if (!inv) throw InvalidForm("Gram matrix is singular");
  s.gram_inv = *inv;
  if (family == Family::general_linear) {
    if (!(gram == s.identity()) || epsilon != 1) {
      throw InvalidForm("general-linear spaces carry the identity form");
    }
    s.anti_unitary = s.anti_unitary_inv = s.identity();
    return s;
  }
  validate_anti_unitary(s, anti_unitary, AntiUnitaryMode::involution);
  s.anti_unitary = anti_unitary;
  s.anti_unitary_inv = anti_unitary.tau();
  return s;
}

}  // namespace

std::string to_string(Family family) {
  for (const auto& [f, name] : kFamilyNames) {
    if (f == family) return name;
  }
  return "unknown";
}

Family parse_family(const std::string& name) {
  for (const auto& [f, n] : kFamilyNames) {
    if (name == n) return f;
  }
  throw ConfigError("unknown family: " + name);
}

bool family_is_inert(Family family) {
  return family == Family::hermitian || family == Family::skew_hermitian;
}

ExactSpace standard_space(Family family, std::size_t n, long p) {
  require_odd_prime(p);
  if (n == 0) throw InvalidForm("dimension must be positive");
  if (family == Family::symplectic && n % 2 != 0) {
    throw InvalidForm("symplectic spaces have even dimension");
  }
  ExactField field = family_is_inert(family) ? ExactField::inert(p) : ExactField::split(p);
  QMatrix id = QMatrix::identity(n, field.zero(), field.one());
  QMatrix gram = id;
  QMatrix h = id;
  switch (family) {
    case Family::symplectic:
      gram = QMatrix(n, n, field.zero());
      for (std::size_t i = 0; i < n / 2; ++i) {
        gram(i, i + n / 2) = field.one();
        gram(i + n / 2, i) = field.from_int(-1);
        h(i + n / 2, i + n / 2) = field.from_int(-1);
      }
      break;
    case Family::skew_hermitian:
      gram = id * field.generator();
      break;
    default:
      break;
  }
  return validate_space(field, gram, family_epsilon(family), family, h);
}

ExactSpace validate_space(const ExactField& field, const QMatrix& gram, int epsilon,
                          Family family, const QMatrix& anti_unitary) {
  ExactSpace s = assemble(field, gram, epsilon, family, anti_unitary);
  if (family == Family::general_linear) {
    for (std::size_t i = 0; i < s.dim; ++i)
      for (std::size_t j = 0; j < s.dim; ++j) {
        QMatrix e = s.zero_matrix();
        e(i, j) = field.one();
        s.similitude_lattice.push_back(e);
      }
    return s;
  }
  s.similitude_lattice = integral_lie_basis(s, false);
  s.isometry_lattice = integral_lie_basis(s, true);
  return s;
}

ResidueSpace validate_space(const ResidueRing& ring, const RMatrix& gram, int epsilon,
                            Family family, const RMatrix& anti_unitary) {
  return assemble(ring, gram, epsilon, family, anti_unitary);
}

ResidueSpace reduce_space(const ExactSpace& space, int precision) {
  if (precision < 1) throw ConfigError("precision must be at least 1");
  ResidueRing ring = ResidueRing::make_ring(space.ring.p, precision, space.ring.u);
  ResidueSpace r;
  r.ring = ring;
  r.family = space.family;
  r.dim = space.dim;
  r.epsilon = space.epsilon;
  r.gram = reduce_mod(space.gram, ring);
  r.gram_inv = reduce_mod(space.gram_inv, ring);
  r.anti_unitary = reduce_mod(space.anti_unitary, ring);
  r.anti_unitary_inv = reduce_mod(space.anti_unitary_inv, ring);
  if (!(r.gram * r.gram_inv == r.identity())) {
    throw DomainError("Gram matrix does not have unit determinant");
  }
  for (const auto& b : space.similitude_lattice) r.similitude_lattice.push_back(reduce_mod(b, ring));
  for (const auto& b : space.isometry_lattice) r.isometry_lattice.push_back(reduce_mod(b, ring));
  return r;
}

}  // namespace dualinv
