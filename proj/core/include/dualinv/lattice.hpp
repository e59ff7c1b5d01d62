#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "dualinv/hermitian.hpp"
#include "dualinv/local_linalg.hpp"

namespace dualinv {

// An o_F-lattice in F^m stored as its column Hermite normal form, so that
// equality of lattices is equality of bases.
class LatticeBasis {
 public:
  LatticeBasis() = default;
  LatticeBasis(std::vector<QVec> generators, std::size_t ambient_dim, long p);

  long prime() const { return p_; }
  std::size_t ambient_dim() const { return dim_; }
  std::size_t rank() const { return columns_.size(); }
  const std::vector<QVec>& columns() const { return columns_; }

  bool contains(const QVec& v) const;
  bool contains(const LatticeBasis& other) const;
  // Every coordinate of every vector has non-negative valuation.
  bool is_integral() const;

  LatticeBasis operator+(const LatticeBasis& other) const;
  LatticeBasis intersect(const LatticeBasis& other) const;
  LatticeBasis scaled(const mpq_class& factor) const;

  bool operator==(const LatticeBasis& other) const = default;

  // Basis vectors as rows: "[[c11,...],[c21,...]]".
  std::string to_string() const;

 private:
  long p_ = 3;
  std::size_t dim_ = 0;
  std::vector<QVec> columns_;
};

// Lattices of matrices over E, flattened to F-coordinates.
LatticeBasis matrix_lattice(const ExactSpace& space, const std::vector<QMatrix>& generators);
std::vector<QMatrix> lattice_matrices(const ExactSpace& space, const LatticeBasis& lattice);
// Image of a lattice under an F-linear map of matrices.
LatticeBasis map_lattice(const ExactSpace& space, const LatticeBasis& lattice,
                         const std::function<QMatrix(const QMatrix&)>& map);

struct StandardLattices {
  LatticeBasis vectors;     // L = o_E^n inside V viewed over F
  LatticeBasis order;       // L-hat = M_n(o_E), the stabilizer of L
  LatticeBasis similitude;  // L-dot = L-hat n gu(V), the lattice curly-L
  LatticeBasis isometry;    // L-ddot = L-hat n u(V) (zero for gl_n)
  // Least valuation of <L, L>, generating the ideal o_L of F.
  long form_valuation = 0;
  bool h_stable = false;    // h(L) = L
};

StandardLattices standard_lattices(const ExactSpace& space);

// The Lie lattice curly-L = L-dot of the standard model.
LatticeBasis lie_lattice(const ExactSpace& space);

// curly-L(x) = Ad(x^-1) curly-L n curly-L.
LatticeBasis lattice_of_x(const ExactSpace& space, const QMatrix& x);

LatticeBasis theta_lattice(const ExactSpace& space, const LatticeBasis& lattice);
// Ad(x) lattice = x lattice x^-1.
LatticeBasis adjoint_lattice(const ExactSpace& space, const QMatrix& x, const LatticeBasis& lattice);
// varpi^k lattice.
LatticeBasis scale_lattice(const LatticeBasis& lattice, long k);

// Residues of varpi^k lattice modulo p^N for an integral lattice of
// matrices; sorted and duplicate free.  Throws BudgetError when the
// coefficient range exceeds the budget.
std::vector<RMatrix> lattice_residues(const ResidueSpace& space, const LatticeBasis& lattice,
                                      int level, double budget = 1e6);

enum class GroupScope { similitudes, isometries };

// (1 + varpi^k L-hat) n GU(V) (or U(V)) modulo p^N, sorted.  Requires
// 1 <= k < N.
std::vector<RMatrix> congruence_members(const ResidueSpace& space, int level, GroupScope scope,
                                        double budget = 1e6);

struct LevelComparison {
  bool applicable = true;
  std::size_t lie_count = 0;     // |varpi^k lattice mod p^N|
  std::size_t image_count = 0;   // distinct Cayley images
  std::size_t member_count = 0;  // congruence subgroup size
  bool injective = false;
  bool images_equal = false;
  std::vector<std::string> counterexamples;
  bool passed() const { return !applicable || (injective && images_equal); }
};

struct CayleyLevelReport {
  int level = 1;
  int precision = 2;
  LevelComparison similitude;  // c(varpi^k L-dot) against GU
  LevelComparison isometry;    // c(varpi^k L-ddot) against U
  bool alpha_integral = false;        // alpha(L-dot) lies in o_F
  bool alpha_in_level = false;        // alpha = 0 mod p^k on varpi^k L-dot
  bool multiplier_congruent = false;  // mu = 1 mod p^k on the congruence group
  std::vector<std::string> counterexamples;
  bool passed() const {
    return similitude.passed() && isometry.passed() && alpha_integral && alpha_in_level &&
           multiplier_congruent;
  }
};

CayleyLevelReport check_cayley_level(const ExactSpace& space, int level, int precision,
                                     double budget = 1e6);

}  // namespace dualinv
