#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "dualinv/hermitian.hpp"

namespace dualinv {

enum class FiniteFamily { Sp, GSp, U, GU, O_plus, O_minus, GO_plus, GO_minus, GL };

std::string to_string(FiniteFamily family);
FiniteFamily parse_finite_family(const std::string& name);
bool is_similitude_family(FiniteFamily family);

// A finite classical or similitude group over F_q (F_q^2 for unitary
// families) with elements stored in canonical residue order.
struct FiniteGroupTable {
  FiniteFamily family = FiniteFamily::GL;
  std::size_t n = 0;
  long q = 3;
  ResidueSpace space;  // precision one
  std::vector<RMatrix> elements;
  std::vector<QuadResidue> multipliers;
  std::vector<std::size_t> inverse_of;
  std::vector<std::size_t> iota_of;
  std::vector<std::size_t> generators;  // indices generating the group
  std::size_t identity = 0;

  std::size_t order() const { return elements.size(); }
  std::uint64_t key(const RMatrix& m) const;
  std::optional<std::size_t> find(const RMatrix& m) const;
  std::size_t index_of(const RMatrix& m) const;  // throws if absent
  std::size_t multiply(std::size_t a, std::size_t b) const;
  // "Sp2(3)", "U2(9)", "GL3(3)", ...
  std::string name() const;

  std::unordered_map<std::uint64_t, std::size_t> lookup;
};

// Enumerates every g with g star(g) = mu 1 (mu = 1 for isometry groups, any
// mu in F_q^x for similitude groups) and attaches inverse and iota.  q must
// be an odd prime.  Throws BudgetError when the group exceeds `budget`.
FiniteGroupTable build_group(FiniteFamily family, std::size_t n, long q, double budget = 1e6);

// Table for an explicit list of elements closed under products.
FiniteGroupTable make_table(FiniteFamily family, const ResidueSpace& space,
                            std::vector<RMatrix> elements);

struct ClassMap {
  std::vector<std::size_t> class_of;         // element -> class
  std::vector<std::size_t> representatives;  // least element of each class
  std::vector<std::size_t> sizes;
  std::vector<std::size_t> inverse_perm;     // class of g^-1
  std::vector<std::size_t> iota_perm;        // class of iota(g)
  bool well_defined = false;                 // both maps respect classes

  std::size_t count() const { return representatives.size(); }
};

ClassMap conjugacy_classes(const FiniteGroupTable& table);

struct ClassInversionRow {
  std::size_t representative = 0;
  std::size_t size = 0;
  std::size_t iota_class = 0;
  std::size_t inverse_class = 0;
  bool pass = false;                  // iota(a) ~ a^-1
  std::optional<RMatrix> conjugator;  // theta-fixed x with x a x^-1 = theta(a)
};

struct ClassInversionReport {
  std::vector<ClassInversionRow> rows;
  bool iota_automorphism = false;
  bool iota_involutive = false;
  bool permutations_equal = false;
  bool multiplier_homomorphism = false;
  bool order_factorizes = false;  // |G| = |mu(G)| |ker mu|
  bool conjugators_requested = false;
  bool conjugators_found = false;
  std::size_t isometry_order = 0;
  std::size_t multiplier_image = 0;

  bool all_pass() const;
};

// Checks iota(a) ~ a^-1 on every class; with `with_conjugators` also
// exhibits a theta-symmetric conjugator (isometric for form families) per
// class by scanning the table in canonical order.
ClassInversionReport verify_class_inversion(const FiniteGroupTable& table, const ClassMap& classes,
                                            bool with_conjugators = true);

}  // namespace dualinv
