#include "dualinv/finite_group.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <set>
#include <utility>

#include "dualinv/involution.hpp"

namespace dualinv {

namespace {

constexpr std::array<std::pair<FiniteFamily, const char*>, 9> kNames{{
    {FiniteFamily::Sp, "Sp"},
    {FiniteFamily::GSp, "GSp"},
    {FiniteFamily::U, "U"},
    {FiniteFamily::GU, "GU"},
    {FiniteFamily::O_plus, "O+"},
    {FiniteFamily::O_minus, "O-"},
    {FiniteFamily::GO_plus, "GO+"},
    {FiniteFamily::GO_minus, "GO-"},
    {FiniteFamily::GL, "GL"},
}};

bool is_unitary(FiniteFamily f) { return f == FiniteFamily::U || f == FiniteFamily::GU; }

ResidueSpace finite_space(FiniteFamily family, std::size_t n, long q) {
  if (!is_prime(q) || q == 2) {
    throw ConfigError("finite groups are built over F_q for odd primes q (got " +
                      std::to_string(q) + ")");
  }
  if (n == 0) throw ConfigError("dimension must be positive");
  const long nonresidue = smallest_nonresidue(q);
  ResidueRing ring = ResidueRing::make_ring(q, 1, is_unitary(family) ? nonresidue : 0);
  RMatrix id = RMatrix::identity(n, ring.zero(), ring.one());
  RMatrix gram = id;
  RMatrix h = id;
  switch (family) {
    case FiniteFamily::Sp:
    case FiniteFamily::GSp:
      if (n % 2) throw ConfigError("symplectic groups need even dimension");
      gram = RMatrix(n, n, ring.zero());
      for (std::size_t i = 0; i < n / 2; ++i) {
        gram(i, i + n / 2) = ring.one();
        gram(i + n / 2, i) = ring.from_int(-1);
        h(i + n / 2, i + n / 2) = ring.from_int(-1);
      }
      return validate_space(ring, gram, -1, Family::symplectic, h);
    case FiniteFamily::U:
    case FiniteFamily::GU:
      return validate_space(ring, gram, 1, Family::hermitian, h);
    case FiniteFamily::O_plus:
    case FiniteFamily::O_minus:
    case FiniteFamily::GO_plus:
    case FiniteFamily::GO_minus: {
      if (n % 2) throw ConfigError("orthogonal groups O+/O- need even dimension");
      gram = RMatrix(n, n, ring.zero());
      for (std::size_t i = 0; i + 1 < n; i += 2) {
        gram(i, i + 1) = gram(i + 1, i) = ring.one();
      }
      if (family == FiniteFamily::O_minus || family == FiniteFamily::GO_minus) {
        // Replace the last hyperbolic plane by the anisotropic x^2 - d y^2.
        gram(n - 2, n - 1) = gram(n - 1, n - 2) = ring.zero();
        gram(n - 2, n - 2) = ring.one();
        gram(n - 1, n - 1) = ring.from_int(-nonresidue);
      }
      return validate_space(ring, gram, 1, Family::orthogonal, h);
    }
    case FiniteFamily::GL:
      return validate_space(ring, gram, 1, Family::general_linear, h);
  }
  throw ConfigError("unknown finite family");
}

using Column = std::vector<QuadResidue>;

QuadResidue pair(const Column& a, const Column& jtau_b) {
  QuadResidue acc = a[0] - a[0];
  for (std::size_t k = 0; k < a.size(); ++k) acc += a[k] * jtau_b[k];
  return acc;
}

std::vector<Column> all_vectors(const ResidueRing& ring, std::size_t n) {
  const std::int64_t s = ring.size();
  std::vector<Column> out;
  std::vector<std::int64_t> digits(n, 0);
  while (true) {
    Column v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = ring.element(digits[i]);
    out.push_back(std::move(v));
    std::size_t t = n;
    while (t > 0 && ++digits[t - 1] == s) digits[--t] = 0;
    if (t == 0) break;
  }
  return out;
}

std::vector<RMatrix> enumerate_elements(const ResidueSpace& space, FiniteFamily family,
                                        double budget) {
  const std::size_t n = space.dim;
  const auto& ring = space.ring;
  auto vectors = all_vectors(ring, n);
  std::vector<RMatrix> out;
  auto emit = [&](const std::vector<std::size_t>& cols) {
    RMatrix g(n, n, ring.zero());
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < n; ++i) g(i, j) = vectors[cols[j]][i];
    out.push_back(std::move(g));
    if (static_cast<double>(out.size()) > budget) {
      throw BudgetError("group order exceeds the budget of " + std::to_string(budget), budget);
    }
  };

  if (family == FiniteFamily::GL) {
    const double total = std::pow(static_cast<double>(vectors.size()), static_cast<double>(n));
    if (total > 64 * budget) {
      throw BudgetError("GL enumeration of " + std::to_string(total) + " matrices exceeds budget",
                        total);
    }
    std::vector<std::size_t> cols(n, 0);
    while (true) {
      RMatrix g(n, n, ring.zero());
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) g(i, j) = vectors[cols[j]][i];
      if (g.is_invertible()) emit(cols);
      std::size_t t = n;
      while (t > 0 && ++cols[t - 1] == vectors.size()) cols[--t] = 0;
      if (t == 0) break;
    }
    return out;
  }

  std::vector<Column> jtau(vectors.size());
  for (std::size_t v = 0; v < vectors.size(); ++v) {
    Column w(n, ring.zero());
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) w[i] += space.gram(i, k) * vectors[v][k].tau();
    jtau[v] = std::move(w);
  }
  std::vector<QuadResidue> mus;
  if (is_similitude_family(family)) {
    for (long m = 1; m < ring.p; ++m) mus.push_back(ring.from_int(m));
  } else {
    mus.push_back(ring.one());
  }
  for (const auto& mu : mus) {
    // Column j must satisfy <c_i, c_j> = mu J_ij for all i <= j.
    std::vector<std::size_t> cols;
    std::function<void()> extend = [&]() {
      const std::size_t j = cols.size();
      if (j == n) {
        emit(cols);
        return;
      }
      for (std::size_t v = 0; v < vectors.size(); ++v) {
        if (!(pair(vectors[v], jtau[v]) == mu * space.gram(j, j))) continue;
        bool ok = true;
        for (std::size_t i = 0; i < j && ok; ++i) {
          ok = pair(vectors[cols[i]], jtau[v]) == mu * space.gram(i, j);
        }
        if (!ok) continue;
        cols.push_back(v);
        extend();
        cols.pop_back();
      }
    };
    extend();
  }
  return out;
}

}  // namespace

std::string to_string(FiniteFamily family) {
  for (const auto& [f, name] : kNames) {
    if (f == family) return name;
  }
  return "unknown";
}

FiniteFamily parse_finite_family(const std::string& name) {
  for (const auto& [f, n] : kNames) {
    if (name == n) return f;
  }
  throw ConfigError("unknown finite group family: " + name);
}

bool is_similitude_family(FiniteFamily family) {
  return family == FiniteFamily::GSp || family == FiniteFamily::GU ||
         family == FiniteFamily::GO_plus || family == FiniteFamily::GO_minus;
}

std::uint64_t FiniteGroupTable::key(const RMatrix& m) const {
  const auto s = static_cast<std::uint64_t>(space.ring.size());
  std::uint64_t k = 0;
  for (const auto& x : m.data()) k = k * s + static_cast<std::uint64_t>(space.ring.index_of(x));
  return k;
}

std::optional<std::size_t> FiniteGroupTable::find(const RMatrix& m) const {
  auto it = lookup.find(key(m));
  if (it == lookup.end()) return std::nullopt;
  return it->second;
}

std::size_t FiniteGroupTable::index_of(const RMatrix& m) const {
  auto i = find(m);
  if (!i) throw std::logic_error(name() + " is not closed: missing " + to_string(m));
  return *i;
}

std::size_t FiniteGroupTable::multiply(std::size_t a, std::size_t b) const {
  return index_of(elements[a] * elements[b]);
}

std::string FiniteGroupTable::name() const {
  const long field = is_unitary(family) ? q * q : q;
  return to_string(family) + std::to_string(n) + "(" + std::to_string(field) + ")";
}

FiniteGroupTable make_table(FiniteFamily family, const ResidueSpace& space,
                            std::vector<RMatrix> elements) {
  FiniteGroupTable t;
  t.family = family;
  t.n = space.dim;
  t.q = space.ring.p;
  t.space = space;
  const double entries = static_cast<double>(space.dim * space.dim);
  if (std::pow(static_cast<double>(space.ring.size()), entries) > 1.8e19) {
    throw BudgetError("matrices are too large to pack into 64-bit keys", 0);
  }
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  t.elements = std::move(elements);
  for (std::size_t i = 0; i < t.elements.size(); ++i) t.lookup.emplace(t.key(t.elements[i]), i);
  t.identity = t.index_of(space.identity());

  for (const auto& g : t.elements) {
    auto cert = require_group(space, g);
    t.multipliers.push_back(cert.multiplier);
    t.inverse_of.push_back(t.index_of(inverse(cert).matrix));
    t.iota_of.push_back(t.index_of(iota_group(space, cert).matrix));
  }

  // Greedy generating set: add the least element outside the current span.
  std::vector<bool> in_span(t.order(), false);
  in_span[t.identity] = true;
  std::size_t spanned = 1;
  for (std::size_t idx = 0; idx < t.order() && spanned < t.order(); ++idx) {
    if (in_span[idx]) continue;
    t.generators.push_back(idx);
    std::fill(in_span.begin(), in_span.end(), false);
    std::vector<std::size_t> frontier{t.identity};
    in_span[t.identity] = true;
    spanned = 1;
    while (!frontier.empty()) {
      std::vector<std::size_t> next;
      for (auto m : frontier) {
        for (auto s : t.generators) {
          auto prod = t.multiply(m, s);
          if (!in_span[prod]) {
            in_span[prod] = true;
            ++spanned;
            next.push_back(prod);
          }
        }
      }
      frontier = std::move(next);
    }
  }
  return t;
}

FiniteGroupTable build_group(FiniteFamily family, std::size_t n, long q, double budget) {
  ResidueSpace space = finite_space(family, n, q);
  return make_table(family, space, enumerate_elements(space, family, budget));
}

ClassMap conjugacy_classes(const FiniteGroupTable& table) {
  const std::size_t none = table.order();
  ClassMap cm;
  cm.class_of.assign(table.order(), none);
  std::vector<RMatrix> gen_inv;
  for (auto s : table.generators) gen_inv.push_back(table.elements[table.inverse_of[s]]);
  for (std::size_t g = 0; g < table.order(); ++g) {
    if (cm.class_of[g] != none) continue;
    const std::size_t c = cm.representatives.size();
    cm.representatives.push_back(g);
    std::size_t size = 1;
    cm.class_of[g] = c;
    std::vector<std::size_t> frontier{g};
    while (!frontier.empty()) {
      std::vector<std::size_t> next;
      for (auto m : frontier) {
        for (std::size_t k = 0; k < table.generators.size(); ++k) {
          const RMatrix& s = table.elements[table.generators[k]];
          auto conj = table.index_of(s * table.elements[m] * gen_inv[k]);
          if (cm.class_of[conj] == none) {
            cm.class_of[conj] = c;
            ++size;
            next.push_back(conj);
          }
        }
      }
      frontier = std::move(next);
    }
    cm.sizes.push_back(size);
  }
  for (auto r : cm.representatives) {
    cm.inverse_perm.push_back(cm.class_of[table.inverse_of[r]]);
    cm.iota_perm.push_back(cm.class_of[table.iota_of[r]]);
  }
  cm.well_defined = true;
  for (std::size_t g = 0; g < table.order(); ++g) {
    const auto c = cm.class_of[g];
    if (cm.class_of[table.inverse_of[g]] != cm.inverse_perm[c] ||
        cm.class_of[table.iota_of[g]] != cm.iota_perm[c]) {
      cm.well_defined = false;
    }
  }
  return cm;
}

bool ClassInversionReport::all_pass() const {
  bool rows_pass = std::all_of(rows.begin(), rows.end(), [](const auto& r) { return r.pass; });
  return rows_pass && iota_automorphism && iota_involutive && permutations_equal &&
         multiplier_homomorphism && order_factorizes &&
         (!conjugators_requested || conjugators_found);
}

ClassInversionReport verify_class_inversion(const FiniteGroupTable& table, const ClassMap& classes,
                                            bool with_conjugators) {
  ClassInversionReport rep;
  const auto& iota = table.iota_of;
  rep.iota_automorphism = iota[table.identity] == table.identity;
  rep.multiplier_homomorphism = true;
  for (std::size_t g = 0; g < table.order(); ++g) {
    for (auto s : table.generators) {
      auto gs = table.multiply(g, s);
      if (iota[gs] != table.multiply(iota[g], iota[s])) rep.iota_automorphism = false;
      if (!(table.multipliers[gs] == table.multipliers[g] * table.multipliers[s])) {
        rep.multiplier_homomorphism = false;
      }
    }
  }
  rep.iota_involutive = true;
  for (std::size_t g = 0; g < table.order(); ++g) {
    if (iota[iota[g]] != g) rep.iota_involutive = false;
  }
  rep.permutations_equal = classes.well_defined && classes.iota_perm == classes.inverse_perm;

  std::set<std::int64_t> image;
  for (const auto& mu : table.multipliers) {
    image.insert(mu.re());
    if (mu == table.space.ring.one()) ++rep.isometry_order;
  }
  rep.multiplier_image = image.size();
  rep.order_factorizes = rep.multiplier_image * rep.isometry_order == table.order();

  rep.conjugators_requested = with_conjugators;
  rep.conjugators_found = true;
  const ConjugatorScope scope = table.space.is_general_linear() ? ConjugatorScope::similitudes
                                                                : ConjugatorScope::isometries;
  for (std::size_t c = 0; c < classes.count(); ++c) {
    ClassInversionRow row;
    row.representative = classes.representatives[c];
    row.size = classes.sizes[c];
    row.iota_class = classes.iota_perm[c];
    row.inverse_class = classes.inverse_perm[c];
    row.pass = row.iota_class == row.inverse_class;
    if (with_conjugators) {
      const RMatrix& a = table.elements[row.representative];
      GroupElem<QuadResidue> elem{a, table.multipliers[row.representative]};
      row.conjugator = find_symmetric_conjugator(table.space, elem, table.elements, scope).conjugator;
      if (!row.conjugator) rep.conjugators_found = false;
    }
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

}  // namespace dualinv
