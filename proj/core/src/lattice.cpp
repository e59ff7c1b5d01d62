#include "dualinv/lattice.hpp"

#include <algorithm>
#include <cmath>

#include "dualinv/cayley.hpp"
#include "dualinv/involution.hpp"

namespace dualinv {

namespace {

bool integral(const mpq_class& x, long p) { return x.get_den() % p != 0; }

long min_valuation(const QVec& v, long p) {
  long best = 0;
  bool seen = false;
  for (const auto& x : v) {
    if (x == 0) continue;
    long val = valuation(x, p).value();
    if (!seen || val < best) best = val;
    seen = true;
  }
  return best;
}

template <class It>
std::vector<std::string> sample_differences(It first1, It last1, It first2, It last2,
                                            const std::string& label) {
  std::vector<RMatrix> diff;
  std::set_difference(first1, last1, first2, last2, std::back_inserter(diff));
  std::vector<std::string> out;
  for (std::size_t i = 0; i < diff.size() && i < 3; ++i) out.push_back(label + to_string(diff[i]));
  return out;
}

LevelComparison compare_level(const ResidueSpace& space, const LatticeBasis& lattice, int level,
                              GroupScope scope, double budget) {
  LevelComparison cmp;
  auto lie = lattice_residues(space, lattice, level, budget);
  cmp.lie_count = lie.size();
  std::vector<RMatrix> images;
  images.reserve(lie.size());
  for (const auto& x : lie) {
    auto cert = certify_lie(space, x);
    if (!cert || !in_cayley_domain(space, *cert)) {
      cmp.counterexamples.push_back("outside the Cayley domain: " + to_string(x));
      continue;
    }
    images.push_back(cayley(space, *cert).matrix);
  }
  std::sort(images.begin(), images.end());
  const std::size_t raw = images.size();
  images.erase(std::unique(images.begin(), images.end()), images.end());
  cmp.image_count = images.size();
  cmp.injective = raw == images.size() && raw == lie.size();
  auto members = congruence_members(space, level, scope, budget);
  cmp.member_count = members.size();
  cmp.images_equal = images == members;
  if (!cmp.images_equal) {
    auto a = sample_differences(images.begin(), images.end(), members.begin(), members.end(),
                                "image outside the congruence group: ");
    auto b = sample_differences(members.begin(), members.end(), images.begin(), images.end(),
                                "member missed by the Cayley map: ");
    cmp.counterexamples.insert(cmp.counterexamples.end(), a.begin(), a.end());
    cmp.counterexamples.insert(cmp.counterexamples.end(), b.begin(), b.end());
  }
  return cmp;
}

}  // namespace

LatticeBasis::LatticeBasis(std::vector<QVec> generators, std::size_t ambient_dim, long p)
    : p_(p), dim_(ambient_dim), columns_(hermite_columns(std::move(generators), ambient_dim, p)) {}

bool LatticeBasis::contains(const QVec& v) const {
  auto gens = columns_;
  gens.push_back(v);
  return hermite_columns(std::move(gens), dim_, p_) == columns_;
}

bool LatticeBasis::contains(const LatticeBasis& other) const { return *this + other == *this; }

bool LatticeBasis::is_integral() const {
  return std::all_of(columns_.begin(), columns_.end(), [&](const QVec& c) {
    return std::all_of(c.begin(), c.end(), [&](const mpq_class& x) { return integral(x, p_); });
  });
}

LatticeBasis LatticeBasis::operator+(const LatticeBasis& other) const {
  if (other.dim_ != dim_ || other.p_ != p_) throw std::invalid_argument("lattice ambient mismatch");
  auto gens = columns_;
  gens.insert(gens.end(), other.columns_.begin(), other.columns_.end());
  return {std::move(gens), dim_, p_};
}

LatticeBasis LatticeBasis::intersect(const LatticeBasis& other) const {
  if (other.dim_ != dim_ || other.p_ != p_) throw std::invalid_argument("lattice ambient mismatch");
  // Integral kernel of [A | -B]: pairs (y, z) with A y = B z.
  std::vector<QVec> juxtaposed = columns_;
  for (auto col : other.columns_) {
    for (auto& x : col) x = -x;
    juxtaposed.push_back(std::move(col));
  }
  std::vector<QVec> gens;
  for (const auto& y : integral_kernel(juxtaposed, dim_, p_)) {
    QVec v(dim_, 0);
    for (std::size_t j = 0; j < columns_.size(); ++j) {
      if (y[j] == 0) continue;
      for (std::size_t i = 0; i < dim_; ++i) v[i] += y[j] * columns_[j][i];
    }
    gens.push_back(std::move(v));
  }
  return {std::move(gens), dim_, p_};
}

LatticeBasis LatticeBasis::scaled(const mpq_class& factor) const {
  auto gens = columns_;
  for (auto& c : gens)
    for (auto& x : c) x *= factor;
  return {std::move(gens), dim_, p_};
}

std::string LatticeBasis::to_string() const {
  std::string out = "[";
  for (std::size_t j = 0; j < columns_.size(); ++j) {
    if (j) out += ",";
    out += "[";
    for (std::size_t i = 0; i < dim_; ++i) {
      if (i) out += ",";
      out += columns_[j][i].get_str();
    }
    out += "]";
  }
  return out + "]";
}

LatticeBasis matrix_lattice(const ExactSpace& space, const std::vector<QMatrix>& generators) {
  const bool inert = space.ring.is_inert();
  const std::size_t m = space.dim * space.dim * static_cast<std::size_t>(space.ring.degree());
  std::vector<QVec> gens;
  for (const auto& g : generators) gens.push_back(flatten(g, inert));
  return {std::move(gens), m, space.ring.p};
}

std::vector<QMatrix> lattice_matrices(const ExactSpace& space, const LatticeBasis& lattice) {
  std::vector<QMatrix> out;
  for (const auto& c : lattice.columns()) out.push_back(unflatten(c, space.dim, space.ring.u));
  return out;
}

LatticeBasis map_lattice(const ExactSpace& space, const LatticeBasis& lattice,
                         const std::function<QMatrix(const QMatrix&)>& map) {
  std::vector<QMatrix> images;
  for (const auto& b : lattice_matrices(space, lattice)) images.push_back(map(b));
  return matrix_lattice(space, images);
}

StandardLattices standard_lattices(const ExactSpace& space) {
  const long p = space.ring.p;
  const std::size_t d = static_cast<std::size_t>(space.ring.degree());
  auto unit_basis = [&](std::size_t m) {
    std::vector<QVec> gens(m, QVec(m, 0));
    for (std::size_t i = 0; i < m; ++i) gens[i][i] = 1;
    return LatticeBasis(std::move(gens), m, p);
  };
  StandardLattices out;
  out.vectors = unit_basis(space.dim * d);
  out.order = unit_basis(space.dim * space.dim * d);
  out.similitude = matrix_lattice(space, space.similitude_lattice);
  out.isometry = matrix_lattice(space, space.isometry_lattice);

  bool seen = false;
  for (const auto& x : space.gram.data()) {
    for (const auto& part : {x.re(), x.im()}) {
      if (part == 0) continue;
      long v = valuation(part, p).value();
      if (!seen || v < out.form_valuation) out.form_valuation = v;
      seen = true;
    }
  }
  // h(L) = L iff H and H^-1 = tau(H) are integral.
  auto integral_matrix = [&](const QMatrix& m) {
    return std::all_of(m.data().begin(), m.data().end(), [&](const QuadRational& x) {
      return integral(x.re(), p) && integral(x.im(), p);
    });
  };
  out.h_stable = integral_matrix(space.anti_unitary) && integral_matrix(space.anti_unitary_inv);
  return out;
}

LatticeBasis lie_lattice(const ExactSpace& space) {
  return matrix_lattice(space, space.similitude_lattice);
}

LatticeBasis lattice_of_x(const ExactSpace& space, const QMatrix& x) {
  auto inv = x.inverse();
  if (!inv) throw DomainError("lattice_of_x needs an invertible matrix");
  LatticeBasis lie = lie_lattice(space);
  return adjoint_lattice(space, *inv, lie).intersect(lie);
}

LatticeBasis theta_lattice(const ExactSpace& space, const LatticeBasis& lattice) {
  return map_lattice(space, lattice,
                     [&](const QMatrix& x) { return theta_lie(space, require_lie(space, x)).matrix; });
}

LatticeBasis adjoint_lattice(const ExactSpace& space, const QMatrix& x, const LatticeBasis& lattice) {
  auto inv = x.inverse();
  if (!inv) throw DomainError("Ad(x) needs an invertible matrix");
  return map_lattice(space, lattice, [&](const QMatrix& y) { return x * y * *inv; });
}

LatticeBasis scale_lattice(const LatticeBasis& lattice, long k) {
  mpz_class pk;
  mpz_ui_pow_ui(pk.get_mpz_t(), static_cast<unsigned long>(lattice.prime()),
                static_cast<unsigned long>(k < 0 ? -k : k));
  return lattice.scaled(k < 0 ? mpq_class(1) / mpq_class(pk) : mpq_class(pk));
}

std::vector<RMatrix> lattice_residues(const ResidueSpace& space, const LatticeBasis& lattice,
                                      int level, double budget) {
  const long p = space.ring.p;
  const int n_prec = space.ring.precision;
  const std::int64_t modulus = space.ring.modulus;
  LatticeBasis scaled = scale_lattice(lattice, level);
  if (!scaled.is_integral()) throw DomainError("lattice is not integral at this level");

  std::vector<ZVec> gens;
  ZVec range;
  double count = 1;
  for (const auto& c : scaled.columns()) {
    long v = std::min<long>(min_valuation(c, p), n_prec);
    ZVec r(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) r[i] = reduce_mod(c[i], p, modulus);
    gens.push_back(std::move(r));
    range.push_back(checked_pow(p, n_prec - static_cast<int>(v)));
    count *= static_cast<double>(range.back());
  }
  if (count > budget) {
    throw BudgetError("lattice enumeration of " + std::to_string(count) + " residues exceeds budget",
                      count);
  }
  const std::size_t m = scaled.ambient_dim();
  std::vector<ZVec> found;
  found.reserve(static_cast<std::size_t>(count));
  ZVec counter(gens.size(), 0), acc(m, 0);
  while (true) {
    found.push_back(acc);
    std::size_t t = 0;
    for (; t < gens.size(); ++t) {
      // Advance digit t; when it wraps, the accumulated multiple of gens[t]
      // is range[t] * gens[t] = 0 mod p^N, so acc simply continues.
      for (std::size_t i = 0; i < m; ++i) acc[i] = (acc[i] + gens[t][i]) % modulus;
      if (++counter[t] < range[t]) break;
      counter[t] = 0;
    }
    if (t == gens.size()) break;
  }
  std::sort(found.begin(), found.end());
  found.erase(std::unique(found.begin(), found.end()), found.end());
  std::vector<RMatrix> out;
  out.reserve(found.size());
  for (const auto& f : found) out.push_back(unflatten(f, space.dim, space.ring));
  return out;
}

std::vector<RMatrix> congruence_members(const ResidueSpace& space, int level, GroupScope scope,
                                        double budget) {
  const int n_prec = space.ring.precision;
  if (level < 1 || level >= n_prec) {
    throw ConfigError("congruence level must satisfy 1 <= k < N (k=" + std::to_string(level) +
                      ", N=" + std::to_string(n_prec) + ")");
  }
  const std::size_t m = space.dim * space.dim * static_cast<std::size_t>(space.ring.degree());
  const std::int64_t range = checked_pow(space.ring.p, n_prec - level);
  const std::int64_t pk = checked_pow(space.ring.p, level);
  double count = std::pow(static_cast<double>(range), static_cast<double>(m));
  if (count > budget) {
    throw BudgetError("congruence enumeration of " + std::to_string(count) +
                          " residues exceeds budget",
                      count);
  }
  std::vector<RMatrix> out;
  ZVec y(m, 0);
  const RMatrix one = space.identity();
  while (true) {
    ZVec scaled(m);
    for (std::size_t i = 0; i < m; ++i) scaled[i] = y[i] * pk;
    RMatrix g = one + unflatten(scaled, space.dim, space.ring);
    if (auto cert = certify_group(space, g)) {
      if (scope == GroupScope::similitudes || is_isometry(space, *cert)) out.push_back(g);
    }
    std::size_t t = 0;
    while (t < m && ++y[t] == range) y[t++] = 0;
    if (t == m) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

CayleyLevelReport check_cayley_level(const ExactSpace& space, int level, int precision,
                                     double budget) {
  if (level < 1 || level >= precision) {
    throw ConfigError("level check needs 1 <= k < N (k=" + std::to_string(level) +
                      ", N=" + std::to_string(precision) + ")");
  }
  CayleyLevelReport report;
  report.level = level;
  report.precision = precision;
  const ResidueSpace rs = reduce_space(space, precision);
  const StandardLattices lat = standard_lattices(space);

  report.similitude = compare_level(rs, lat.similitude, level, GroupScope::similitudes, budget);
  if (space.is_general_linear()) {
    report.isometry.applicable = false;
  } else {
    report.isometry = compare_level(rs, lat.isometry, level, GroupScope::isometries, budget);
  }

  report.alpha_integral = std::all_of(
      space.similitude_lattice.begin(), space.similitude_lattice.end(), [&](const QMatrix& b) {
        auto a = lie_alpha(space, b);
        return a && integral(a->re(), space.ring.p) && integral(a->im(), space.ring.p);
      });
  const std::int64_t pk = checked_pow(space.ring.p, level);
  report.alpha_in_level = true;
  for (const auto& x : lattice_residues(rs, lat.similitude, level, budget)) {
    auto a = lie_alpha(rs, x);
    if (!a || a->re() % pk != 0) {
      report.alpha_in_level = false;
      report.counterexamples.push_back("alpha not in p^k o_F: " + to_string(x));
      break;
    }
  }
  report.multiplier_congruent = true;
  for (const auto& g : congruence_members(rs, level, GroupScope::similitudes, budget)) {
    auto mu = similitude_multiplier(rs, g);
    if (!mu || (mu->re() - 1) % pk != 0) {
      report.multiplier_congruent = false;
      report.counterexamples.push_back("multiplier not 1 mod p^k: " + to_string(g));
      break;
    }
  }
  for (const auto* cmp : {&report.similitude, &report.isometry}) {
    report.counterexamples.insert(report.counterexamples.end(), cmp->counterexamples.begin(),
                                  cmp->counterexamples.end());
  }
  return report;
}

}  // namespace dualinv
