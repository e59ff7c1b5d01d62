#include "dualinv/local_linalg.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

#include "dualinv/errors.hpp"
#include "dualinv/valuation.hpp"

namespace dualinv {

mpq_class canonical_mod(const mpq_class& x, long p, long v) {
  if (x == 0) return 0;
  long e = std::max(valuation(x.get_den(), p).value(), -v);
  mpz_class pe, pve;
  mpz_ui_pow_ui(pe.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(e));
  mpz_ui_pow_ui(pve.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(v + e));
  mpz_class s = x.get_den() / pe;
  mpz_class sinv;
  if (mpz_invert(sinv.get_mpz_t(), s.get_mpz_t(), pve.get_mpz_t()) == 0) {
    if (pve == 1) return 0;
    throw std::logic_error("canonical_mod: unit part not invertible");
  }
  mpz_class t = (x.get_num() * sinv) % pve;
  if (t < 0) t += pve;
  mpq_class r(t, pe);
  r.canonicalize();
  return r;
}

namespace {

long val_of(const mpq_class& x, long p) { return valuation(x, p).value(); }

mpq_class ppow(long p, long v) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(v < 0 ? -v : v));
  return v < 0 ? mpq_class(1) / mpq_class(r) : mpq_class(r);
}

// Index among [from, cols.size()) of the column with least valuation in
// `row`, or -1 if all those entries vanish.
long min_valuation_column(const std::vector<QVec>& cols, std::size_t row, std::size_t from,
                          long p) {
  long best = -1;
  long best_val = 0;
  for (std::size_t j = from; j < cols.size(); ++j) {
    if (cols[j][row] == 0) continue;
    long v = val_of(cols[j][row], p);
    if (best < 0 || v < best_val) {
      best = static_cast<long>(j);
      best_val = v;
    }
  }
  return best;
}

void axpy(QVec& y, const mpq_class& a, const QVec& x) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] -= a * x[i];
}

}  // namespace

std::vector<QVec> hermite_columns(std::vector<QVec> gens, std::size_t dim, long p) {
  for (auto& g : gens) {
    if (g.size() != dim) throw std::invalid_argument("generator dimension mismatch");
    for (auto& x : g) x.canonicalize();
  }
  std::size_t c = 0;
  for (std::size_t row = 0; row < dim && c < gens.size(); ++row) {
    long j = min_valuation_column(gens, row, c, p);
    if (j < 0) continue;
    std::swap(gens[c], gens[static_cast<std::size_t>(j)]);
    long v = val_of(gens[c][row], p);
    mpq_class scale = ppow(p, v) / gens[c][row];
    for (auto& x : gens[c]) x *= scale;
    const mpq_class pivot = gens[c][row];
    for (std::size_t k = c + 1; k < gens.size(); ++k) {
      if (gens[k][row] == 0) continue;
      mpq_class q = gens[k][row] / pivot;
      axpy(gens[k], q, gens[c]);
    }
    for (std::size_t k = 0; k < c; ++k) {
      mpq_class rep = canonical_mod(gens[k][row], p, v);
      mpq_class q = (gens[k][row] - rep) / pivot;
      if (q != 0) axpy(gens[k], q, gens[c]);
    }
    ++c;
  }
  gens.resize(c);
  return gens;
}

std::vector<QVec> integral_kernel(const std::vector<QVec>& columns, std::size_t rows, long p) {
  const std::size_t k = columns.size();
  std::vector<QVec> a = columns;
  std::vector<QVec> u(k, QVec(k, 0));
  for (std::size_t j = 0; j < k; ++j) {
    if (a[j].size() != rows) throw std::invalid_argument("column length mismatch");
    u[j][j] = 1;
  }
  std::size_t c = 0;
  for (std::size_t row = 0; row < rows && c < k; ++row) {
    long j = min_valuation_column(a, row, c, p);
    if (j < 0) continue;
    std::swap(a[c], a[static_cast<std::size_t>(j)]);
    std::swap(u[c], u[static_cast<std::size_t>(j)]);
    for (std::size_t t = c + 1; t < k; ++t) {
      if (a[t][row] == 0) continue;
      mpq_class q = a[t][row] / a[c][row];
      axpy(a[t], q, a[c]);
      axpy(u[t], q, u[c]);
    }
    ++c;
  }
  return {u.begin() + static_cast<long>(c), u.end()};
}

std::optional<QVec> solve_in_span(const std::vector<QVec>& basis, const QVec& target) {
  const std::size_t n = basis.size();
  const std::size_t m = target.size();
  // Row-reduce the augmented system [B | t] over Q.
  std::vector<QVec> rows(m, QVec(n + 1, 0));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) rows[i][j] = basis[j][i];
    rows[i][n] = target[i];
  }
  std::vector<long> pivot_row_of_col(n, -1);
  std::size_t r = 0;
  for (std::size_t col = 0; col < n && r < m; ++col) {
    std::size_t piv = r;
    while (piv < m && rows[piv][col] == 0) ++piv;
    if (piv == m) continue;
    std::swap(rows[piv], rows[r]);
    mpq_class inv = 1 / rows[r][col];
    for (auto& x : rows[r]) x *= inv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == r || rows[i][col] == 0) continue;
      mpq_class f = rows[i][col];
      for (std::size_t j = 0; j <= n; ++j) rows[i][j] -= f * rows[r][j];
    }
    pivot_row_of_col[col] = static_cast<long>(r);
    ++r;
  }
  for (std::size_t i = r; i < m; ++i) {
    if (rows[i][n] != 0) return std::nullopt;
  }
  QVec sol(n, 0);
  for (std::size_t col = 0; col < n; ++col) {
    if (pivot_row_of_col[col] >= 0) sol[col] = rows[static_cast<std::size_t>(pivot_row_of_col[col])][n];
  }
  return sol;
}

namespace {

std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t m) {
  return static_cast<std::int64_t>((static_cast<__int128>(a) * b) % m);
}

std::int64_t modn(std::int64_t v, std::int64_t m) {
  v %= m;
  return v < 0 ? v + m : v;
}

int residue_val(std::int64_t x, long p, int cap) {
  if (x == 0) return cap;
  int v = 0;
  while (x % p == 0) {
    x /= p;
    ++v;
  }
  return v;
}

std::int64_t invmod(std::int64_t a, std::int64_t m) {
  std::int64_t g = m, x = 0, x1 = 1, a1 = modn(a, m);
  while (a1 != 0) {
    std::int64_t q = g / a1;
    std::int64_t t = g - q * a1;
    g = a1;
    a1 = t;
    t = x - q * x1;
    x = x1;
    x1 = t;
  }
  if (g != 1) throw std::logic_error("invmod of non-unit");
  return modn(x, m);
}

}  // namespace

ModularSystem::ModularSystem(const std::vector<ZVec>& rows, std::size_t unknowns, const ZVec& rhs,
                             long p, int precision)
    : p_(p), precision_(precision), modulus_(checked_pow(p, precision)), unknowns_(unknowns) {
  const std::size_t r = rows.size();
  if (rhs.size() != r) throw std::invalid_argument("rhs length mismatch");
  std::vector<ZVec> a(r);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != unknowns) throw std::invalid_argument("row length mismatch");
    a[i].resize(unknowns);
    for (std::size_t j = 0; j < unknowns; ++j) a[i][j] = modn(rows[i][j], modulus_);
  }
  ZVec b(r);
  for (std::size_t i = 0; i < r; ++i) b[i] = modn(rhs[i], modulus_);
  column_transform_.assign(unknowns, ZVec(unknowns, 0));
  for (std::size_t j = 0; j < unknowns; ++j) column_transform_[j][j] = 1;
  auto& q = column_transform_;

  std::size_t t = 0;
  for (; t < std::min(r, unknowns); ++t) {
    int best = precision_;
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = t; i < r; ++i) {
      for (std::size_t j = t; j < unknowns; ++j) {
        int v = residue_val(a[i][j], p_, precision_);
        if (v < best) {
          best = v;
          bi = i;
          bj = j;
        }
      }
    }
    if (best >= precision_) break;
    std::swap(a[t], a[bi]);
    std::swap(b[t], b[bi]);
    if (bj != t) {
      for (auto& row : a) std::swap(row[t], row[bj]);
      for (auto& row : q) std::swap(row[t], row[bj]);
    }
    // Normalise the pivot to p^best.
    std::int64_t pv = checked_pow(p_, best);
    std::int64_t unit = a[t][t] / pv;
    std::int64_t uinv = invmod(unit, modulus_);
    for (auto& x : a[t]) x = mulmod(x, uinv, modulus_);
    b[t] = mulmod(b[t], uinv, modulus_);
    for (std::size_t i = 0; i < r; ++i) {
      if (i == t || a[i][t] == 0) continue;
      std::int64_t f = a[i][t] / pv;
      for (std::size_t j = t; j < unknowns; ++j) a[i][j] = modn(a[i][j] - mulmod(f, a[t][j], modulus_), modulus_);
      b[i] = modn(b[i] - mulmod(f, b[t], modulus_), modulus_);
    }
    for (std::size_t j = t + 1; j < unknowns; ++j) {
      if (a[t][j] == 0) continue;
      std::int64_t f = a[t][j] / pv;
      for (std::size_t i = 0; i < r; ++i) a[i][j] = modn(a[i][j] - mulmod(f, a[i][t], modulus_), modulus_);
      for (auto& row : q) row[j] = modn(row[j] - mulmod(f, row[t], modulus_), modulus_);
    }
    pivot_val_.push_back(best);
  }
  const std::size_t rank = pivot_val_.size();
  particular_.assign(unknowns, 0);
  for (std::size_t i = 0; i < r; ++i) {
    if (i < rank) {
      int v = pivot_val_[i];
      if (residue_val(b[i], p_, precision_) < v) {
        solvable_ = false;
        return;
      }
      particular_[i] = b[i] / checked_pow(p_, v);
    } else if (b[i] != 0) {
      solvable_ = false;
      return;
    }
  }
}

double ModularSystem::solution_count() const {
  if (!solvable_) return 0;
  double count = 1;
  for (int v : pivot_val_) count *= std::pow(static_cast<double>(p_), v);
  for (std::size_t j = pivot_val_.size(); j < unknowns_; ++j) count *= static_cast<double>(modulus_);
  return count;
}

void ModularSystem::enumerate(const std::function<bool(const ZVec&)>& visit, double budget) const {
  if (!solvable_) return;
  double count = solution_count();
  if (count > budget) {
    throw BudgetError("solution set of " + std::to_string(count) + " elements exceeds budget", count);
  }
  const std::size_t rank = pivot_val_.size();
  // z_t = particular_t + s_t * p^(N - v_t) for pivots, z_j free otherwise.
  ZVec step(unknowns_), range(unknowns_);
  for (std::size_t t = 0; t < unknowns_; ++t) {
    if (t < rank) {
      step[t] = checked_pow(p_, precision_ - pivot_val_[t]);
      range[t] = checked_pow(p_, pivot_val_[t]);
    } else {
      step[t] = 1;
      range[t] = modulus_;
    }
  }
  ZVec counter(unknowns_, 0), z(unknowns_), y(unknowns_);
  while (true) {
    for (std::size_t t = 0; t < unknowns_; ++t) {
      z[t] = modn(particular_[t] + counter[t] * step[t], modulus_);
    }
    for (std::size_t i = 0; i < unknowns_; ++i) {
      std::int64_t acc = 0;
      for (std::size_t j = 0; j < unknowns_; ++j) {
        if (z[j] != 0) acc = (acc + mulmod(column_transform_[i][j], z[j], modulus_)) % modulus_;
      }
      y[i] = acc;
    }
    if (!visit(y)) return;
    std::size_t t = 0;
    while (t < unknowns_ && ++counter[t] == range[t]) counter[t++] = 0;
    if (t == unknowns_) return;
  }
}

}  // namespace dualinv
