#include "dualinv/matrix.hpp"

#include <cctype>
#include <sstream>

namespace dualinv {

QMatrix to_exact_lift(const RMatrix& m) {
  QMatrix r(m.rows(), m.cols(), QuadRational());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = to_exact_lift(m(i, j));
  return r;
}

RMatrix reduce_mod(const QMatrix& m, const ResidueRing& ring) {
  RMatrix r(m.rows(), m.cols(), ring.zero());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = reduce_mod(m(i, j), ring);
  return r;
}

namespace {

template <class M>
std::string matrix_text(const M& m) {
  std::string out = "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i) out += ",";
    out += "[";
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out += ",";
      out += to_string(m(i, j));
    }
    out += "]";
  }
  return out + "]";
}

std::vector<std::vector<std::string>> split_matrix_text(const std::string& raw) {
  std::string text;
  for (char c : raw) {
    if (!std::isspace(static_cast<unsigned char>(c))) text += c;
  }
  if (text.size() < 4 || text.front() != '[' || text.back() != ']') {
    throw std::invalid_argument("bad matrix text: " + raw);
  }
  std::vector<std::vector<std::string>> rows;
  std::size_t i = 1;
  while (i < text.size() - 1) {
    if (text[i] == ',') {
      ++i;
      continue;
    }
    if (text[i] != '[') throw std::invalid_argument("bad matrix text: " + raw);
    std::size_t close = text.find(']', i);
    if (close == std::string::npos) throw std::invalid_argument("bad matrix text: " + raw);
    std::vector<std::string> row;
    std::stringstream ss(text.substr(i + 1, close - i - 1));
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(cell);
    rows.push_back(row);
    i = close + 1;
  }
  for (const auto& r : rows) {
    if (r.size() != rows[0].size()) throw std::invalid_argument("ragged matrix text: " + raw);
  }
  return rows;
}

}  // namespace

std::string to_string(const QMatrix& m) { return matrix_text(m); }
std::string to_string(const RMatrix& m) { return matrix_text(m); }

QMatrix parse_qmatrix(const std::string& text, long u) {
  auto cells = split_matrix_text(text);
  QMatrix m(cells.size(), cells[0].size(), QuadRational());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = parse_quad_rational(cells[i][j], u);
  return m;
}

RMatrix parse_rmatrix(const std::string& text, const ResidueRing& ring) {
  auto cells = split_matrix_text(text);
  RMatrix m(cells.size(), cells[0].size(), ring.zero());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = parse_quad_residue(cells[i][j], ring);
  return m;
}

std::vector<mpq_class> flatten(const QMatrix& m, bool inert) {
  std::vector<mpq_class> out;
  out.reserve(m.data().size() * (inert ? 2 : 1));
  for (const auto& x : m.data()) {
    out.push_back(x.re());
    if (inert) out.push_back(x.im());
  }
  return out;
}

QMatrix unflatten(const std::vector<mpq_class>& coords, std::size_t n, long u) {
  const std::size_t d = u != 0 ? 2 : 1;
  if (coords.size() != n * n * d) throw std::invalid_argument("coordinate length mismatch");
  QMatrix m(n, n, QuadRational());
  for (std::size_t k = 0; k < n * n; ++k) {
    m(k / n, k % n) = d == 2 ? QuadRational(coords[2 * k], coords[2 * k + 1], u) : QuadRational(coords[k]);
  }
  return m;
}

std::vector<std::int64_t> flatten(const RMatrix& m, bool inert) {
  std::vector<std::int64_t> out;
  out.reserve(m.data().size() * (inert ? 2 : 1));
  for (const auto& x : m.data()) {
    out.push_back(x.re());
    if (inert) out.push_back(x.im());
  }
  return out;
}

RMatrix unflatten(const std::vector<std::int64_t>& coords, std::size_t n, const ResidueRing& ring) {
  const std::size_t d = static_cast<std::size_t>(ring.degree());
  if (coords.size() != n * n * d) throw std::invalid_argument("coordinate length mismatch");
  RMatrix m(n, n, ring.zero());
  for (std::size_t k = 0; k < n * n; ++k) {
    m(k / n, k % n) = d == 2 ? ring.make(coords[2 * k], coords[2 * k + 1]) : ring.make(coords[k], 0);
  }
  return m;
}

}  // namespace dualinv
