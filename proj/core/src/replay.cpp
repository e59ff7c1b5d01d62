#include "dualinv/replay.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include "json.hpp"
#include <regex>
#include <sstream>

#include "dualinv/cayley.hpp"
#include "dualinv/decomposition.hpp"
#include "dualinv/finite_group.hpp"
#include "dualinv/involution.hpp"
#include "dualinv/lattice.hpp"

namespace dualinv {

namespace {

using json = nlohmann::ordered_json;
using Outcome = std::optional<std::string>;

// First failing condition wins; later checks are skipped.
class Conditions {
 public:
  Conditions& require(bool ok, const std::string& what) {
    if (!ok && !failure_) failure_ = what;
    return *this;
  }
  bool failed() const { return failure_.has_value(); }
  Outcome result() const { return failure_; }

 private:
  Outcome failure_;
};

QMatrix mat(const CheckEnv& env, const Inputs& in, const std::string& key) {
  return parse_qmatrix(in.at(key), env.space.ring.u);
}
GroupElem<QuadRational> grp(const CheckEnv& env, const Inputs& in, const std::string& key) {
  return require_group(env.space, mat(env, in, key));
}
LieElem<QuadRational> lie(const CheckEnv& env, const Inputs& in, const std::string& key) {
  return require_lie(env.space, mat(env, in, key));
}
QuadRational scal(const CheckEnv& env, const Inputs& in, const std::string& key) {
  return parse_quad_rational(in.at(key), env.space.ring.u);
}
QMatrix inv(const QMatrix& m) {
  auto i = m.inverse();
  if (!i) throw DomainError("singular matrix " + to_string(m));
  return *i;
}
QMatrix bracket(const QMatrix& x, const QMatrix& y) { return x * y - y * x; }

bool always(const ExactSpace&) { return true; }
bool has_form(const ExactSpace& s) { return !s.is_general_linear(); }

std::vector<SampledCheck> build_registry() {
  std::vector<SampledCheck> r;
  const auto add = [&](std::string name, std::string suite,
                       std::function<bool(const ExactSpace&)> applies, InputSampler sample,
                       Verifier verify) {
    r.push_back({std::move(name), std::move(suite), std::move(applies), std::move(sample),
                 std::move(verify)});
  };

  // ---- identities of the form, star, mu and alpha ----
  add("star-anti-involution", "identity", always,
      [](Sampler& s, const CheckEnv& e) {
        QuadRational c = e.space.is_general_linear() ? QuadRational(s.rational())
                                                     : s.scalar(e.space.ring);
        return Inputs{{"a", to_string(s.matrix(e.space))},
                      {"b", to_string(s.matrix(e.space))},
                      {"s", to_string(c)}};
      },
      [](const CheckEnv& e, const Inputs& in) {
        const auto& sp = e.space;
        QMatrix a = mat(e, in, "a"), b = mat(e, in, "b");
        QuadRational c = scal(e, in, "s");
        return Conditions()
            .require(star(sp, a * c) == star(sp, a) * c.tau(), "(s a)* != tau(s) a*")
            .require(star(sp, a * b) == star(sp, b) * star(sp, a), "(ab)* != b* a*")
            .require(star(sp, star(sp, a)) == a, "(a*)* != a")
            .result();
      });

  add("inner-product", "identity", has_form,
      [](Sampler& s, const CheckEnv& e) {
        return Inputs{{"a", to_string(s.matrix(e.space))},
                      {"u", to_string(s.vector(e.space))},
                      {"v", to_string(s.vector(e.space))}};
      },
      [](const CheckEnv& e, const Inputs& in) {
        const auto& sp = e.space;
        QMatrix a = mat(e, in, "a"), u = mat(e, in, "u"), v = mat(e, in, "v");
        QuadRational eps(sp.epsilon);
        return Conditions()
            .require(inner(sp, u, v) == eps * inner(sp, v, u).tau(), "<u,v> != eps tau(<v,u>)")
            .require(inner(sp, a * u, v) == inner(sp, u, star(sp, a) * v), "<au,v> != <u,a*v>")
            .result();
      });

  add("multiplier-homomorphism", "identity", always,
      [](Sampler& s, const CheckEnv& e) {
        return Inputs{{"g", to_string(s.group(e.space).matrix)},
                      {"h", to_string(s.group(e.space).matrix)}};
      },
      [](const CheckEnv& e, const Inputs& in) {
        auto g = grp(e, in, "g"), h = grp(e, in, "h");
        auto gh = similitude_multiplier(e.space, g.matrix * h.matrix);
        auto gi = similitude_multiplier(e.space, inv(g.matrix));
        return Conditions()
            .require(gh.has_value() && *gh == g.multiplier * h.multiplier, "mu(gh) != mu(g) mu(h)")
            .require(g.multiplier.in_base_field(), "mu(g) is not tau-fixed")
            .require(gi.has_value() && *gi == g.multiplier.inverse(), "mu(g^-1) != mu(g)^-1")
            .result();
      });

  add("form-similitude", "identity", has_form,
      [](Sampler& s, const CheckEnv& e) {
        return Inputs{{"g", to_string(s.group(e.space).matrix)},
                      {"u", to_string(s.vector(e.space))},
                      {"v", to_string(s.vector(e.space))}};
      },
      [](const CheckEnv& e, const Inputs& in) {
        auto g = grp(e, in, "g");
        QMatrix u = mat(e, in, "u"), v = mat(e, in, "v");
        return Conditions()
            .require(inner(e.space, g.matrix * u, g.matrix * v) == g.multiplier * inner(e.space, u, v),
                     "<gu,gv> != mu(g) <u,v>")
            .result();
      });

  add("alpha-additive", "identity", always,
      [](Sampler& s, const CheckEnv& e) {
        return Inputs{{"X", to_string(s.lie(e.space).matrix)},
                      {"Y", to_string(s.lie(e.space).matrix)},
                      {"s", to_string(QuadRational(s.rational()))}};
      },
      [](const CheckEnv& e, const Inputs& in) {
        auto x = lie(e, in, "X"), y = lie(e, in, "Y");
        QuadRational c = scal(e, in, "s");
        auto sum = lie_alpha(e.space, x.matrix + y.matrix);
        auto scaled = lie_alpha(e.space, x.matrix * c);
        return Conditions()
            .require(sum.has_value() && *sum == x.alpha + y.alpha, "alpha(X+Y) != alpha(X)+alpha(Y)")
            .require(scaled.has_value() && *scaled == c * x.alpha, "alpha(sX) != s alpha(X)")
            .result();
      });

  add("alpha-ad-invariant", "identity", always,
      [](Sampler& s, const CheckEnv& e) {
        return Inputs{{"x", to_string(s.group(e.space).matrix)},
                      {"X", to_string(s.lie(e.space).matrix)}};
      },
      [](const CheckEnv& e, const Inputs& in) {
        auto x = grp(e, in, "x");
        auto y = lie(e, in, "X");
        auto a = lie_alpha(e.space, x.matrix * y.matrix * inv(x.matrix));
        return Conditions()
            .require(a.has_value(), "Ad(x)X left gu(V)")
            .require(a.has_value() && *a == y.alpha, "alpha(Ad(x)X) != alpha(X)")
            .result();
      });

  // ---- theta and iota ----
  add("theta-anti-automorphism", "identity", always,
      [](Sampler& s, const CheckEnv& e) {
        return Inputs{{"g", to_string(s.group(e.space).matrix)},
                      {"h", to_string(s.group(e.space).matrix)}};
      },
      [](const CheckEnv& e, const Inputs& in) {
        const auto& sp = e.space;
        auto g = grp(e, in, "g"), h = grp(e, in, "h");
        auto tg = theta_group(sp, g);
        auto defining = sp.is_general_linear()
                            ? g.matrix.transpose()
                            : sp.anti_unitary * inv(g.matrix).tau() * sp.anti_unitary_inv *
                                  g.multiplier;
        return Conditions()
            .require(tg.matrix == defining, "theta(g) differs from mu(g) h g^-1 h^-1")
            .require(theta_group(sp, g * h).matrix == (theta_group(sp, h) * tg).matrix,
                     "theta(gh) != theta(h) theta(g)")
            .require(theta_group(sp, tg).matrix == g.matrix, "theta(theta(g)) != g")
            .require(similitude_multiplier(sp, tg.matrix) == std::optional(g.multiplier),
                     "mu(theta(g)) != mu(g)")
            .result();
      });

  add("iota-automorphism", "identity", always,
      [](Sampler& s, const CheckEnv& e) {
        return Inputs{{"g", to_string(s.group(e.space).matrix)},
                      {"h", to_string(s.group(e.space).matrix)}};
      },
      [](const CheckEnv& e, const Inputs& in) {
        const auto& sp = e.space;
        auto g = grp(e, in, "g"), h = grp(e, in, "h");
        auto ig = iota_group(sp, g);
        return Conditions()
            .require(iota_group(sp, g * h).matrix == (ig * iota_group(sp, h)).matrix,
                     "iota(gh) != iota(g) iota(h)")
            .require(iota_group(sp, ig).matrix == g.matrix, "iota(iota(g)) != g")
            .require(ig.matrix == inv(theta_group(sp, g).matrix), "iota(g) != theta(g)^-1")
            .result();
      });

  add("theta-lie", "identity", always,
      [](Sampler& s, const CheckEnv& e) {
        return Inputs{{"X", to_string(s.lie(e.space).matrix)},
                      {"Y", to_string(s.lie(e.space).matrix)}};
      },
      [](const CheckEnv& e, const Inputs& in) {
        const auto& sp = e.space;
        auto x = lie(e, in, "X"), y = lie(e, in, "Y");
        auto tx = theta_lie(sp, x);
        auto ty = theta_lie(sp, y);
        auto cert = certify_lie(sp, tx.matrix);
        auto br = require_lie(sp, bracket(x.matrix, y.matrix));
        return Conditions()
            .require(cert.has_value() && cert->alpha == x.alpha, "alpha(theta X) != alpha(X)")
            .require(theta_lie(sp, tx).matrix == x.matrix, "theta(theta X) != X")
            .require(theta_lie(sp, br).matrix == bracket(ty.matrix, tx.matrix),
                     "theta[X,Y] != [theta Y, theta X]")
            .result();
      });

  add("theta-ad", "identity", always,
      [](Sampler& s, const CheckEnv& e) {
        return Inputs{{"x", to_string(s.group(e.space).matrix)},
                      {"X", to_string(s.lie(e.space).matrix)}};
      },
      [](const CheckEnv& e, const Inputs& in) {
        const auto& sp = e.space;
        auto x = grp(e, in, "x");
        auto y = lie(e, in, "X");
        auto ad = require_lie(sp, x.matrix * y.matrix * inv(x.matrix));
        QMatrix tx_inv = inv(theta_group(sp, x).matrix);
        QMatrix rhs = tx_inv * theta_lie(sp, y).matrix * inv(tx_inv);
        return Conditions()
            .require(theta_lie(sp, ad).matrix == rhs, "theta(Ad(x)X) != Ad(theta(x)^-1) theta(X)")
            .result();
      });

  // ---- hypotheses on the Cayley map and the lattice ----
  add("theta-cayley", "hypothesis", always,
      [](Sampler& s, const CheckEnv& e) {
        return Inputs{{"X", to_string(s.domain_lie(e.space).matrix)}};
      },
      [](const CheckEnv& e, const Inputs& in) {
        const auto& sp = e.space;
        auto x = lie(e, in, "X");
        Conditions c;
        c.require(in_domain(sp, x), "X is not in g_1");
        auto tx = theta_lie(sp, x);
        c.require(in_domain(sp, tx), "theta X left g_1");
        if (c.failed()) return c.result();
        return c.require(theta_group(sp, cayley(sp, x)).matrix == cayley(sp, tx).matrix,
                         "theta(c(X)) != c(theta X)")
            .result();
      });

  add("int-cayley", "hypothesis", always,
      [](Sampler& s, const CheckEnv& e) {
        return Inputs{{"x", to_string(s.group(e.space).matrix)},
                      {"X", to_string(s.domain_lie(e.space).matrix)}};
      },
      [](const CheckEnv& e, const Inputs& in) {
        const auto& sp = e.space;
        auto x = grp(e, in, "x");
        auto y = lie(e, in, "X");
        QMatrix xi = inv(x.matrix);
        auto ad = require_lie(sp, x.matrix * y.matrix * xi);
        Conditions c;
        c.require(in_domain(sp, y) && in_domain(sp, ad), "Ad(x) does not preserve g_1");
        if (c.failed()) return c.result();
        return c.require(x.matrix * cayley(sp, y).matrix * xi == cayley(sp, ad).matrix,
                         "x c(X) x^-1 != c(Ad(x)X)")
            .result();
      });

  add("domain-invariance", "hypothesis", always,
      [](Sampler& s, const CheckEnv& e) {
        auto y = s.coin() ? s.small_lie(e.space) : s.lie(e.space);
        return Inputs{{"x", to_string(s.group(e.space).matrix)}, {"X", to_string(y.matrix)}};
      },
      [](const CheckEnv& e, const Inputs& in) {
        const auto& sp = e.space;
        auto x = grp(e, in, "x");
        auto y = lie(e, in, "X");
        bool d = in_domain(sp, y);
        auto ad = require_lie(sp, x.matrix * y.matrix * inv(x.matrix));
        return Conditions()
            .require(in_domain(sp, theta_lie(sp, y)) == d, "in_domain(theta X) != in_domain(X)")
            .require(in_domain(sp, ad) == d, "in_domain(Ad(x)X) != in_domain(X)")
            .result();
      });

  add("theta-lattice", "hypothesis", always,
      [](Sampler& s, const CheckEnv& e) {
        return Inputs{{"X", to_string(s.lattice_lie(e.space, 0).matrix)}};
      },
      [](const CheckEnv& e, const Inputs& in) {
        const auto& sp = e.space;
        auto x = lie(e, in, "X");
        LatticeBasis lat = lie_lattice(sp);
        const bool inert = sp.ring.is_inert();
        return Conditions()
            .require(lat.contains(flatten(x.matrix, inert)), "X is not in curly-L")
            .require(lat.contains(flatten(theta_lie(sp, x).matrix, inert)),
                     "theta X is not in curly-L")
            .result();
      });

  add("scaled-lattice-domain", "hypothesis", always,
      [](Sampler& s, const CheckEnv& e) {
        return Inputs{{"X", to_string(s.lattice_lie(e.space, 1).matrix)}};
      },
      [](const CheckEnv& e, const Inputs& in) {
        auto x = lie(e, in, "X");
        return Conditions().require(in_domain(e.space, x), "varpi curly-L element outside g_1").result();
      });

  // ---- Cayley map ----
  add("cayley-multiplier", "cayley", always,
      [](Sampler& s, const CheckEnv& e) {
        return Inputs{{"X", to_string(s.domain_lie(e.space).matrix)}};
      },
      [](const CheckEnv& e, const Inputs& in) {
        const auto& sp = e.space;
        auto x = lie(e, in, "X");
        Conditions c;
        c.require(in_domain(sp, x), "X is not in g_1");
        if (c.failed()) return c.result();
        auto g = cayley(sp, x);
        if (sp.is_general_linear()) {
          return c.require(g.matrix == x.matrix.plus_scalar(sp.ring.one()), "c(X) != 1 + X")
              .result();
        }
        QuadRational shift = sp.ring.one() + x.alpha;
        QuadRational expected = (shift * shift).inverse();
        auto mu = similitude_multiplier(sp, g.matrix);
        c.require(mu.has_value() && *mu == expected, "mu(c(X)) != (1 + alpha)^-2");
        c.require(g.matrix * star(sp, g.matrix) == sp.scalar(expected),
                  "c(X) c(X)* != (1 + alpha)^-2");
        if (x.alpha.is_zero()) c.require(mu == std::optional(sp.ring.one()), "c(X) not in U(V)");
        return c.result();
      });

  add("cayley-roundtrip", "cayley", always,
      [](Sampler& s, const CheckEnv& e) {
        return Inputs{{"X", to_string(s.domain_lie(e.space).matrix)}};
      },
      [](const CheckEnv& e, const Inputs& in) {
        const auto& sp = e.space;
        auto x = lie(e, in, "X");
        auto g = cayley(sp, x);
        auto f = fiber(sp, g);
        bool found = false;
        Conditions c;
        for (const auto& pre : f.preimages) {
          found = found || pre.x.matrix == x.matrix;
          c.require(cayley(sp, pre.x).matrix == g.matrix, "fiber element does not map to g");
        }
        if (f.kind == FiberCase::infinite_identity) found = in_identity_fiber(sp, x);
        return c.require(found, "X missing from fiber(c(X))").result();
      });

  add("fiber-cases", "cayley", always,
      [](Sampler& s, const CheckEnv& e) {
        QMatrix g;
        switch (s.uniform(0, 2)) {
          case 0: g = cayley(e.space, s.domain_lie(e.space)).matrix; break;
          case 1: {
            // Small integral Lie elements hit the singular loci of lambda + g.
            LieElem<QuadRational> y;
            do {
              y = s.small_lie(e.space);
            } while (!in_cayley_domain(e.space, y));
            g = cayley(e.space, y).matrix;
            break;
          }
          default: g = s.group(e.space).matrix; break;
        }
        return Inputs{{"g", to_string(g)}};
      },
      [](const CheckEnv& e, const Inputs& in) {
        const auto& sp = e.space;
        auto g = grp(e, in, "g");
        auto f = fiber(sp, g);
        Conditions c;
        std::size_t regular = 0;
        for (const auto& pre : f.preimages) {
          c.require(in_cayley_domain(sp, pre.x), "preimage outside gu(V)^1");
          if (c.failed()) return c.result();
          c.require(cayley(sp, pre.x).matrix == g.matrix, "preimage does not round-trip");
          c.require(sp.is_general_linear() || pre.x.alpha == pre.lambda.inverse() - sp.ring.one(),
                    "alpha(X_lambda) != 1/lambda - 1");
          c.require(pre.in_restricted_domain == in_domain(sp, pre.x), "g_1 flag is wrong");
          ++regular;
        }
        if (sp.is_general_linear()) {
          return c.require(f.kind == FiberCase::unique_mu_one && regular == 1, "gl fiber is not {g-1}")
              .result();
        }
        const QuadRational one = sp.ring.one();
        const bool identity = g.matrix == sp.identity();
        auto root = rational_sqrt(g.multiplier.re());
        std::size_t expected = 0;
        if (root && !identity) {
          for (const QuadRational& l : {QuadRational(*root), -QuadRational(*root)}) {
            if (!(l == -one) && g.matrix.plus_scalar(l).is_invertible()) ++expected;
          }
        }
        FiberCase want = FiberCase::empty;
        if (identity) {
          want = FiberCase::infinite_identity;
        } else if (expected == 2) {
          want = FiberCase::two_preimages;
        } else if (expected == 1) {
          want = g.multiplier == one ? FiberCase::unique_mu_one : FiberCase::unique_lambda;
        }
        c.require(f.kind == want, "case " + to_string(f.kind) + " but expected " + to_string(want));
        if (!identity) c.require(regular == expected, "wrong number of preimages");
        return c.result();
      });

  // ---- lattice identities ----
  add("lattice-theta-fixed", "lattice", always,
      [](Sampler& s, const CheckEnv& e) {
        return Inputs{{"x", to_string(s.theta_fixed(e.space).matrix)}};
      },
      [](const CheckEnv& e, const Inputs& in) {
        const auto& sp = e.space;
        auto x = grp(e, in, "x");
        Conditions c;
        c.require(theta_group(sp, x).matrix == x.matrix, "x is not theta-fixed");
        if (c.failed()) return c.result();
        LatticeBasis lx = lattice_of_x(sp, x.matrix);
        return c.require(theta_lattice(sp, lx) == adjoint_lattice(sp, x.matrix, lx),
                         "theta L(x) != Ad(x) L(x)")
            .result();
      });

  add("lattice-coset-invariance", "lattice", always,
      [](Sampler& s, const CheckEnv& e) {
        return Inputs{{"k", to_string(s.stabilizer(e.space).matrix)},
                      {"d", to_string(s.group(e.space).matrix)}};
      },
      [](const CheckEnv& e, const Inputs& in) {
        const auto& sp = e.space;
        auto k = grp(e, in, "k"), d = grp(e, in, "d");
        LatticeBasis lat = lie_lattice(sp);
        Conditions c;
        c.require(adjoint_lattice(sp, k.matrix, lat) == lat, "k does not stabilise curly-L");
        if (c.failed()) return c.result();
        return c.require(lattice_of_x(sp, k.matrix * d.matrix) == lattice_of_x(sp, d.matrix),
                         "L(kd) != L(d)")
            .result();
      });

  add("normal-form-canonical", "lattice", always,
      [](Sampler& s, const CheckEnv& e) {
        // Rows are generators in F^m with m = dim(End_E V) over F.
        const std::size_t m = e.space.dim * e.space.dim * static_cast<std::size_t>(e.space.ring.degree());
        const std::size_t rows = static_cast<std::size_t>(s.uniform(1, static_cast<long>(m) + 2));
        QMatrix gens(rows, m, QuadRational());
        for (std::size_t i = 0; i < rows; ++i)
          for (std::size_t j = 0; j < m; ++j) gens(i, j) = QuadRational(s.rational());
        QMatrix mix = QMatrix::identity(rows, QuadRational(), QuadRational(1));
        for (std::size_t i = 0; i < rows; ++i)
          for (std::size_t j = 0; j < i; ++j) mix(i, j) = QuadRational(s.integer());
        return Inputs{{"gens", to_string(gens)}, {"mix", to_string(mix)}};
      },
      [](const CheckEnv& e, const Inputs& in) {
        QMatrix gens = parse_qmatrix(in.at("gens"), 0);
        QMatrix mix = parse_qmatrix(in.at("mix"), 0);
        const long p = e.space.ring.p;
        auto rows_of = [](const QMatrix& m) {
          std::vector<QVec> out;
          for (std::size_t i = 0; i < m.rows(); ++i) {
            QVec v;
            for (std::size_t j = 0; j < m.cols(); ++j) v.push_back(m(i, j).re());
            out.push_back(std::move(v));
          }
          return out;
        };
        LatticeBasis a(rows_of(gens), gens.cols(), p);
        // Unimodular recombination and reversal of the generators.
        auto mixed = rows_of(mix * gens);
        std::reverse(mixed.begin(), mixed.end());
        LatticeBasis b(mixed, gens.cols(), p);
        LatticeBasis again(a.columns(), gens.cols(), p);
        LatticeBasis scaled = scale_lattice(scale_lattice(a, 2), -2);
        return Conditions()
            .require(a == b, "unimodular change of generators changed the normal form")
            .require(again == a, "normal form is not idempotent")
            .require(scaled == a, "scaling back and forth changed the normal form")
            .require(a.contains(a.intersect(b)) && (a + b) == a, "sum/intersection inconsistent")
            .result();
      });
  return r;
}

Counterexample make_counterexample(const CheckEnv& env, const std::string& check, Inputs inputs) {
  Counterexample c;
  c.check = check;
  c.family = to_string(env.space.family);
  c.dim = env.space.dim;
  c.prime = env.space.ring.p;
  c.precision = env.precision;
  c.level = env.level;
  c.inputs = std::move(inputs);
  return c;
}

std::optional<std::string> compare_fiber(const ResidueSpace& rs, const GroupElem<QuadResidue>& g,
                                         std::vector<RMatrix> bucket, double budget) {
  auto f = fiber(rs, g, budget);
  std::vector<RMatrix> got;
  for (const auto& pre : f.preimages) got.push_back(pre.x.matrix);
  std::sort(bucket.begin(), bucket.end());
  if (got != bucket) {
    return "fiber has " + std::to_string(got.size()) + " preimages, exhaustive bucket has " +
           std::to_string(bucket.size());
  }
  const bool identity = !rs.is_general_linear() && g.matrix == rs.identity();
  if (identity != (f.kind == FiberCase::infinite_identity)) return "identity tag mismatch";
  return std::nullopt;
}

std::vector<RMatrix> all_residue_matrices_in_group(const ResidueSpace& rs, double budget) {
  const std::int64_t s = rs.ring.size();
  const std::size_t entries = rs.dim * rs.dim;
  const double total = std::pow(static_cast<double>(s), static_cast<double>(entries));
  if (total > budget) {
    throw BudgetError("group enumeration of " + std::to_string(total) + " matrices exceeds budget",
                      total);
  }
  std::vector<RMatrix> out;
  std::vector<std::int64_t> digits(entries, 0);
  while (true) {
    RMatrix m = rs.zero_matrix();
    for (std::size_t i = 0; i < entries; ++i) m(i / rs.dim, i % rs.dim) = rs.ring.element(digits[i]);
    if (certify_group(rs, m)) out.push_back(std::move(m));
    std::size_t t = entries;
    while (t > 0 && ++digits[t - 1] == s) digits[--t] = 0;
    if (t == 0) break;
  }
  return out;
}

std::map<RMatrix, std::vector<RMatrix>> cayley_buckets(const CheckEnv& env, const ResidueSpace& rs,
                                                       std::size_t* domain_size) {
  std::map<RMatrix, std::vector<RMatrix>> buckets;
  std::size_t count = 0;
  for (const auto& x : lattice_residues(rs, lie_lattice(env.space), 0, env.budget)) {
    auto cert = certify_lie(rs, x);
    if (!cert || !in_cayley_domain(rs, *cert)) continue;
    ++count;
    buckets[cayley(rs, *cert).matrix].push_back(x);
  }
  if (domain_size) *domain_size = count;
  return buckets;
}

std::optional<std::string> decomposition_failure(DecompositionContext& ctx, const RMatrix& base,
                                                 int level, std::size_t* pieces) {
  try {
    auto coset = make_coset(ctx, base, level);
    auto result = decompose(ctx, coset);
    if (pieces) *pieces = result.pieces.size();
    if (result.passed()) return std::nullopt;
    std::string why = result.failures.empty() ? "decomposition checks failed" : result.failures[0];
    return why;
  } catch (const DomainError& e) {
    return std::string(e.what());
  }
}

std::optional<std::string> class_failure(const FiniteGroupTable& table, const ClassMap& classes,
                                         const ClassInversionReport& rep, std::size_t c) {
  const auto& row = rep.rows[c];
  if (!row.pass) {
    return "iota maps the class to " + std::to_string(row.iota_class) +
           " but the inverse lies in " + std::to_string(row.inverse_class);
  }
  if (rep.conjugators_requested && !row.conjugator) return "no theta-symmetric conjugator in the table";
  (void)table;
  (void)classes;
  return std::nullopt;
}

}  // namespace

const std::vector<SampledCheck>& sampled_checks() {
  static const std::vector<SampledCheck> registry = build_registry();
  return registry;
}

const SampledCheck* find_check(const std::string& name) {
  for (const auto& c : sampled_checks()) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

std::string to_json_text(const Counterexample& c) {
  json j;
  j["check"] = c.check;
  j["family"] = c.family;
  j["dim"] = c.dim;
  j["prime"] = c.prime;
  j["precision"] = c.precision;
  j["level"] = c.level;
  j["inputs"] = json::object();
  for (const auto& [k, v] : c.inputs) j["inputs"][k] = v;
  return j.dump();
}

Counterexample counterexample_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("counterexample is not valid JSON: ") + e.what());
  }
  // Accept a bare payload or a report row that carries one.
  if (j.contains("counterexample")) j = j["counterexample"];
  Counterexample c;
  try {
    c.check = j.at("check").get<std::string>();
    c.family = j.at("family").get<std::string>();
    c.dim = j.at("dim").get<std::size_t>();
    c.prime = j.at("prime").get<long>();
    c.precision = j.value("precision", 0);
    c.level = j.value("level", 0);
    for (const auto& [k, v] : j.at("inputs").items()) c.inputs[k] = v.get<std::string>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed counterexample: ") + e.what());
  }
  return c;
}

FiniteTarget parse_finite_target(const std::string& text) {
  static const std::regex pattern(R"(^([A-Za-z]+[+-]?)(\d+)\((\d+)\)$)");
  std::smatch m;
  if (!std::regex_match(text, m, pattern)) {
    throw ConfigError("finite group must look like Sp2(3) or U2(9): " + text);
  }
  FiniteTarget t;
  t.family = m[1];
  parse_finite_family(t.family);
  t.n = std::stoul(m[2]);
  const long field = std::stol(m[3]);
  if (t.family == "U" || t.family == "GU") {
    const long q = std::lround(std::sqrt(static_cast<double>(field)));
    if (q * q != field) throw ConfigError("unitary groups are written over F_{q^2}: " + text);
    t.q = q;
  } else {
    t.q = field;
  }
  return t;
}

ExhaustiveOutcome run_fiber_buckets(const CheckEnv& env) {
  ExhaustiveOutcome out;
  const ResidueSpace rs = reduce_space(env.space, env.precision);
  std::size_t domain = 0;
  auto buckets = cayley_buckets(env, rs, &domain);
  auto group = all_residue_matrices_in_group(rs, env.budget);
  std::size_t hit = 0;
  for (const auto& g : group) {
    auto it = buckets.find(g);
    std::vector<RMatrix> bucket = it == buckets.end() ? std::vector<RMatrix>{} : it->second;
    hit += it != buckets.end();
    auto cert = require_group(rs, g);
    if (auto why = compare_fiber(rs, cert, bucket, env.budget)) {
      auto c = make_counterexample(env, "fiber-bucket", {{"g", to_string(g)}});
      out.failures.push_back(std::move(c));
      if (out.detail.empty()) out.detail = *why;
    }
  }
  out.count = group.size();
  std::ostringstream s;
  s << domain << " domain elements, " << hit << " of " << group.size() << " group elements hit";
  out.detail = out.failures.empty() ? s.str() : s.str() + "; " + out.detail;
  return out;
}

ExhaustiveOutcome run_cayley_level(const CheckEnv& env) {
  ExhaustiveOutcome out;
  auto report = check_cayley_level(env.space, env.level, env.precision, env.budget);
  out.count = report.similitude.lie_count + report.isometry.lie_count;
  std::ostringstream s;
  s << "GU " << report.similitude.image_count << "=" << report.similitude.member_count;
  if (report.isometry.applicable) {
    s << ", U " << report.isometry.image_count << "=" << report.isometry.member_count;
  }
  s << (report.similitude.injective && report.isometry.passed() ? ", injective" : ", NOT injective");
  if (!report.passed()) {
    s << "; " << (report.counterexamples.empty() ? "valuation bounds fail" : report.counterexamples[0]);
    out.failures.push_back(make_counterexample(env, "cayley-level", {}));
  }
  out.detail = s.str();
  return out;
}

ExhaustiveOutcome run_congruence_closure(const CheckEnv& env) {
  ExhaustiveOutcome out;
  const ResidueSpace rs = reduce_space(env.space, env.precision);
  DecompositionContext ctx(env.space, env.precision, env.budget);
  const auto& members = ctx.congruence_image(env.level);
  out.count = members.size();
  // Closure under products with a spread of elements plus all inverses.
  const std::size_t stride = std::max<std::size_t>(1, members.size() / 16);
  bool closed = true;
  for (std::size_t i = 0; i < members.size() && closed; ++i) {
    auto inv_m = members[i].inverse();
    closed = inv_m && std::binary_search(members.begin(), members.end(), *inv_m);
    for (std::size_t j = 0; j < members.size() && closed; j += stride) {
      closed = std::binary_search(members.begin(), members.end(), members[i] * members[j]);
    }
  }
  out.detail = std::to_string(members.size()) + " elements, " + (closed ? "closed" : "NOT closed");
  if (!closed) out.failures.push_back(make_counterexample(env, "congruence-closure", {}));
  return out;
}

ExhaustiveOutcome run_decompositions(const CheckEnv& env, Sampler& sampler, std::size_t cosets) {
  ExhaustiveOutcome out;
  DecompositionContext ctx(env.space, env.precision, env.budget);
  std::size_t min_pieces = 0, max_pieces = 0;
  for (std::size_t i = 0; i < cosets; ++i) {
    RMatrix base = sampler.residue_group(ctx.space()).matrix;
    std::size_t pieces = 0;
    if (auto why = decomposition_failure(ctx, base, env.level, &pieces)) {
      out.failures.push_back(make_counterexample(env, "decomposition", {{"base", to_string(base)}}));
      if (out.detail.empty()) out.detail = *why;
    }
    min_pieces = i == 0 ? pieces : std::min(min_pieces, pieces);
    max_pieces = std::max(max_pieces, pieces);
    ++out.count;
  }
  std::ostringstream s;
  s << cosets << " cosets of size "
    << (cosets ? std::to_string(ctx.congruence_image(env.level).size()) : std::string("0"))
    << ", pieces per coset " << min_pieces << ".." << max_pieces;
  out.detail = out.failures.empty() ? s.str() : s.str() + "; " + out.detail;
  return out;
}

ExhaustiveOutcome run_class_inversion(const std::string& group, double budget) {
  ExhaustiveOutcome out;
  FiniteTarget t = parse_finite_target(group);
  auto table = build_group(parse_finite_family(t.family), t.n, t.q, budget);
  auto classes = conjugacy_classes(table);
  auto rep = verify_class_inversion(table, classes, true);
  std::size_t passing = 0, with_conj = 0;
  for (std::size_t c = 0; c < rep.rows.size(); ++c) {
    passing += rep.rows[c].pass;
    with_conj += rep.rows[c].conjugator.has_value();
    if (auto why = class_failure(table, classes, rep, c)) {
      Counterexample ce;
      ce.check = "class-inversion";
      ce.family = t.family;
      ce.dim = t.n;
      ce.prime = t.q;
      ce.inputs = {{"group", table.name()},
                   {"representative", to_string(table.elements[rep.rows[c].representative])}};
      out.failures.push_back(std::move(ce));
      if (out.detail.empty()) out.detail = *why;
    }
  }
  std::ostringstream s;
  s << "|G|=" << table.order() << ", " << passing << "/" << rep.rows.size()
    << " classes pass, conjugators " << with_conj << "/" << rep.rows.size();
  if (!(rep.iota_automorphism && rep.iota_involutive && rep.permutations_equal &&
        rep.multiplier_homomorphism && rep.order_factorizes)) {
    s << ", structural check failed";
    Counterexample ce;
    ce.check = "class-inversion";
    ce.family = t.family;
    ce.dim = t.n;
    ce.prime = t.q;
    ce.inputs = {{"group", table.name()}};
    out.failures.push_back(std::move(ce));
  }
  out.count = rep.rows.size();
  out.detail = out.detail.empty() ? s.str() : s.str() + "; " + out.detail;
  return out;
}

ReplayResult replay(const Counterexample& c) {
  ReplayResult r;
  if (c.check == "class-inversion") {
    const std::string group = c.inputs.count("group") ? c.inputs.at("group")
                                                      : c.family + std::to_string(c.dim) + "(" +
                                                            std::to_string(c.prime) + ")";
    FiniteTarget t = parse_finite_target(group);
    auto table = build_group(parse_finite_family(t.family), t.n, t.q);
    auto classes = conjugacy_classes(table);
    auto rep = verify_class_inversion(table, classes, true);
    if (!c.inputs.count("representative")) {
      r.reproduced = !rep.all_pass();
      r.detail = r.reproduced ? "structural check fails" : "all checks pass";
      return r;
    }
    const std::size_t idx = table.index_of(parse_rmatrix(c.inputs.at("representative"), table.space.ring));
    const std::size_t cls = classes.class_of[idx];
    auto why = class_failure(table, classes, rep, cls);
    r.reproduced = why.has_value();
    r.detail = why.value_or("class passes");
    return r;
  }

  CheckEnv env{standard_space(parse_family(c.family), c.dim, c.prime), c.precision, c.level, 1e6};
  if (const SampledCheck* check = find_check(c.check)) {
    auto why = check->verify(env, c.inputs);
    r.reproduced = why.has_value();
    r.detail = why.value_or("check holds");
    return r;
  }
  if (c.check == "fiber-bucket") {
    const ResidueSpace rs = reduce_space(env.space, env.precision);
    auto g = require_group(rs, parse_rmatrix(c.inputs.at("g"), rs.ring));
    auto buckets = cayley_buckets(env, rs, nullptr);
    auto it = buckets.find(g.matrix);
    auto why = compare_fiber(rs, g, it == buckets.end() ? std::vector<RMatrix>{} : it->second,
                             env.budget);
    r.reproduced = why.has_value();
    r.detail = why.value_or("fiber matches the exhaustive bucket");
    return r;
  }
  if (c.check == "decomposition") {
    DecompositionContext ctx(env.space, env.precision, env.budget);
    auto why = decomposition_failure(ctx, parse_rmatrix(c.inputs.at("base"), ctx.space().ring),
                                     env.level, nullptr);
    r.reproduced = why.has_value();
    r.detail = why.value_or("decomposition verified");
    return r;
  }
  ExhaustiveOutcome out;
  if (c.check == "cayley-level") {
    out = run_cayley_level(env);
  } else if (c.check == "congruence-closure") {
    out = run_congruence_closure(env);
  } else {
    throw ConfigError("unknown check in counterexample: " + c.check);
  }
  r.reproduced = !out.failures.empty();
  r.detail = out.detail;
  return r;
}

}  // namespace dualinv
