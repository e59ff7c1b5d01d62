// Acceptance run: one PASS/FAIL line per criterion, exit status 1 on any FAIL.
#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "dualinv/cayley.hpp"
#include "dualinv/decomposition.hpp"
#include "dualinv/lattice.hpp"
#include "dualinv/replay.hpp"
#include "dualinv/suite.hpp"

using namespace dualinv;

namespace {

const std::vector<Family> kFamilies = {Family::orthogonal, Family::symplectic, Family::hermitian,
                                       Family::skew_hermitian, Family::general_linear};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Runs a registered sampled check; returns the first failure text, if any.
std::optional<std::string> sample_check(const std::string& name, Family family, std::size_t n,
                                        std::size_t samples, std::uint64_t seed,
                                        double* elapsed = nullptr) {
  const SampledCheck* check = find_check(name);
  if (!check) return "missing check " + name;
  CheckEnv env{standard_space(family, n, 3), 2, 1, 1e6};
  auto start = Clock::now();
  Sampler sampler(seed);
  std::optional<std::string> failure;
  for (std::size_t i = 0; i < samples && !failure; ++i) {
    Inputs in = check->sample(sampler, env);
    try {
      failure = check->verify(env, in);
    } catch (const std::exception& e) {
      failure = e.what();
    }
    if (failure) *failure = name + " on " + to_string(family) + ": " + *failure;
  }
  if (elapsed) *elapsed = seconds_since(start);
  return failure;
}

int failures = 0;

void report(int id, bool pass, const std::string& summary) {
  std::printf("[%s] criterion %d: %s\n", pass ? "PASS" : "FAIL", id, summary.c_str());
  std::fflush(stdout);
  failures += !pass;
}

void guarded(int id, const std::function<void()>& body) {
  try {
    body();
  } catch (const std::exception& e) {
    report(id, false, std::string("exception: ") + e.what());
  }
}

void criterion1() {
  std::ostringstream s;
  bool pass = true;
  s << "mu(c(X)) = (1+alpha)^-2 exactly, 1000 samples per family;";
  for (Family f : kFamilies) {
    double t = 0;
    auto why = sample_check("cayley-multiplier", f, 2, 1000, 101, &t);
    pass = pass && !why && t < 5.0;
    s << " " << to_string(f) << " " << (why ? *why : "ok") << " (" << t << " s)";
  }
  report(1, pass, s.str() + "; tolerance exact, limit 5 s per family");
}

void criterion2() {
  auto start = Clock::now();
  std::optional<std::string> why;
  for (Family f : kFamilies) {
    if (!why) why = sample_check("fiber-cases", f, 2, 500, 202);
    if (!why) why = sample_check("cayley-roundtrip", f, 2, 500, 203);
  }
  CheckEnv env{standard_space(Family::symplectic, 2, 3), 2, 1, 1e6};
  auto buckets = run_fiber_buckets(env);
  const double t = seconds_since(start);
  const bool pass = !why && buckets.failures.empty() && t < 30.0;
  std::ostringstream s;
  s << "fiber cases and exact round trips on 500 sampled g per family ("
    << (why ? *why : "ok") << "); exhaustive bucketing mod 9, symplectic n=2: " << buckets.detail
    << ", " << buckets.failures.size() << " mismatches; " << t << " s (limit 30 s)";
  report(2, pass, s.str());
}

void criterion3() {
  auto start = Clock::now();
  auto sp = check_cayley_level(standard_space(Family::symplectic, 2, 3), 1, 2);
  auto he = check_cayley_level(standard_space(Family::hermitian, 1, 3), 1, 2);
  const double t = seconds_since(start);
  const bool pass = sp.passed() && he.passed() && sp.similitude.image_count == 81 &&
                    sp.similitude.member_count == 81 && he.isometry.image_count == 3 &&
                    he.isometry.member_count == 3 && t < 10.0;
  std::ostringstream s;
  s << "level bijection mod 9: symplectic n=2 c(3 L-dot) " << sp.similitude.image_count << " = GU "
    << sp.similitude.member_count << ", c(3 L-ddot) " << sp.isometry.image_count << " = U "
    << sp.isometry.member_count << "; hermitian n=1 c(3 L-ddot) " << he.isometry.image_count
    << " = U " << he.isometry.member_count << ", c(3 L-dot) " << he.similitude.image_count
    << " = GU " << he.similitude.member_count << "; injective "
    << (sp.similitude.injective && he.similitude.injective ? "yes" : "no")
    << "; alpha integral, mu = 1 mod p^k "
    << (sp.alpha_integral && sp.multiplier_congruent && he.alpha_integral &&
                he.multiplier_congruent
            ? "on every element"
            : "VIOLATED")
    << "; exact; " << t << " s (limit 10 s)";
  report(3, pass, s.str());
}

void criterion4() {
  auto start = Clock::now();
  std::optional<std::string> why;
  const std::vector<std::string> checks = {"theta-cayley", "int-cayley", "domain-invariance",
                                           "theta-lattice", "scaled-lattice-domain"};
  for (Family f : kFamilies) {
    for (const auto& c : checks) {
      if (!why) why = sample_check(c, f, 2, 1000, 404);
    }
    ExactSpace s = standard_space(f, 2, 3);
    if (!why && !(theta_lattice(s, lie_lattice(s)) == lie_lattice(s))) {
      why = "theta L != L for " + to_string(f);
    }
  }
  const double t = seconds_since(start);
  std::ostringstream s;
  s << "theta c = c theta, Int(x) c = c Ad(x), domain invariance, theta L = L, pL in g_1; 1000 "
       "samples each per family, exact ("
    << (why ? *why : "ok") << "); " << t << " s (limit 30 s)";
  report(4, !why && t < 30.0, s.str());
}

void criterion5() {
  auto start = Clock::now();
  std::optional<std::string> why;
  for (Family f : kFamilies) {
    if (!why) why = sample_check("lattice-theta-fixed", f, 2, 100, 505);
    if (!why) why = sample_check("lattice-coset-invariance", f, 2, 100, 506);
  }
  const double t = seconds_since(start);
  std::ostringstream s;
  s << "theta L(x) = Ad(x) L(x) for 100 theta-fixed x and L(kd) = L(d) for 100 stabilising k per "
       "family, normal-form equality ("
    << (why ? *why : "ok") << "); " << t << " s (limit 30 s)";
  report(5, !why && t < 30.0, s.str());
}

void criterion6() {
  DecompositionContext ctx(standard_space(Family::symplectic, 2, 3), 3);
  Sampler sampler(606);
  double worst = 0;
  std::size_t passed = 0, pieces = 0, members = 0;
  std::string first_failure;
  const std::size_t cosets = 20;
  for (std::size_t i = 0; i < cosets; ++i) {
    auto start = Clock::now();
    auto base = sampler.residue_group(ctx.space()).matrix;
    auto coset = make_coset(ctx, base, 1);
    auto r = decompose(ctx, coset);
    worst = std::max(worst, seconds_since(start));
    const bool ok = r.passed() && r.partition && r.witnesses_verified && r.nested_levels &&
                    r.disjoint_or_nested;
    passed += ok;
    pieces += r.pieces.size();
    members = coset.members.size();
    if (!ok && first_failure.empty()) {
      first_failure = to_string(base) + ": " + (r.failures.empty() ? "checks failed" : r.failures[0]);
    }
  }
  std::ostringstream s;
  s << passed << "/" << cosets << " cosets b c(3L) mod 27 in GSp_2 (" << members
    << " elements each, " << pieces << " pieces in total) verified: disjoint, union C, witnesses "
       "checked exhaustively, nesting and disjoint-or-nested hold"
    << (first_failure.empty() ? "" : "; first failure " + first_failure) << "; worst coset "
    << worst << " s (limit 60 s)";
  report(6, passed == cosets && worst < 60.0, s.str());
}

void criterion7() {
  auto start = Clock::now();
  const std::vector<std::string> targets = {"Sp2(3)", "GSp2(3)", "Sp2(5)", "U2(9)",
                                            "GU2(9)", "GL2(3)", "GL3(3)", "O+2(3)", "O-2(3)"};
  bool pass = true;
  std::ostringstream s;
  s << "class inversion with theta-symmetric conjugators:";
  for (const auto& t : targets) {
    auto out = run_class_inversion(t, 1e6);
    pass = pass && out.failures.empty();
    s << " " << t << " [" << out.detail << "]";
    for (const auto& f : out.failures) s << " FINDING " << to_json_text(f);
  }
  const double t = seconds_since(start);
  s << "; " << t << " s (limit 120 s)";
  report(7, pass && t < 120.0, s.str());
}

void criterion8() {
  SuiteConfig c;
  c.suites = {"identity", "cayley", "lattice", "decomposition", "finite-duality"};
  c.samples = 200;
  c.seed = 808;
  c.cosets = 3;
  c.finite_targets = {"Sp2(3)", "U2(9)"};
  const std::string a = emit_report(run_suite(c), "json");
  const std::string b = emit_report(run_suite(c), "json");
  const std::string ma = emit_report(run_suite(c), "markdown");
  const std::string mb = emit_report(run_suite(c), "markdown");
  std::ostringstream s;
  s << "two runs with identical config and seed: json " << (a == b ? "byte-identical" : "DIFFER")
    << " (" << a.size() << " bytes), markdown " << (ma == mb ? "byte-identical" : "DIFFER") << " ("
    << ma.size() << " bytes)";
  report(8, a == b && ma == mb, s.str());
}

}  // namespace

int main() {
  guarded(1, criterion1);
  guarded(2, criterion2);
  guarded(3, criterion3);
  guarded(4, criterion4);
  guarded(5, criterion5);
  guarded(6, criterion6);
  guarded(7, criterion7);
  guarded(8, criterion8);
  std::printf("%d of 8 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
