#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dualinv/hermitian.hpp"
#include "dualinv/sampling.hpp"

namespace dualinv {

using Inputs = std::map<std::string, std::string>;

// Everything needed to re-run one failed check.
struct Counterexample {
  std::string check;
  std::string family;
  std::size_t dim = 0;
  long prime = 3;
  int precision = 0;  // 0 for checks over F
  int level = 0;
  Inputs inputs;
};

std::string to_json_text(const Counterexample& c);
Counterexample counterexample_from_json(const std::string& text);

// Parameters that identify the ambient of a check.
struct CheckEnv {
  ExactSpace space;
  int precision = 2;
  int level = 1;
  double budget = 1e6;
};

// Returns a failure description, or nullopt when the check holds.
using Verifier = std::function<std::optional<std::string>(const CheckEnv&, const Inputs&)>;
using InputSampler = std::function<Inputs(Sampler&, const CheckEnv&)>;

// A named identity over F: how to draw inputs and how to verify them.
struct SampledCheck {
  std::string name;
  std::string suite;
  std::function<bool(const ExactSpace&)> applies;
  InputSampler sample;
  Verifier verify;
};

// Registry of sampled checks, in report order.
const std::vector<SampledCheck>& sampled_checks();
const SampledCheck* find_check(const std::string& name);

struct ReplayResult {
  bool reproduced = false;  // the failure occurs again
  std::string detail;
};

// Re-runs a counterexample.  Sampled checks and the exhaustive checks of
// the suite runner (fiber buckets, level maps, decompositions, class
// inversion) are all replayable.
ReplayResult replay(const Counterexample& c);

}  // namespace dualinv

namespace dualinv {

// Outcome of one exhaustive (non-sampled) check.
struct ExhaustiveOutcome {
  std::size_t count = 0;  // items examined
  std::string detail;
  std::vector<Counterexample> failures;
};

// Buckets c over every X in gu(V)^1 n L-dot mod p^N and compares each bucket
// with fiber(g), for every g in GU mod p^N.
ExhaustiveOutcome run_fiber_buckets(const CheckEnv& env);
// check_cayley_level at the environment's (k, N).
ExhaustiveOutcome run_cayley_level(const CheckEnv& env);
// c(varpi^k curly-L) mod p^N is closed under products and inverses.
ExhaustiveOutcome run_congruence_closure(const CheckEnv& env);
// decompose() on `cosets` random cosets b c(varpi^k curly-L) mod p^N.
ExhaustiveOutcome run_decompositions(const CheckEnv& env, Sampler& sampler, std::size_t cosets);
// verify_class_inversion on one finite group; failing classes are findings.
ExhaustiveOutcome run_class_inversion(const std::string& group, double budget);

// "Sp2(3)", "U2(9)", "GL3(3)" -> (family, n, q).
struct FiniteTarget {
  std::string family;
  std::size_t n = 2;
  long q = 3;
};
FiniteTarget parse_finite_target(const std::string& text);

}  // namespace dualinv
