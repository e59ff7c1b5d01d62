#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dualinv/hermitian.hpp"
#include "dualinv/replay.hpp"

namespace dualinv {

inline constexpr int kSchemaVersion = 1;

// Suites run in this order when selected.
inline const std::vector<std::string> kSuiteNames = {
    "identity", "hypothesis", "cayley", "lattice", "decomposition", "finite-duality"};

enum class FindingPolicy { warn, fail };

struct SuiteConfig {
  std::string family = "symplectic";
  std::size_t dim = 2;
  long prime = 3;
  std::string ext = "auto";  // auto, split or inert; must agree with the family
  int precision = 2;
  int level = 1;
  std::size_t samples = 1000;
  std::uint64_t seed = 1;
  std::vector<std::string> suites;  // empty means nothing to run
  std::string format = "json";
  FindingPolicy findings = FindingPolicy::warn;
  bool timing = false;  // timings break byte-identical reports
  double budget = 1e6;
  std::size_t cosets = 20;
  std::vector<std::string> finite_targets = {"Sp2(3)", "Sp2(5)", "GSp2(3)", "U2(9)", "GU2(9)",
                                             "O+2(3)", "O-2(3)", "GL2(3)", "GL3(3)"};
};

// Throws ConfigError or BudgetError; nothing has run yet when it does.
void validate_config(const SuiteConfig& config);
// Expands "all" and checks each name.
std::vector<std::string> expand_suites(const std::vector<std::string>& names);

enum class Status { pass, fail, finding };
std::string to_string(Status s);

struct CheckRow {
  std::string suite;
  std::string name;
  Status status = Status::pass;
  std::size_t count = 0;  // samples or enumerated items
  std::string detail;
  std::optional<Counterexample> counterexample;
  std::optional<double> millis;
};

struct Report {
  int schema_version = kSchemaVersion;
  SuiteConfig config;
  std::vector<CheckRow> rows;
  std::vector<std::string> notes;

  std::size_t count(Status s) const;
  bool green() const { return count(Status::fail) == 0 && count(Status::finding) == 0; }
  int exit_code() const;
};

Report run_suite(const SuiteConfig& config);
std::string emit_report(const Report& report, const std::string& format);

// Order-stable key/value rendering of a config, shared by reports and files.
std::vector<std::pair<std::string, std::string>> config_entries(const SuiteConfig& config);
// Applies one key=value assignment; throws ConfigError on unknown keys.
void apply_config_entry(SuiteConfig& config, const std::string& key, const std::string& value);
// Parses key=value lines; '#' starts a comment.
void apply_config_text(SuiteConfig& config, const std::string& text);

}  // namespace dualinv
